"""Simulated datasets, neighbour-joining trees and Robinson-Foulds accuracy.

The simulator is deliberately small: a random binary tree from uniform
pairwise joins, a uniform random DNA root, and per-branch point
substitutions plus single-base insertions and deletions.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO

import numpy as np

from .io_formats import DistanceMatrix, Sequence
from .maw_core import DNA
from .matrix_driver import pairwise_matrix

__all__ = [
    "SimParams",
    "Node",
    "Tree",
    "simulate_dataset",
    "rotate_randomly",
    "neighbor_joining",
    "splits",
    "rf_distance",
    "accuracy",
    "parse_newick",
    "ExperimentResult",
    "run_experiment",
    "write_report",
]


@dataclass(frozen=True)
class SimParams:
    taxa: int
    root_length: int
    substitution_rate: float
    deletion_rate: float
    insertion_rate: float
    seed: int = 0

    def __post_init__(self):
        if self.taxa < 3:
            raise ValueError("need at least 3 taxa")
        if self.root_length < 1:
            raise ValueError("root length must be >= 1")
        for name in ("substitution_rate", "deletion_rate", "insertion_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    def label(self) -> str:
        return (
            f"<{self.taxa},{self.root_length},{self.substitution_rate:g},"
            f"{self.deletion_rate:g},{self.insertion_rate:g}>"
        )


@dataclass
class Node:
    name: str | None = None
    children: list["Node"] = field(default_factory=list)
    length: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["Node"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaf_names(self) -> list[str]:
        return [n.name for n in self.walk() if n.is_leaf]


@dataclass
class Tree:
    """Unrooted tree stored from an arbitrary internal root node."""

    root: Node

    def leaves(self) -> list[str]:
        return self.root.leaf_names()

    def to_newick(self) -> str:
        def fmt(node: Node, top: bool) -> str:
            if node.is_leaf:
                text = node.name
            else:
                text = "(" + ",".join(fmt(c, False) for c in node.children) + ")"
            return text if top else f"{text}:{node.length:.6f}"

        return fmt(self.root, True) + ";"


def parse_newick(text: str) -> Tree:
    """Parse a plain Newick string (unquoted names, optional branch lengths)."""
    text = text.strip()
    pos = 0

    def fail(msg):
        raise ValueError(f"newick: {msg} at offset {pos}")

    def read_label():
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos] not in "(),:;":
            pos += 1
        return text[start:pos].strip()

    def read_node() -> Node:
        nonlocal pos
        node = Node()
        if pos < len(text) and text[pos] == "(":
            pos += 1
            while True:
                node.children.append(read_node())
                if pos >= len(text):
                    fail("unterminated group")
                if text[pos] == ",":
                    pos += 1
                elif text[pos] == ")":
                    pos += 1
                    break
                else:
                    fail(f"unexpected {text[pos]!r}")
        label = read_label()
        node.name = label or None
        if pos < len(text) and text[pos] == ":":
            pos += 1
            raw = read_label()
            try:
                node.length = float(raw)
            except ValueError:
                fail(f"bad branch length {raw!r}")
        if node.is_leaf and not node.name:
            fail("unnamed leaf")
        return node

    root = read_node()
    if pos >= len(text) or text[pos] != ";":
        fail("missing ';'")
    return Tree(root)


# --------------------------------------------------------------------------
# Simulation


def _mutate(seq: np.ndarray, params: SimParams, rng: np.random.Generator) -> tuple[np.ndarray, float]:
    n = seq.shape[0]
    gamma = params.substitution_rate
    sub = rng.random(n) < gamma
    shift = rng.integers(1, 4, n)
    seq = np.where(sub, (seq + shift) % 4, seq)
    deleted = rng.random(n) < gamma * params.deletion_rate
    inserted = rng.random(n) < gamma * params.insertion_rate
    counts = (~deleted).astype(np.int64) + inserted
    out = seq[np.repeat(np.arange(n), counts)]
    slots = np.cumsum(counts) - 1
    out[slots[inserted]] = rng.integers(0, 4, int(inserted.sum()))
    if out.size == 0:
        out = seq[:1].copy()
    events = int(sub.sum() + deleted.sum() + inserted.sum())
    return out, events / n


def _deroot(root: Node) -> Node:
    if len(root.children) != 2:
        return root
    a, b = root.children
    if a.is_leaf:
        a, b = b, a
    if a.is_leaf:
        return root
    b.length += a.length
    return Node(children=a.children + [b])


def simulate_dataset(params: SimParams) -> tuple[list[Sequence], Tree]:
    """Evolve a random DNA root down a random binary tree; return leaves and tree."""
    rng = np.random.default_rng(params.seed)
    width = len(str(params.taxa))
    lineages = [Node(name=f"t{i + 1:0{width}d}") for i in range(params.taxa)]
    while len(lineages) > 1:
        i, j = sorted(rng.choice(len(lineages), size=2, replace=False))
        b = lineages.pop(j)
        a = lineages.pop(i)
        lineages.append(Node(children=[a, b]))
    root = lineages[0]

    leaves: dict[str, np.ndarray] = {}
    stack = [(root, rng.integers(0, 4, params.root_length))]
    while stack:
        node, seq = stack.pop()
        if node.is_leaf:
            leaves[node.name] = seq
            continue
        for child in node.children:
            child_seq, child.length = _mutate(seq, params, rng)
            stack.append((child, child_seq))

    seqs = []
    for i in range(params.taxa):
        name = f"t{i + 1:0{width}d}"
        seqs.append(Sequence(name, DNA.decode(leaves[name]), DNA))
    return seqs, Tree(_deroot(root))


def rotate_randomly(seqs: Iterable[Sequence], seed: int) -> list[Sequence]:
    rng = np.random.default_rng(seed)
    return [s.rotate(int(rng.integers(0, len(s)))) for s in seqs]


# --------------------------------------------------------------------------
# Tree inference and comparison


def neighbor_joining(matrix: DistanceMatrix) -> Tree:
    """Saitou-Nei neighbour joining; ties go to the smallest (i, j)."""
    k = len(matrix)
    if k < 3:
        raise ValueError("neighbor joining needs at least 3 taxa")
    d = matrix.values.copy()
    nodes = [Node(name=name) for name in matrix.ids]
    while len(nodes) > 3:
        r = len(nodes)
        totals = d.sum(axis=1)
        q = (r - 2) * d - totals[:, None] - totals[None, :]
        q[np.tril_indices(r)] = np.inf
        i, j = np.unravel_index(np.argmin(q), q.shape)
        dij = d[i, j]
        li = dij / 2 + (totals[i] - totals[j]) / (2 * (r - 2))
        lj = dij - li
        nodes[i].length = max(li, 0.0)
        nodes[j].length = max(lj, 0.0)
        joined = Node(children=[nodes[i], nodes[j]])
        du = (d[i] + d[j] - dij) / 2
        keep = [t for t in range(r) if t not in (i, j)]
        d = np.block([
            [d[np.ix_(keep, keep)], du[keep][:, None]],
            [du[keep][None, :], np.zeros((1, 1))],
        ])
        nodes = [nodes[t] for t in keep] + [joined]
    a, b, c = nodes
    nodes[0].length = max((d[0, 1] + d[0, 2] - d[1, 2]) / 2, 0.0)
    nodes[1].length = max((d[0, 1] + d[1, 2] - d[0, 2]) / 2, 0.0)
    nodes[2].length = max((d[0, 2] + d[1, 2] - d[0, 1]) / 2, 0.0)
    return Tree(Node(children=[a, b, c]))


def splits(tree: Tree) -> set[frozenset[str]]:
    """Non-trivial bipartitions, each keyed by the side without the smallest leaf."""
    leaves = tree.leaves()
    everything = frozenset(leaves)
    anchor = min(leaves)
    out = set()

    def below(node: Node) -> frozenset[str]:
        if node.is_leaf:
            return frozenset([node.name])
        side = frozenset().union(*(below(c) for c in node.children))
        if node is not tree.root and 1 < len(side) < len(everything) - 1:
            out.add(everything - side if anchor in side else side)
        return side

    below(tree.root)
    return out


def _check_leaves(t1: Tree, t2: Tree) -> int:
    l1, l2 = t1.leaves(), t2.leaves()
    if len(set(l1)) != len(l1) or len(set(l2)) != len(l2):
        raise ValueError("duplicate leaf names")
    if set(l1) != set(l2):
        raise ValueError("trees have different leaf sets")
    return len(l1)


def rf_distance(t1: Tree, t2: Tree) -> int:
    _check_leaves(t1, t2)
    return len(splits(t1) ^ splits(t2))


def accuracy(t_inferred: Tree, t_true: Tree) -> float:
    """1 - RF / 2(k - 3) for binary trees on k leaves."""
    k = _check_leaves(t_inferred, t_true)
    if k <= 3:
        raise ValueError("accuracy undefined for 3 or fewer leaves")
    return 1.0 - rf_distance(t_inferred, t_true) / (2 * (k - 3))


# --------------------------------------------------------------------------
# The rotation experiment


@dataclass
class ExperimentResult:
    params: SimParams
    rotation_seed: int
    true_tree: Tree
    basic_circular: DistanceMatrix
    rotated_circular: DistanceMatrix
    rotated_linear: DistanceMatrix
    reference: Tree
    circular_tree: Tree
    linear_tree: Tree

    def records(self) -> list[tuple[str, int, float]]:
        """(mode, rf, accuracy) against the tree from the unrotated data."""
        out = []
        for mode, tree in (("circular", self.circular_tree), ("linear", self.linear_tree)):
            out.append((mode, rf_distance(tree, self.reference), accuracy(tree, self.reference)))
        return out


def run_experiment(params: SimParams, rotation_seed: int | None = None, workers: int = 1) -> ExperimentResult:
    """Simulate, rotate each sequence, and compare NJ trees from both LW modes.

    The reference tree comes from the circular-mode matrix of the unrotated
    dataset; trees from the rotated data in both modes are scored against it.
    """
    if rotation_seed is None:
        rotation_seed = params.seed + 1
    seqs, true_tree = simulate_dataset(params)
    rotated = rotate_randomly(seqs, rotation_seed)
    basic = pairwise_matrix(seqs, "circular", workers=workers)
    rot_circ = pairwise_matrix(rotated, "circular", workers=workers)
    rot_lin = pairwise_matrix(rotated, "linear", workers=workers)
    return ExperimentResult(
        params=params,
        rotation_seed=rotation_seed,
        true_tree=true_tree,
        basic_circular=basic,
        rotated_circular=rot_circ,
        rotated_linear=rot_lin,
        reference=neighbor_joining(basic),
        circular_tree=neighbor_joining(rot_circ),
        linear_tree=neighbor_joining(rot_lin),
    )


def write_report(results: Iterable[ExperimentResult], stream: TextIO | None = None) -> str:
    """Tab-separated lines: seed, params, mode, rf, accuracy."""
    buf = io.StringIO()
    for res in results:
        for mode, rf, acc in res.records():
            buf.write(f"{res.params.seed}\t{res.params.label()}\t{mode}\t{rf}\t{acc:.6f}\n")
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
