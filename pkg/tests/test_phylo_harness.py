import itertools
import random
from collections import Counter

import numpy as np
import pytest

from mawdist.io_formats import DistanceMatrix, Sequence
from mawdist.maw_core import DNA
from mawdist.phylo_harness import (
    Node,
    SimParams,
    Tree,
    accuracy,
    neighbor_joining,
    parse_newick,
    rf_distance,
    rotate_randomly,
    run_experiment,
    simulate_dataset,
    splits,
    write_report,
)


def random_tree(names, rng):
    """Random binary tree with positive branch lengths, as an adjacency map."""
    adj = {}

    def link(a, b, w):
        adj.setdefault(a, {})[b] = w
        adj.setdefault(b, {})[a] = w

    link(names[0], "n0", rng.uniform(0.1, 1))
    link(names[1], "n0", rng.uniform(0.1, 1))
    link(names[2], "n0", rng.uniform(0.1, 1))
    for k, name in enumerate(names[3:], 1):
        a = rng.choice(sorted(adj))
        b = rng.choice(sorted(adj[a]))
        w = adj[a].pop(b)
        adj[b].pop(a)
        mid = f"n{k}"
        link(a, mid, w / 2)
        link(b, mid, w / 2)
        link(name, mid, rng.uniform(0.1, 1))
    return adj


def path_lengths(adj, source):
    dist = {source: 0.0}
    stack = [source]
    while stack:
        u = stack.pop()
        for v, w in adj[u].items():
            if v not in dist:
                dist[v] = dist[u] + w
                stack.append(v)
    return dist


def adj_to_tree(adj, names):
    def build(node, parent):
        return Node(
            name=node if node in names else None,
            children=[build(c, node) for c in sorted(adj[node]) if c != parent],
        )

    return Tree(build("n0", None))


def additive_matrix(adj, names):
    values = np.array([[path_lengths(adj, a)[b] for b in names] for a in names])
    values = (values + values.T) / 2
    np.fill_diagonal(values, 0.0)
    return DistanceMatrix(tuple(names), values)


QUARTET_AB = "((A:1,B:2):3,(C:1,D:4):0);"


def test_newick_round_trip():
    tree = parse_newick("((A:1,B:2):0.5,C:1,D:0.25);")
    text = tree.to_newick()
    assert text == "((A:1.000000,B:2.000000):0.500000,C:1.000000,D:0.250000);"
    assert parse_newick(text).to_newick() == text


def test_newick_errors():
    with pytest.raises(ValueError):
        parse_newick("((A,B),C")
    with pytest.raises(ValueError):
        parse_newick("(A,,B);")


def test_nj_recovers_additive_quartet():
    # path lengths of ((A:1,B:2):3,(C:1,D:4))
    ids = ("A", "B", "C", "D")
    d = np.array([[0, 3, 5, 8], [3, 0, 6, 9], [5, 6, 0, 5], [8, 9, 5, 0]], float)
    tree = neighbor_joining(DistanceMatrix(ids, d))
    assert splits(tree) == {frozenset({"C", "D"})}
    assert rf_distance(tree, parse_newick(QUARTET_AB)) == 0


def test_nj_three_taxa_star():
    d = np.array([[0, 3, 4], [3, 0, 5], [4, 5, 0]], float)
    tree = neighbor_joining(DistanceMatrix(("a", "b", "c"), d))
    assert len(tree.root.children) == 3
    assert sorted(c.length for c in tree.root.children) == [1.0, 2.0, 3.0]
    assert splits(tree) == set()


def test_nj_too_few():
    with pytest.raises(ValueError):
        neighbor_joining(DistanceMatrix(("a", "b"), np.array([[0, 1.0], [1.0, 0]])))


@pytest.mark.parametrize("seed", range(20))
def test_nj_consistency_on_additive_matrices(seed):
    rng = random.Random(seed)
    k = rng.randint(4, 16)
    names = [f"L{i}" for i in range(k)]
    adj = random_tree(names, rng)
    truth = adj_to_tree(adj, names)
    inferred = neighbor_joining(additive_matrix(adj, names))
    assert rf_distance(inferred, truth) == 0
    perm = names[:]
    rng.shuffle(perm)
    shuffled = neighbor_joining(additive_matrix(adj, perm))
    assert splits(shuffled) == splits(inferred)


def test_rf_quartets():
    t1 = parse_newick("((A,B),(C,D));")
    t2 = parse_newick("((A,C),(B,D));")
    assert rf_distance(t1, t1) == 0
    assert rf_distance(t1, t2) == rf_distance(t2, t1) == 2
    assert accuracy(t1, t2) == 0.0
    assert accuracy(t1, t1) == 1.0


def test_rf_maximum():
    rng = random.Random(1)
    names = [f"L{i}" for i in range(10)]
    a = parse_newick("(" + ",".join(f"({names[i]},{names[i + 1]})" for i in range(0, 10, 2)) + ");")
    caterpillar = names[0]
    for nm in names[1:]:
        caterpillar = f"({caterpillar},{nm})"
    assert rf_distance(a, a) == 0
    assert rf_distance(a, parse_newick(caterpillar + ";")) <= 2 * (10 - 3)
    adj1 = random_tree(names, rng)
    adj2 = random_tree(names, rng)
    assert len(splits(adj_to_tree(adj1, names))) == 10 - 3
    assert rf_distance(adj_to_tree(adj1, names), adj_to_tree(adj2, names)) <= 2 * (10 - 3)


def test_rf_leaf_mismatch():
    with pytest.raises(ValueError):
        rf_distance(parse_newick("((A,B),(C,D));"), parse_newick("((A,B),(C,E));"))


def test_accuracy_requires_internal_edges():
    with pytest.raises(ValueError):
        accuracy(parse_newick("(A,B,C);"), parse_newick("(A,B,C);"))


def test_simulation_without_mutation():
    seqs, tree = simulate_dataset(SimParams(5, 200, 0.0, 0.06, 0.04, seed=1))
    assert len({s.symbols for s in seqs}) == 1
    assert len(seqs[0]) == 200
    assert sorted(tree.leaves()) == [s.id for s in seqs]


def test_simulation_is_seeded():
    p = SimParams(12, 2500, 0.05, 0.06, 0.04, seed=9)
    a, ta = simulate_dataset(p)
    b, tb = simulate_dataset(p)
    assert [s.symbols for s in a] == [s.symbols for s in b]
    assert ta.to_newick() == tb.to_newick()
    assert len(a) == 12
    assert all(set(s.symbols) <= set("ACGT") for s in a)


def test_simulated_tree_is_binary_unrooted():
    _, tree = simulate_dataset(SimParams(9, 50, 0.1, 0.06, 0.04, seed=4))
    assert len(tree.root.children) == 3
    internal = [n for n in tree.root.walk() if not n.is_leaf and n is not tree.root]
    assert all(len(n.children) == 2 for n in internal)
    assert len(splits(tree)) == 9 - 3


def test_sim_params_validation():
    with pytest.raises(ValueError):
        SimParams(2, 100, 0.1, 0.1, 0.1)
    with pytest.raises(ValueError):
        SimParams(5, 100, 1.5, 0.1, 0.1)


def test_rotation():
    s = Sequence("x", "ACCGT", DNA)
    assert s.rotate(0).symbols == "ACCGT"
    assert s.rotate(2).symbols == "CGTAC"
    data = [Sequence(f"s{i}", "ACGTTGCA" * (i + 1), DNA) for i in range(5)]
    rotated = rotate_randomly(data, seed=3)
    assert rotated == rotate_randomly(data, seed=3)
    for a, b in zip(data, rotated):
        assert Counter(a.symbols) == Counter(b.symbols)
        assert b.symbols in a.symbols + a.symbols


def test_experiment_report():
    res = run_experiment(SimParams(6, 200, 0.05, 0.06, 0.04, seed=2))
    assert res.rotated_circular.values.tobytes() == res.basic_circular.values.tobytes()
    report = write_report([res])
    lines = [line.split("\t") for line in report.splitlines()]
    assert [row[2] for row in lines] == ["circular", "linear"]
    assert lines[0] == ["2", "<6,200,0.05,0.06,0.04>", "circular", "0", "1.000000"]
