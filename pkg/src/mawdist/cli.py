"""Command-line entry point: ``mawdist <subcommand> ...``."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .io_formats import parse_fasta, read_phylip, write_fasta, write_phylip
from .maw_core import DNA, circular_maws, compute_maws
from .matrix_driver import pairwise_matrix
from .phylo_harness import (
    SimParams,
    accuracy,
    neighbor_joining,
    parse_newick,
    rf_distance,
    rotate_randomly,
    simulate_dataset,
)

WORKERS_ENV = "MAWDIST_WORKERS"


def _read_fasta(path, alphabet=None, lenient=False):
    with open(path) as fh:
        return parse_fasta(fh, alphabet=alphabet, lenient=lenient)


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def cmd_dist(args) -> None:
    alphabet = DNA if args.alphabet == "dna" else None
    seqs = _read_fasta(args.fasta, alphabet, args.lenient)
    workers = args.workers if args.workers is not None else _default_workers()
    mode = "circular" if args.circular else "linear"
    matrix = pairwise_matrix(seqs, mode, args.max_len, workers, progress=args.progress)
    with open(args.output, "w") as fh:
        write_phylip(matrix, fh)


def cmd_maw(args) -> None:
    alphabet = DNA if args.alphabet == "dna" else None
    seqs = _read_fasta(args.fasta, alphabet, args.lenient)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    fn = circular_maws if args.circular else compute_maws
    for seq in seqs:
        words = sorted(fn(seq.symbols, seq.alphabet).words())
        (outdir / f"{seq.id}.maw").write_text("".join(w + "\n" for w in words))


def cmd_simulate(args) -> None:
    params = SimParams(args.taxa, args.len, args.sub, args.deletion, args.ins, args.seed)
    seqs, tree = simulate_dataset(params)
    with open(args.output, "w") as fh:
        write_fasta(seqs, fh)
    Path(args.tree).write_text(tree.to_newick() + "\n")


def cmd_rotate(args) -> None:
    seqs = _read_fasta(args.fasta)
    with open(args.output, "w") as fh:
        write_fasta(rotate_randomly(seqs, args.seed), fh)


def cmd_nj(args) -> None:
    with open(args.phylip) as fh:
        matrix = read_phylip(fh)
    Path(args.output).write_text(neighbor_joining(matrix).to_newick() + "\n")


def cmd_eval(args) -> None:
    true_tree = parse_newick(Path(args.true).read_text())
    inferred = parse_newick(Path(args.inferred).read_text())
    print(f"rf {rf_distance(inferred, true_tree)}")
    print(f"accuracy {accuracy(inferred, true_tree):.6f}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mawdist", description="Sequence comparison with minimal absent words.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="pairwise LW distance matrix (PHYLIP)")
    p.add_argument("fasta")
    p.add_argument("--circular", action="store_true")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--workers", type=int, default=None, help=f"default: ${WORKERS_ENV} or 1")
    p.add_argument("--alphabet", choices=("auto", "dna"), default="auto")
    p.add_argument("--lenient", action="store_true", help="drop symbols outside the alphabet")
    p.add_argument("--progress", action="store_true", help="per-pair counter on stderr")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("maw", help="dump sorted MAWs per sequence")
    p.add_argument("fasta")
    p.add_argument("--circular", action="store_true")
    p.add_argument("--alphabet", choices=("auto", "dna"), default="auto")
    p.add_argument("--lenient", action="store_true")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_maw)

    p = sub.add_parser("simulate", help="simulate a DNA dataset along a random tree")
    p.add_argument("--taxa", type=int, required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--sub", type=float, required=True)
    p.add_argument("--del", dest="deletion", type=float, required=True)
    p.add_argument("--ins", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--tree", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("rotate", help="rotate every sequence by a random offset")
    p.add_argument("fasta")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("nj", help="neighbour-joining tree from a PHYLIP matrix")
    p.add_argument("phylip")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_nj)

    p = sub.add_parser("eval", help="RF distance and accuracy of an inferred tree")
    p.add_argument("--true", required=True)
    p.add_argument("--inferred", required=True)
    p.set_defaults(func=cmd_eval)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (OSError, ValueError) as exc:
        print(f"mawdist {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
