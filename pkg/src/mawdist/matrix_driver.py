"""Pairwise LW distance matrices over a dataset, optionally multithreaded.

MAW sets are computed once per sequence.  Each (i, j) pair with i < j is one
task that builds its own pair context; the numba kernels release the GIL so
threads run in parallel.  Every cell is computed by the same deterministic
code path, so the matrix does not depend on the number of workers.
"""
from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Sequence as SequenceT

import numpy as np

from .compare import lw_between
from .io_formats import DistanceMatrix, Sequence
from .maw_core import MawSet, circular_maws, compute_maws

__all__ = ["pairwise_matrix", "maw_sets", "MODES"]

MODES = ("linear", "circular")


def maw_sets(seqs: SequenceT[Sequence], mode: str = "linear", workers: int = 1) -> list[MawSet]:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    fn = circular_maws if mode == "circular" else compute_maws

    def one(seq):
        return fn(seq.symbols, seq.alphabet)

    if workers <= 1:
        return [one(s) for s in seqs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, seqs))


def pairwise_matrix(
    seqs: SequenceT[Sequence],
    mode: str = "linear",
    max_len: int | None = None,
    workers: int = 1,
    progress: bool = False,
) -> DistanceMatrix:
    """LW distance for every pair of sequences, mirrored into a square matrix."""
    k = len(seqs)
    if k < 2:
        raise ValueError(f"need at least 2 sequences, got {k}")
    alphabet = seqs[0].alphabet
    for s in seqs[1:]:
        if s.alphabet != alphabet:
            raise ValueError(f"alphabet mismatch for sequence {s.id}")
    if workers < 1:
        raise ValueError("workers must be >= 1")

    sets = maw_sets(seqs, mode, workers)
    pairs = list(combinations(range(k), 2))
    values = np.zeros((k, k), dtype=np.float64)

    def cell(pair):
        i, j = pair
        return lw_between(sets[i], sets[j], max_len).lw

    if workers == 1:
        results = map(cell, pairs)
        pool = None
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
        results = pool.map(cell, pairs)
    try:
        for done, ((i, j), lw) in enumerate(zip(pairs, results), 1):
            values[i, j] = values[j, i] = lw
            if progress:
                print(f"\rpairs {done}/{len(pairs)}", end="", file=sys.stderr, flush=True)
    finally:
        if pool is not None:
            pool.shutdown()
    if progress:
        print(file=sys.stderr)
    return DistanceMatrix(tuple(s.id for s in seqs), values)
