"""LW distance between two MAW sets via suffix-array ordering and LCE merge.

Both reference texts are laid out in one word ``w = x . # . y`` where ``#`` is
a separator code below every letter.  Tuples are ordered by (first letter,
rank of their start position in ``w``), which is lexicographic order of the
decoded words because each set is antifactorial.  A single merge then walks
both lists, comparing one x-word and one y-word with a constant-time LCE.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .maw_core import Alphabet, MawSet, circular_maws, compute_maws
from .suffix_structures import SuffixStructures, _lce, build_suffix_structures

__all__ = [
    "PairContext",
    "OrderedMawList",
    "LwResult",
    "build_pair_context",
    "order_maws",
    "tuple_compare",
    "merge_union",
    "lw_between",
    "lw_distance",
    "lw_distance_circular",
]

SEPARATOR = 0


@dataclass(frozen=True, eq=False)
class PairContext:
    w: np.ndarray
    m: int
    structures: SuffixStructures

    @property
    def offset_y(self) -> int:
        return self.m + 1


@dataclass(frozen=True, eq=False)
class OrderedMawList:
    """Tuples of one set sorted lexicographically, positions absolute in ``w``."""

    letters: np.ndarray
    positions: np.ndarray
    lengths: np.ndarray
    ranks: np.ndarray

    def __len__(self) -> int:
        return int(self.letters.shape[0])


@dataclass(frozen=True)
class LwResult:
    lw: float
    sym_diff_count: int
    union_count: int


def _check_same_alphabet(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise ValueError(f"alphabet mismatch: {''.join(a)} vs {''.join(b)}")


def _context_from_codes(x_codes: np.ndarray, y_codes: np.ndarray, sigma: int) -> PairContext:
    if x_codes.size == 0 or y_codes.size == 0:
        raise ValueError("empty text")
    m = x_codes.shape[0]
    w = np.empty(m + 1 + y_codes.shape[0], dtype=np.int32)
    w[:m] = x_codes
    w[m] = SEPARATOR - 1
    w[m + 1 :] = y_codes
    w += 1
    return PairContext(w=w, m=m, structures=build_suffix_structures(w, sigma + 1))


def build_pair_context(x, y, alphabet: Alphabet | None = None) -> PairContext:
    """Concatenate ``x # y`` (shifted codes) and build its suffix structures.

    ``x`` and ``y`` are Sequences, or raw strings when ``alphabet`` is given.
    """
    if alphabet is None:
        _check_same_alphabet(x.alphabet, y.alphabet)
        alphabet = x.alphabet
    x_codes = alphabet.encode(getattr(x, "symbols", x))
    y_codes = alphabet.encode(getattr(y, "symbols", y))
    return _context_from_codes(x_codes, y_codes, len(alphabet))


def context_for_sets(mx: MawSet, my: MawSet) -> PairContext:
    _check_same_alphabet(mx.alphabet, my.alphabet)
    return _context_from_codes(mx.reference, my.reference, len(mx.alphabet))


@numba.njit(cache=True, nogil=True)
def _counting_order(letters, ranks, sigma, n_ranks):
    k = letters.shape[0]
    counts = np.zeros(n_ranks + 1, dtype=np.int64)
    for t in range(k):
        counts[ranks[t] + 1] += 1
    for r in range(n_ranks):
        counts[r + 1] += counts[r]
    by_rank = np.empty(k, dtype=np.int64)
    for t in range(k):
        by_rank[counts[ranks[t]]] = t
        counts[ranks[t]] += 1
    lcounts = np.zeros(sigma + 1, dtype=np.int64)
    for t in range(k):
        lcounts[letters[t] + 1] += 1
    for c in range(sigma):
        lcounts[c + 1] += lcounts[c]
    order = np.empty(k, dtype=np.int64)
    for idx in range(k):
        t = by_rank[idx]
        order[lcounts[letters[t]]] = t
        lcounts[letters[t]] += 1
    return order


def order_maws(maws: MawSet, ctx: PairContext, base: int) -> OrderedMawList:
    """Sort tuples by (letter, iSA rank of start) with two counting passes."""
    positions = maws.starts.astype(np.int64) + base
    ranks = ctx.structures.isa[positions]
    order = _counting_order(maws.letters, ranks, len(maws.alphabet), ctx.structures.n)
    return OrderedMawList(
        letters=maws.letters[order],
        positions=positions[order],
        lengths=maws.lengths[order],
        ranks=ranks[order],
    )


@numba.njit(cache=True, nogil=True)
def _compare(w, table, isa, a1, p1, len1, a2, p2, len2):
    if a1 != a2:
        return -1 if a1 < a2 else 1
    tail1 = len1 - 1
    tail2 = len2 - 1
    common = _lce(table, isa, w.shape[0], p1, p2)
    shorter = tail1 if tail1 < tail2 else tail2
    if common >= shorter:
        if tail1 == tail2:
            return 0
        return -1 if tail1 < tail2 else 1
    return -1 if w[p1 + common] < w[p2 + common] else 1


def tuple_compare(x_list: OrderedMawList, i: int, y_list: OrderedMawList, j: int, ctx: PairContext) -> int:
    """-1, 0 or 1 as the i-th x-word is less than, equal to or greater than the j-th y-word."""
    s = ctx.structures
    return int(
        _compare(
            s.text, s.rmq, s.isa,
            x_list.letters[i], x_list.positions[i], x_list.lengths[i],
            y_list.letters[j], y_list.positions[j], y_list.lengths[j],
        )
    )


@numba.njit(cache=True, nogil=True)
def _merge(w, table, isa, xl, xp, xn, yl, yp, yn, origin, picks):
    """Walk both sorted lists.  Returns (lw, sym_diff, union).

    ``origin``/``picks`` receive the union in order (0 = x, 1 = y, 2 = both)
    and the index into the corresponding list; pass empty arrays to skip.
    """
    record = origin.shape[0] > 0
    i = 0
    j = 0
    kx = xl.shape[0]
    ky = yl.shape[0]
    lw = 0.0
    diff = 0
    union = 0
    while i < kx and j < ky:
        c = _compare(w, table, isa, xl[i], xp[i], xn[i], yl[j], yp[j], yn[j])
        if c < 0:
            lw += 1.0 / (xn[i] * xn[i])
            diff += 1
            if record:
                origin[union] = 0
                picks[union] = i
            i += 1
        elif c > 0:
            lw += 1.0 / (yn[j] * yn[j])
            diff += 1
            if record:
                origin[union] = 1
                picks[union] = j
            j += 1
        else:
            if record:
                origin[union] = 2
                picks[union] = i
            i += 1
            j += 1
        union += 1
    while i < kx:
        lw += 1.0 / (xn[i] * xn[i])
        diff += 1
        if record:
            origin[union] = 0
            picks[union] = i
        i += 1
        union += 1
    while j < ky:
        lw += 1.0 / (yn[j] * yn[j])
        diff += 1
        if record:
            origin[union] = 1
            picks[union] = j
        j += 1
        union += 1
    return lw, diff, union


_NO_RECORD = np.empty(0, dtype=np.int64)


def _run_merge(ox: OrderedMawList, oy: OrderedMawList, ctx: PairContext, origin=_NO_RECORD, picks=_NO_RECORD):
    s = ctx.structures
    lengths_x = ox.lengths.astype(np.int64)
    lengths_y = oy.lengths.astype(np.int64)
    return _merge(
        s.text, s.rmq, s.isa,
        ox.letters, ox.positions, lengths_x,
        oy.letters, oy.positions, lengths_y,
        origin, picks,
    )


def merge_union(mx: MawSet, my: MawSet, ctx: PairContext | None = None) -> list[str]:
    """Union of two MAW sets as decoded words in lexicographic order."""
    if ctx is None:
        ctx = context_for_sets(mx, my)
    ox = order_maws(mx, ctx, 0)
    oy = order_maws(my, ctx, ctx.offset_y)
    size = len(ox) + len(oy)
    origin = np.empty(size, dtype=np.int64)
    picks = np.empty(size, dtype=np.int64)
    _, _, union = _run_merge(ox, oy, ctx, origin, picks)
    letters = mx.alphabet.letters
    w = ctx.w
    out = []
    for src, idx in zip(origin[:union], picks[:union]):
        ol = oy if src == 1 else ox
        p = int(ol.positions[idx])
        tail = w[p : p + int(ol.lengths[idx]) - 1] - 1
        out.append(letters[ol.letters[idx]] + mx.alphabet.decode(tail))
    return out


def lw_between(mx: MawSet, my: MawSet, max_len: int | None = None) -> LwResult:
    """LW over the symmetric difference of two precomputed MAW sets."""
    if max_len is not None:
        mx = mx.filter_length(max_len)
        my = my.filter_length(max_len)
    ctx = context_for_sets(mx, my)
    ox = order_maws(mx, ctx, 0)
    oy = order_maws(my, ctx, ctx.offset_y)
    lw, diff, union = _run_merge(ox, oy, ctx)
    return LwResult(lw=float(lw), sym_diff_count=int(diff), union_count=int(union))


def _alphabet_of(x, y, alphabet: Alphabet | None) -> Alphabet:
    if alphabet is not None:
        return alphabet
    ax = getattr(x, "alphabet", None)
    ay = getattr(y, "alphabet", None)
    if ax is not None and ay is not None:
        _check_same_alphabet(ax, ay)
        return ax
    return Alphabet.from_symbols(getattr(x, "symbols", x), getattr(y, "symbols", y))


def lw_distance(x, y, max_len: int | None = None, alphabet: Alphabet | None = None) -> LwResult:
    """LW distance between the MAW sets of two linear sequences.

    ``x`` and ``y`` are Sequences or raw strings; for strings without an
    explicit alphabet, the letters of both are used.
    """
    alphabet = _alphabet_of(x, y, alphabet)
    return lw_between(compute_maws(x, alphabet), compute_maws(y, alphabet), max_len)


def lw_distance_circular(x, y, alphabet: Alphabet | None = None) -> LwResult:
    """LW distance between the MAW sets of two circular sequences."""
    alphabet = _alphabet_of(x, y, alphabet)
    return lw_between(circular_maws(x, alphabet), circular_maws(y, alphabet))
