"""Suffix array, inverse suffix array, LCP array and constant-time LCE queries.

Texts are 1-D integer arrays of small non-negative codes.  Suffixes are
ordered with the usual convention that a proper prefix sorts first, which is
what an implicit end-of-text terminator smaller than every code gives.

The suffix array is built with SA-IS (induced sorting).  The per-level work is
done in numba kernels and the recursion on the reduced string is driven from
Python.  The LCP array comes from Kasai's rank-and-scan and range minima are
answered with a sparse table.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

__all__ = [
    "SuffixStructures",
    "as_text",
    "build_suffix_structures",
    "suffix_array",
    "lcp_array",
    "lce",
]

_jit = numba.njit(cache=True, nogil=True)


def as_text(symbols) -> np.ndarray:
    """Return ``symbols`` as a contiguous int32 code array."""
    text = np.ascontiguousarray(symbols, dtype=np.int32)
    if text.ndim != 1:
        raise ValueError("text must be one-dimensional")
    if text.size and text.min() < 0:
        raise ValueError("text codes must be non-negative")
    return text


# --------------------------------------------------------------------------
# SA-IS kernels.  ``s`` always ends with a unique 0 terminator here.


@_jit
def _classify(s):
    n = s.shape[0]
    stype = np.zeros(n, dtype=np.bool_)
    stype[n - 1] = True
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1]:
            stype[i] = True
        elif s[i] == s[i + 1]:
            stype[i] = stype[i + 1]
    return stype


@_jit
def _is_lms(stype, i):
    return i > 0 and stype[i] and not stype[i - 1]


@_jit
def _bucket_ends(s, k, tails):
    counts = np.zeros(k, dtype=np.int64)
    for i in range(s.shape[0]):
        counts[s[i]] += 1
    bounds = np.empty(k, dtype=np.int64)
    total = 0
    for c in range(k):
        if tails:
            total += counts[c]
            bounds[c] = total - 1
        else:
            bounds[c] = total
            total += counts[c]
    return bounds


@_jit
def _induce(s, stype, k, lms_sorted):
    n = s.shape[0]
    sa = np.full(n, -1, dtype=np.int32)
    tails = _bucket_ends(s, k, True)
    for idx in range(lms_sorted.shape[0] - 1, -1, -1):
        p = lms_sorted[idx]
        c = s[p]
        sa[tails[c]] = p
        tails[c] -= 1
    heads = _bucket_ends(s, k, False)
    for i in range(n):
        j = sa[i] - 1
        if j >= 0 and not stype[j]:
            c = s[j]
            sa[heads[c]] = j
            heads[c] += 1
    tails = _bucket_ends(s, k, True)
    for i in range(n - 1, -1, -1):
        j = sa[i] - 1
        if j >= 0 and stype[j]:
            c = s[j]
            sa[tails[c]] = j
            tails[c] -= 1
    return sa


@_jit
def _lms_equal(s, stype, a, b):
    n = s.shape[0]
    if a == n - 1 or b == n - 1:
        return False
    i = 0
    while True:
        if s[a + i] != s[b + i] or stype[a + i] != stype[b + i]:
            return False
        if i > 0 and _is_lms(stype, a + i) and _is_lms(stype, b + i):
            return True
        i += 1


@_jit
def _lms_positions(stype):
    n = stype.shape[0]
    count = 0
    for i in range(1, n):
        if _is_lms(stype, i):
            count += 1
    out = np.empty(count, dtype=np.int32)
    count = 0
    for i in range(1, n):
        if _is_lms(stype, i):
            out[count] = i
            count += 1
    return out


@_jit
def _reduce(s, stype, sa, lms):
    """Name the sorted LMS substrings; return (reduced string, name count)."""
    n = s.shape[0]
    names = np.full(n, -1, dtype=np.int32)
    name = -1
    prev = -1
    for r in range(n):
        p = sa[r]
        if _is_lms(stype, p):
            if prev < 0 or not _lms_equal(s, stype, prev, p):
                name += 1
            names[p] = name
            prev = p
    reduced = np.empty(lms.shape[0], dtype=np.int32)
    for i in range(lms.shape[0]):
        reduced[i] = names[lms[i]]
    return reduced, name + 1


@_jit
def _direct_order(reduced):
    out = np.empty(reduced.shape[0], dtype=np.int32)
    for i in range(reduced.shape[0]):
        out[reduced[i]] = i
    return out


def _sais(s: np.ndarray, k: int) -> np.ndarray:
    if s.shape[0] == 1:
        return np.zeros(1, dtype=np.int32)
    stype = _classify(s)
    lms = _lms_positions(stype)
    sa = _induce(s, stype, k, lms)
    reduced, names = _reduce(s, stype, sa, lms)
    if names < reduced.shape[0]:
        order = _sais(reduced, names)
    else:
        order = _direct_order(reduced)
    return _induce(s, stype, k, lms[order])


def suffix_array(text, alphabet_size: int | None = None) -> np.ndarray:
    """Suffix array of ``text`` (int32), shorter-prefix-first convention."""
    text = as_text(text)
    if text.size == 0:
        raise ValueError("empty text")
    if alphabet_size is None:
        alphabet_size = int(text.max()) + 1
    s = np.empty(text.size + 1, dtype=np.int32)
    s[:-1] = text
    s[:-1] += 1
    s[-1] = 0
    return _sais(s, alphabet_size + 1)[1:]


# --------------------------------------------------------------------------
# LCP and RMQ


@_jit
def _inverse(sa):
    isa = np.empty_like(sa)
    for r in range(sa.shape[0]):
        isa[sa[r]] = r
    return isa


@_jit
def _kasai(text, sa, isa):
    n = text.shape[0]
    lcp = np.zeros(n, dtype=np.int32)
    h = 0
    for i in range(n):
        r = isa[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and text[i + h] == text[j + h]:
            h += 1
        lcp[r] = h
        if h > 0:
            h -= 1
    return lcp


def lcp_array(text, sa, isa=None) -> np.ndarray:
    """Kasai LCP array: ``lcp[r]`` is the common prefix of ranks r-1, r."""
    text = as_text(text)
    sa = np.ascontiguousarray(sa, dtype=np.int32)
    if isa is None:
        isa = _inverse(sa)
    return _kasai(text, sa, isa)


def _sparse_table(values: np.ndarray) -> np.ndarray:
    n = values.shape[0]
    levels = max(1, n.bit_length())
    table = np.empty((levels, n), dtype=values.dtype)
    table[0] = values
    span = 1
    for k in range(1, levels):
        prev = table[k - 1]
        row = table[k]
        row[: n - 2 * span + 1] = np.minimum(prev[: n - 2 * span + 1], prev[span : n - span + 1])
        # tail cells are never read by a valid query
        row[n - 2 * span + 1 :] = prev[n - 2 * span + 1 :]
        span *= 2
    return table


@_jit
def _floor_log2(v):
    k = 0
    while v > 1:
        v >>= 1
        k += 1
    return k


@_jit
def _range_min(table, lo, hi):
    """Minimum over ``values[lo..hi]`` inclusive."""
    k = _floor_log2(hi - lo + 1)
    a = table[k, lo]
    b = table[k, hi - (1 << k) + 1]
    return a if a < b else b


@_jit
def _lce(table, isa, n, p, q):
    if p == q:
        return n - p
    rp = isa[p]
    rq = isa[q]
    if rp > rq:
        rp, rq = rq, rp
    return _range_min(table, rp + 1, rq)


@dataclass(frozen=True, eq=False)
class SuffixStructures:
    """Immutable SA / iSA / LCP bundle with a range-minimum index over LCP."""

    text: np.ndarray
    sa: np.ndarray
    isa: np.ndarray
    lcp: np.ndarray
    rmq: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.text.shape[0])

    def range_min(self, lo: int, hi: int) -> int:
        if not 0 <= lo <= hi < self.n:
            raise IndexError(f"bad LCP range [{lo}, {hi}]")
        return int(_range_min(self.rmq, lo, hi))

    def lce(self, p: int, q: int) -> int:
        """Longest common extension of the suffixes at ``p`` and ``q``."""
        n = self.n
        if not (0 <= p < n and 0 <= q < n):
            raise IndexError(f"position out of range: ({p}, {q}) for n={n}")
        return int(_lce(self.rmq, self.isa, n, p, q))


def build_suffix_structures(text, alphabet_size: int | None = None) -> SuffixStructures:
    """Build SA, iSA, LCP and the sparse-table RMQ for ``text``.

    O(n) for the arrays, O(n log n) time and space for the sparse table.
    """
    text = as_text(text)
    if text.size == 0:
        raise ValueError("empty text")
    sa = suffix_array(text, alphabet_size)
    isa = _inverse(sa)
    lcp = _kasai(text, sa, isa)
    for arr in (text, sa, isa, lcp):
        arr.flags.writeable = False
    rmq = _sparse_table(lcp)
    rmq.flags.writeable = False
    return SuffixStructures(text=text, sa=sa, isa=isa, lcp=lcp, rmq=rmq)


def lce(structures: SuffixStructures, p: int, q: int) -> int:
    return structures.lce(p, q)
