"""Minimal absent words of linear and circular texts.

A MAW ``aub`` of a text ``y`` is stored as the tuple ``(a, i, j)`` with
``ub == y[i..j]``.  The computation walks the internal nodes of the suffix
tree implicitly, as LCP intervals of the suffix array of ``y`` plus the empty
suffix.  ``aub`` is a MAW exactly when ``u`` is such a node, ``b`` labels one
of its children, ``a`` precedes some occurrence of ``u`` and ``a`` precedes no
occurrence of ``ub``.  Keeping a bitmask of preceding letters per child makes
this O(sigma * n) after the suffix array.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

import numba
import numpy as np

from .suffix_structures import as_text, lcp_array, suffix_array

__all__ = [
    "Alphabet",
    "DNA",
    "MawTuple",
    "MawSet",
    "compute_maws",
    "circular_maws",
    "decode",
    "brute_force_maws",
    "brute_force_circular_maws",
    "brute_force_bounded_circular_maws",
]

MAX_ALPHABET = 64


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of raw symbols; the code of a letter is its rank."""

    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise ValueError("alphabet must not be empty")
        if any(len(c) != 1 for c in letters):
            raise ValueError("alphabet letters must be single characters")
        if list(letters) != sorted(set(letters)):
            raise ValueError("alphabet letters must be sorted and distinct")
        if len(letters) > MAX_ALPHABET:
            raise ValueError(f"alphabet larger than {MAX_ALPHABET} letters")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_symbols(cls, *texts: str) -> "Alphabet":
        return cls(tuple(sorted(set().union(*map(set, texts)))))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def rank(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise ValueError(f"symbol {letter!r} not in alphabet") from None

    def encode(self, symbols: str) -> np.ndarray:
        raw = np.frombuffer(symbols.encode("latin-1"), dtype=np.uint8)
        table = np.full(256, -1, dtype=np.int32)
        for code, letter in enumerate(self.letters):
            table[ord(letter)] = code
        codes = table[raw]
        if codes.size and codes.min() < 0:
            bad = symbols[int(np.argmin(codes))]
            raise ValueError(f"symbol {bad!r} not in alphabet")
        return codes

    def decode(self, codes: Iterable[int]) -> str:
        return "".join(self.letters[c] for c in codes)


DNA = Alphabet(("A", "C", "G", "T"))


class MawTuple(NamedTuple):
    letter: int
    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 2


@dataclass(frozen=True, eq=False)
class MawSet:
    """MAWs of one text as parallel ``letter`` / ``start`` / ``end`` arrays.

    ``declared_period`` is the length of the circular word when the set was
    computed through its square, else None.
    """

    reference: np.ndarray
    alphabet: Alphabet
    letters: np.ndarray
    starts: np.ndarray
    ends: np.ndarray
    declared_period: int | None = None

    def __len__(self) -> int:
        return int(self.letters.shape[0])

    @property
    def lengths(self) -> np.ndarray:
        return self.ends - self.starts + 2

    @property
    def tuples(self) -> list[MawTuple]:
        return [MawTuple(int(a), int(i), int(j)) for a, i, j in zip(self.letters, self.starts, self.ends)]

    def words(self) -> list[str]:
        letters = self.alphabet.letters
        ref = self.alphabet.decode(self.reference)
        return [letters[a] + ref[i : j + 1] for a, i, j in zip(self.letters, self.starts, self.ends)]

    def word_set(self) -> set[str]:
        return set(self.words())

    def filter_length(self, max_len: int) -> "MawSet":
        keep = self.lengths <= max_len
        return MawSet(
            self.reference,
            self.alphabet,
            self.letters[keep],
            self.starts[keep],
            self.ends[keep],
            self.declared_period,
        )


def decode(t: MawTuple, maws: MawSet) -> str:
    letter, start, end = t
    return maws.alphabet.letters[letter] + maws.alphabet.decode(maws.reference[start : end + 1])


@numba.njit(cache=True, nogil=True)
def _maw_kernel(text, sa, lcp, sigma, out_letter, out_start, out_end):
    # ranks are shifted by one: rank 0 is the empty suffix at position n
    n = text.shape[0]
    size = n + 1
    st_depth = np.empty(size + 1, dtype=np.int64)
    st_base = np.empty(size + 1, dtype=np.int64)
    ch_mask = np.empty(size + 1, dtype=np.uint64)
    ch_pos = np.empty(size + 1, dtype=np.int64)
    top = 0
    st_depth[0] = 0
    st_base[0] = 0
    ctop = 0
    count = 0
    one = np.uint64(1)
    for r in range(size):
        p = n if r == 0 else sa[r - 1]
        ch_mask[ctop] = (one << np.uint64(text[p - 1])) if p > 0 else np.uint64(0)
        ch_pos[ctop] = p
        ctop += 1
        if r == size - 1:
            cur = -1
        elif r == 0:
            cur = 0
        else:
            cur = lcp[r]
        while top >= 0 and cur < st_depth[top]:
            depth = st_depth[top]
            base = st_base[top]
            top -= 1
            left = np.uint64(0)
            for c in range(base, ctop):
                left |= ch_mask[c]
            for c in range(base, ctop):
                pos = ch_pos[c]
                if pos + depth >= n:
                    continue
                missing = left & ~ch_mask[c]
                a = 0
                while missing != 0 and a < sigma:
                    if (missing >> np.uint64(a)) & one:
                        out_letter[count] = a
                        out_start[count] = pos
                        out_end[count] = pos + depth
                        count += 1
                        missing &= ~(one << np.uint64(a))
                    a += 1
            first = ch_pos[base]
            ctop = base
            ch_mask[ctop] = left
            ch_pos[ctop] = first
            ctop += 1
        if top >= 0 and cur > st_depth[top]:
            top += 1
            st_depth[top] = cur
            st_base[top] = ctop - 1
    return count


def _maws_of_codes(text: np.ndarray, alphabet: Alphabet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    sigma = len(alphabet)
    sa = suffix_array(text, sigma)
    lcp = lcp_array(text, sa)
    capacity = sigma * (text.shape[0] + 1)
    letters = np.empty(capacity, dtype=np.int32)
    starts = np.empty(capacity, dtype=np.int32)
    ends = np.empty(capacity, dtype=np.int32)
    count = _maw_kernel(text, sa, lcp, sigma, letters, starts, ends)
    return letters[:count].copy(), starts[:count].copy(), ends[:count].copy()


def _coerce(text, alphabet: Alphabet) -> np.ndarray:
    if isinstance(text, str):
        return alphabet.encode(text)
    symbols = getattr(text, "symbols", None)
    if isinstance(symbols, str):
        return alphabet.encode(symbols)
    codes = as_text(text).copy()
    if codes.size and codes.max() >= len(alphabet):
        raise ValueError("symbol outside alphabet")
    return codes


def compute_maws(text, alphabet: Alphabet) -> MawSet:
    """All minimal absent words (length >= 2) of a linear text.

    ``text`` may be a raw string, a Sequence, or an array of alphabet codes.
    """
    codes = _coerce(text, alphabet)
    if codes.size == 0:
        raise ValueError("empty text")
    codes.flags.writeable = False
    letters, starts, ends = _maws_of_codes(codes, alphabet)
    return MawSet(codes, alphabet, letters, starts, ends)


def circular_maws(x, alphabet: Alphabet) -> MawSet:
    """MAWs of the circular word of ``x``: MAWs of ``xx`` of length <= |x|."""
    codes = _coerce(x, alphabet)
    m = codes.shape[0]
    if m == 0:
        raise ValueError("empty sequence")
    doubled = np.concatenate([codes, codes])
    doubled.flags.writeable = False
    letters, starts, ends = _maws_of_codes(doubled, alphabet)
    keep = ends - starts + 2 <= m
    return MawSet(doubled, alphabet, letters[keep], starts[keep], ends[keep], declared_period=m)


# --------------------------------------------------------------------------
# Brute-force oracles on plain strings.  Exponential in nothing, but
# quadratic-to-cubic in |text|; intended for short inputs in tests.


def _factors(text: str, max_len: int | None = None) -> set[str]:
    n = len(text)
    limit = n if max_len is None else min(n, max_len)
    return {text[i : i + k] for k in range(limit + 1) for i in range(n - k + 1)}


def _minimal_absent(factors: set[str], alphabet: Iterable[str], member) -> set[str]:
    alphabet = list(alphabet)
    out = set()
    for u in factors:
        for a in alphabet:
            if not member(a + u):
                continue
            for b in alphabet:
                if member(u + b) and not member(a + u + b):
                    out.add(a + u + b)
    return out


def brute_force_maws(text: str, alphabet: Iterable[str]) -> set[str]:
    factors = _factors(text)
    return _minimal_absent(factors, alphabet, factors.__contains__)


def _in_circular_language(w: str, x: str) -> bool:
    reps = -(-len(w) // len(x)) + 1
    return w in x * reps


def brute_force_circular_maws(x: str, alphabet: Iterable[str]) -> set[str]:
    """MAWs of the factorial closure of all powers of ``x``.

    Candidates ``aub`` are generated up to length |x| + 1.
    """
    if not x:
        return set()
    factors = _factors(x * 3, max_len=len(x) - 1)
    return _minimal_absent(factors, alphabet, lambda w: _in_circular_language(w, x))


def brute_force_bounded_circular_maws(x: str, alphabet: Iterable[str]) -> set[str]:
    """MAWs of the factors of ``xx`` of length at most |x|."""
    if not x:
        return set()
    factors = _factors(x + x, max_len=len(x))
    return _minimal_absent(factors, alphabet, factors.__contains__)
