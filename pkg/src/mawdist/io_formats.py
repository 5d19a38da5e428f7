"""MultiFASTA input and strict square PHYLIP distance-matrix output."""
from __future__ import annotations

import string
import warnings
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .maw_core import Alphabet

__all__ = [
    "Sequence",
    "DistanceMatrix",
    "parse_fasta",
    "write_fasta",
    "write_phylip",
    "read_phylip",
    "PHYLIP_NAME_WIDTH",
]

PHYLIP_NAME_WIDTH = 10
_AUTO_SYMBOLS = frozenset(string.ascii_uppercase)


@dataclass(frozen=True)
class Sequence:
    id: str
    symbols: str
    alphabet: Alphabet

    def __post_init__(self):
        if not self.id:
            raise ValueError("sequence id must be non-empty")
        if not self.symbols:
            raise ValueError(f"empty sequence: {self.id}")
        unknown = set(self.symbols).difference(self.alphabet.letters)
        if unknown:
            raise ValueError(f"{self.id}: symbol {min(unknown)!r} not in alphabet")

    def __len__(self) -> int:
        return len(self.symbols)

    def rotate(self, i: int) -> "Sequence":
        i %= len(self.symbols)
        return Sequence(self.id, self.symbols[i:] + self.symbols[:i], self.alphabet)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        k = len(self.ids)
        if values.shape != (k, k):
            raise ValueError(f"matrix shape {values.shape} does not match {k} ids")
        if not np.array_equal(values, values.T):
            raise ValueError("distance matrix is not symmetric")
        if np.any(np.diag(values) != 0):
            raise ValueError("distance matrix diagonal must be zero")
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.ids)


def _records(stream: Iterable[str]):
    name = None
    chunks: list[str] = []
    for lineno, line in enumerate(stream, 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            if name is not None:
                yield name, "".join(chunks)
            fields = line[1:].split()
            if not fields:
                raise ValueError(f"line {lineno}: empty FASTA header")
            name = fields[0]
            chunks = []
        elif name is None:
            raise ValueError(f"line {lineno}: sequence data before first header")
        else:
            chunks.append("".join(line.split()).upper())
    if name is not None:
        yield name, "".join(chunks)


def parse_fasta(stream: Iterable[str], alphabet: Alphabet | None = None, lenient: bool = False) -> list[Sequence]:
    """Read a MultiFASTA stream.

    Sequence letters are uppercased.  With ``alphabet=None`` the alphabet is
    the set of letters A-Z used anywhere in the file; any other symbol is an
    error, or is dropped (with one warning giving the count) when ``lenient``.
    """
    records = list(_records(stream))
    seen = set()
    for name, _ in records:
        if name in seen:
            raise ValueError(f"duplicate sequence id: {name}")
        seen.add(name)

    allowed = _AUTO_SYMBOLS if alphabet is None else frozenset(alphabet.letters)
    cleaned = []
    dropped = 0
    for name, symbols in records:
        bad = set(symbols) - allowed
        if bad:
            if not lenient:
                raise ValueError(f"{name}: symbol {min(bad)!r} not in alphabet")
            kept = "".join(c for c in symbols if c in allowed)
            dropped += len(symbols) - len(kept)
            symbols = kept
        if not symbols:
            raise ValueError(f"empty sequence: {name}")
        cleaned.append((name, symbols))
    if dropped:
        warnings.warn(f"dropped {dropped} symbols outside the alphabet", stacklevel=2)

    if alphabet is None and cleaned:
        alphabet = Alphabet.from_symbols(*(s for _, s in cleaned))
    return [Sequence(name, symbols, alphabet) for name, symbols in cleaned]


def write_fasta(sequences: Iterable[Sequence], stream: TextIO, width: int = 60) -> None:
    for seq in sequences:
        stream.write(f">{seq.id}\n")
        for i in range(0, len(seq.symbols), width):
            stream.write(seq.symbols[i : i + width] + "\n")


def write_phylip(matrix: DistanceMatrix, stream: TextIO) -> None:
    """Strict square PHYLIP: 10-character names, six decimals per cell."""
    stream.write(f"{len(matrix)}\n")
    for name, row in zip(matrix.ids, matrix.values):
        if not name:
            raise ValueError("empty taxon name")
        if len(name) > PHYLIP_NAME_WIDTH:
            warnings.warn(f"taxon name {name!r} truncated to {PHYLIP_NAME_WIDTH} characters", stacklevel=2)
        cells = "".join(f" {v:.6f}" for v in row)
        stream.write(f"{name[:PHYLIP_NAME_WIDTH]:<{PHYLIP_NAME_WIDTH}}{cells}\n")


def read_phylip(stream: Iterable[str]) -> DistanceMatrix:
    """Read a square PHYLIP matrix written by :func:`write_phylip`."""
    lines = [line.rstrip("\n") for line in stream if line.strip()]
    if not lines:
        raise ValueError("empty PHYLIP input")
    try:
        k = int(lines[0].split()[0])
    except ValueError:
        raise ValueError(f"bad PHYLIP taxon count: {lines[0]!r}") from None
    if len(lines) - 1 != k:
        raise ValueError(f"expected {k} matrix rows, found {len(lines) - 1}")
    ids = []
    values = np.empty((k, k))
    for r, line in enumerate(lines[1:]):
        name = line[:PHYLIP_NAME_WIDTH].strip()
        cells = line[PHYLIP_NAME_WIDTH:].split()
        if len(cells) != k:
            raise ValueError(f"row {name!r}: expected {k} values, found {len(cells)}")
        ids.append(name)
        values[r] = [float(c) for c in cells]
    return DistanceMatrix(tuple(ids), values)
