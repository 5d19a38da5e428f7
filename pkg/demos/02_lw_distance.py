"""LW distance between sequences and how its cost grows with length.

Run with ``python demos/02_lw_distance.py``.
"""
import time

import numpy as np

from mawdist import DNA, Alphabet, compute_maws, lw_between, lw_distance, lw_distance_circular
from mawdist.compare import merge_union

# %% Two tiny examples: the distance sums 1/|w|^2 over words in exactly one set.
print(lw_distance("ab", "ba"))
print(lw_distance("aab", "aba"), "expected", 13 / 18)

# %% Circular mode ignores where the sequence was cut.
print(lw_distance_circular("ACGTTGCA", "TGCAACGT", alphabet=DNA))
print(lw_distance("ACGTTGCA", "TGCAACGT", alphabet=DNA))

# %% The merge also yields the union of both MAW sets in lexicographic order.
ab = Alphabet(("a", "b"))
print(merge_union(compute_maws("ab", ab), compute_maws("ba", ab)))

# %% Wall time for random DNA pairs of growing length; doubling n should
# roughly double the time.
rng = np.random.default_rng(0)
lw_distance("ACGT", "TTGA", alphabet=DNA)
previous = None
for n in (125_000, 250_000, 500_000, 1_000_000):
    x = rng.integers(0, 4, n, dtype=np.int32)
    y = rng.integers(0, 4, n, dtype=np.int32)
    t0 = time.perf_counter()
    mx, my = compute_maws(x, DNA), compute_maws(y, DNA)
    result = lw_between(mx, my)
    elapsed = time.perf_counter() - t0
    ratio = "" if previous is None else f"  x{elapsed / previous:.2f}"
    print(f"n={n:>9,}  |Mx|={len(mx):>9,}  LW={result.lw:12.3f}  {elapsed:6.2f}s{ratio}")
    previous = elapsed
