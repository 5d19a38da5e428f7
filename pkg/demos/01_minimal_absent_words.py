"""Minimal absent words of a short word, linear and circular.

Run with ``python demos/01_minimal_absent_words.py``.
"""
from mawdist import Alphabet, circular_maws, compute_maws
from mawdist.maw_core import brute_force_bounded_circular_maws

ab = Alphabet(("a", "b"))

# %% Linear MAWs.  Each MAW aub is stored as (a, i, j) with ub = y[i..j].
maws = compute_maws("abaab", ab)
for t, word in zip(maws.tuples, maws.words()):
    print(f"{t}  ->  {word}")
print("linear:", sorted(maws.word_set()))

# %% A unary word has exactly one MAW, of length n + 1.
print("aaaa:", sorted(compute_maws("aaaa", Alphabet(("a",))).word_set()))

# %% Circular MAWs are the MAWs of xx no longer than |x|.
circ = circular_maws("abaab", ab)
print("circular:", sorted(circ.word_set()), "period", circ.declared_period)

# %% Every rotation gives the same circular set.
for i in range(5):
    x = "abaab"[i:] + "abaab"[:i]
    print(x, sorted(circular_maws(x, ab).word_set()))

# %% Taking all factors of length <= |x| of xx instead gives a much larger set,
# with one word of length |x| + 1 per distinct rotation.
print("bounded:", sorted(brute_force_bounded_circular_maws("abaab", "ab"), key=lambda w: (len(w), w)))
