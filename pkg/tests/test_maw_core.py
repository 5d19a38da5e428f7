import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mawdist.maw_core import (
    Alphabet,
    MawTuple,
    brute_force_bounded_circular_maws,
    brute_force_circular_maws,
    brute_force_maws,
    circular_maws,
    compute_maws,
    decode,
)

AB = Alphabet(("a", "b"))
A = Alphabet(("a",))


def binary_strings(max_len):
    for n in range(1, max_len + 1):
        for t in itertools.product("ab", repeat=n):
            yield "".join(t)


def is_antifactorial(words):
    return not any(u != v and u in v for u in words for v in words)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(("b", "a"))
    with pytest.raises(ValueError):
        Alphabet(())
    assert Alphabet.from_symbols("bca", "ab").letters == ("a", "b", "c")


def test_symbol_outside_alphabet():
    with pytest.raises(ValueError, match="not in alphabet"):
        compute_maws("abc", AB)
    with pytest.raises(ValueError):
        compute_maws(np.array([0, 2]), AB)


def test_empty_inputs():
    with pytest.raises(ValueError, match="empty text"):
        compute_maws("", AB)
    with pytest.raises(ValueError, match="empty sequence"):
        circular_maws("", AB)


@pytest.mark.parametrize(
    "text, alphabet, expected",
    [
        ("abaab", AB, {"aaa", "aaba", "bab", "bb"}),
        ("aaaa", A, {"aaaaa"}),
        ("ab", AB, {"aa", "ba", "bb"}),
        ("aab", AB, {"ba", "bb", "aaa"}),
    ],
)
def test_compute_maws_examples(text, alphabet, expected):
    assert compute_maws(text, alphabet).word_set() == expected


@pytest.mark.parametrize(
    "x, alphabet, expected",
    [
        ("abaab", AB, {"aaa", "aabaa", "babab", "bb"}),
        ("aaaa", A, set()),
        ("ab", AB, {"aa", "bb"}),
    ],
)
def test_circular_maws_examples(x, alphabet, expected):
    got = circular_maws(x, alphabet)
    assert got.word_set() == expected
    assert got.declared_period == len(x)


def test_decode_by_definition():
    maws = compute_maws("abaab", AB)
    for t in maws.tuples:
        letter, i, j = t
        assert decode(t, maws) == "ab"[letter] + "abaab"[i : j + 1]
        assert t.length == len(decode(t, maws))
    assert decode(MawTuple(1, 1, 1), maws) == "bb"
    assert decode(MawTuple(0, 0, 0), compute_maws("ab", AB)) == "aa"


def test_tuples_reference_occurring_factors():
    maws = compute_maws("abaab", AB)
    assert sorted(decode(t, maws) for t in maws.tuples) == sorted(maws.words())
    assert {"aaba"} <= maws.word_set()


@pytest.mark.parametrize(
    "x, alphabet, expected",
    [
        ("abaab", "ab", {"aaa", "aabaa", "babab", "bb"}),
        ("a", "a", set()),
        ("ab", "ab", {"aa", "bb"}),
        ("", "ab", set()),
    ],
)
def test_brute_force_circular(x, alphabet, expected):
    assert brute_force_circular_maws(x, alphabet) == expected


@pytest.mark.parametrize(
    "x, alphabet, expected",
    [
        (
            "abaab",
            "ab",
            {"aaa", "aabaa", "aababa", "abaaba", "ababaa", "baabab", "babaab", "babab", "bb"},
        ),
        ("aa", "a", {"aaa"}),
        ("ab", "ab", {"aa", "bb", "aba", "bab"}),
    ],
)
def test_brute_force_bounded_circular(x, alphabet, expected):
    assert brute_force_bounded_circular_maws(x, alphabet) == expected


def test_brute_force_linear_examples():
    assert brute_force_maws("", "ab") == set()
    assert brute_force_maws("abaab", "ab") == {"aaa", "aaba", "bab", "bb"}


def test_oracle_equivalence_binary_up_to_9():
    for t in binary_strings(9):
        assert compute_maws(t, AB).word_set() == brute_force_maws(t, "ab"), t


def test_circular_oracle_equivalence_up_to_8():
    for t in binary_strings(8):
        assert circular_maws(t, AB).word_set() == brute_force_circular_maws(t, "ab"), t


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["abc", "abcd"]).flatmap(lambda s: st.tuples(st.just(s), st.text(s, min_size=1, max_size=40))))
def test_oracle_equivalence_random(case):
    letters, text = case
    got = compute_maws(text, Alphabet(tuple(letters)))
    words = got.words()
    assert len(words) == len(set(words))
    assert set(words) == brute_force_maws(text, letters)


@settings(max_examples=200, deadline=None)
@given(st.text("acgt", min_size=1, max_size=80))
def test_set_invariants(text):
    alphabet = Alphabet(tuple("acgt"))
    words = compute_maws(text, alphabet).words()
    n = len(text)
    assert len(words) <= len(alphabet) * n
    assert all(2 <= len(w) <= n + 1 for w in words)
    assert any(len(w) == n + 1 for w in words) == (len(set(text)) == 1)
    assert is_antifactorial(words)


def test_rotation_invariance_of_circular_sets():
    for x in binary_strings(7):
        ref = circular_maws(x, AB).word_set()
        for i in range(1, len(x)):
            assert circular_maws(x[i:] + x[:i], AB).word_set() == ref


def test_non_primitive_circular_keeps_period():
    single = circular_maws("ab", AB)
    double = circular_maws("abab", AB)
    assert single.word_set() == double.word_set()
    assert (single.declared_period, double.declared_period) == (2, 4)


def test_filter_length():
    maws = compute_maws("abaab", AB)
    assert maws.filter_length(3).word_set() == {"aaa", "bab", "bb"}
