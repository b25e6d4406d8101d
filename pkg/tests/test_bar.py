import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoidcoh.bar import (OddLength, WordSum, act, decomposable_span_basis, format_wordsum, gamma,
                           shuffle_product)
from monoidcoh.linalg import ExactMatrix, rank
from monoidcoh.rings import Rationals
from oracles import brute_gamma

GAMMA_2_ABCD = {
    tuple("abcdabcd"): 1, tuple("abcadbcd"): -1, tuple("abcabdcd"): 1,
    tuple("abacdbcd"): 1, tuple("abacbdcd"): -1, tuple("ababcdcd"): 2,
}

words = st.lists(st.sampled_from("abcde"), min_size=0, max_size=3).map(tuple)


def test_shuffle_examples():
    assert shuffle_product("a", "b").terms == {("a", "b"): 1, ("b", "a"): -1}
    assert shuffle_product("a", "bc").terms == {("a", "b", "c"): 1, ("b", "a", "c"): -1,
                                                ("b", "c", "a"): 1}
    assert shuffle_product("", "bc").terms == {("b", "c"): 1}


def test_act_convention():
    assert act("abcd", (4, 3, 2, 1)) == tuple("dcba")
    assert act("abc", (2, 3, 1)) == tuple("bca")


@given(words, words)
def test_shuffle_commutes_up_to_graded_sign(u, v):
    s = -1 if (len(u) * len(v)) % 2 else 1
    assert shuffle_product(u, v) == shuffle_product(v, u).scale(s)


@given(words, words, words)
def test_shuffle_is_associative(u, v, w):
    def prod(a: WordSum, b: WordSum):
        out = WordSum({}, None)
        for x, c in a.terms.items():
            for y, d in b.terms.items():
                out = out + shuffle_product(x, y).scale(c * d)
        return out

    U, V, W = (WordSum.word(x) for x in (u, v, w))
    assert prod(prod(U, V), W) == prod(U, prod(V, W))


def test_gamma_two_letters():
    assert gamma(2, "ab").terms == {tuple("abab"): 1}
    assert gamma(3, "ab").terms == {tuple("ababab"): 1}


def test_gamma_two_of_four_letters():
    assert gamma(2, "abcd").terms == GAMMA_2_ABCD


def test_gamma_three_of_four_letters():
    g = gamma(3, "abcd")
    assert len(g) == 53
    assert min(g.terms.values()) == -4 and max(g.terms.values()) == 6


def test_gamma_one_is_identity():
    assert gamma(1, "abcd").terms == {tuple("abcd"): 1}


def test_gamma_odd_length_rejected():
    with pytest.raises(OddLength):
        gamma(2, "abc")


@pytest.mark.parametrize("k,word", [(2, "ab"), (3, "ab"), (2, "abcd"), (2, "aabb"), (3, "aa"),
                                    (2, "abab"), (4, "ab")])
def test_gamma_matches_definition(k, word):
    assert gamma(k, word).terms == brute_gamma(k, word)


@pytest.mark.parametrize("n", [2, 4])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_no_consecutive_repeats(k, n):
    word = "abcd"[:n]
    for term in gamma(k, word).terms:
        assert all(a != b for a, b in zip(term, term[1:]))


@given(st.integers(1, 3), st.lists(st.sampled_from("abcd"), min_size=2, max_size=4)
       .filter(lambda w: len(w) % 2 == 0))
def test_every_term_starts_with_first_letter(k, w):
    assert all(t[0] == w[0] for t in gamma(k, w).terms)


def test_substitution_recollects():
    g = gamma(2, "abcd").substitute({"a": "x", "b": "y", "c": "x", "d": "y"})
    assert g == gamma(2, "xyxy")


def _in_decomposable_span(k, word):
    target = gamma(k, word).scale(factorial(k))
    pattern = sorted(tuple(word) * k)
    orbit = sorted(set(itertools.permutations(pattern)))
    index = {w: i for i, w in enumerate(orbit)}
    rows = []
    for w in orbit:
        for i in range(1, len(w) // 2 + 1):
            rows.append(dict((index[t], c) for t, c in shuffle_product(w[:i], w[i:]).terms.items()))
    D = ExactMatrix(Rationals, len(rows), len(orbit), rows)
    v = {index[t]: c for t, c in target.terms.items()}
    return rank(D) == rank(D.vstack(ExactMatrix(Rationals, 1, len(orbit), [v])))


@pytest.mark.parametrize("k,word", [(2, "ab"), (3, "ab"), (2, "abcd")])
def test_factorial_multiple_is_decomposable(k, word):
    assert _in_decomposable_span(k, word)


def test_format():
    assert format_wordsum(gamma(2, "ab")) == "[a|b|a|b]"
    assert format_wordsum(shuffle_product("a", "b")) == "[a|b] - [b|a]"
    assert format_wordsum(WordSum({}, 2)) == "0"
    assert format_wordsum(gamma(2, "abcd")).startswith("2[a|b|a|b|c|d|c|d]")


def test_decomposable_span_small():
    assert decomposable_span_basis("a", 2) == []
    assert decomposable_span_basis("ab", 1) == []
    spans = decomposable_span_basis("ab", 2)
    assert any(s.terms == {("a", "b"): 1, ("b", "a"): -1} for s in spans)
