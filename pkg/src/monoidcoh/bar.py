"""Bar words, the signed shuffle product, and divided powers.

A bar word ``[a_1|...|a_n]`` is a tuple of letters (any hashable, sortable
values: strings in universal expansions, monoid elements in cochain
conditions).  A :class:`WordSum` is a finite integer combination of words of
equal length.
"""

from __future__ import annotations

from functools import lru_cache

from .perms import ordered_block_shuffles, shuffles, sign


class OddLength(ValueError):
    pass


class WordSum:
    """Integer combination of equal-length bar words; zero terms dropped."""

    __slots__ = ("terms", "length")

    def __init__(self, terms=None, length=None):
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if length is None:
                length = len(w)
            elif len(w) != length:
                raise ValueError("WordSum terms must have equal length")
            if c:
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}
        self.length = length

    @classmethod
    def word(cls, w, coeff=1):
        return cls({tuple(w): coeff}, len(w))

    def items(self):
        """Terms sorted lexicographically by word."""
        return sorted(self.terms.items(), key=lambda t: _sort_key(t[0]))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, WordSum) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return WordSum(out, self.length if self.length is not None else other.length)

    def __neg__(self):
        return WordSum({w: -c for w, c in self.terms.items()}, self.length)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return WordSum({w: k * c for w, c in self.terms.items()}, self.length)

    def substitute(self, mapping):
        """Replace each letter ``x`` by ``mapping[x]`` and recollect."""
        out = {}
        for w, c in self.terms.items():
            v = tuple(mapping[x] for x in w)
            out[v] = out.get(v, 0) + c
        return WordSum(out, self.length)

    def coefficients(self):
        return [c for _, c in self.items()]

    def __repr__(self):
        return f"WordSum({format_wordsum(self)})"


def _sort_key(w):
    return tuple((type(x).__name__, x) for x in w)


def format_word(w) -> str:
    return "[" + "|".join(str(x) for x in w) + "]"


def format_wordsum(ws: WordSum) -> str:
    """Bar notation, e.g. ``[a|b|c|d] - [a|b|a|c] + 2[a|b|a|b]``."""
    if not ws:
        return "0"
    parts = []
    for i, (w, c) in enumerate(ws.items()):
        mag = abs(c)
        body = ("" if mag == 1 else str(mag)) + format_word(w)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def act(word, perm):
    """``word o perm``: the word whose ``p``-th letter is ``word[perm[p]-1]``."""
    return tuple(word[i - 1] for i in perm)


def shuffle_product(u, v) -> WordSum:
    """Signed shuffle product ``u * v`` of two bar words."""
    u, v = tuple(u), tuple(v)
    w = u + v
    out = {}
    for perm, s in _signed_shuffles(len(u), len(v)):
        t = act(w, perm)
        out[t] = out.get(t, 0) + s
    return WordSum(out, len(w))


@lru_cache(maxsize=None)
def _signed_shuffles(i, j):
    return tuple((p, sign(p)) for p in shuffles(i, j))


@lru_cache(maxsize=None)
def _universal_gamma(k, n):
    """``gamma_k`` of the word ``(0, 1, ..., n-1)`` as a dict of position words."""
    word = tuple(range(n)) * k
    out = {}
    for perm in ordered_block_shuffles(k, n):
        t = act(word, perm)
        out[t] = out.get(t, 0) + sign(perm)
    return {t: c for t, c in out.items() if c}


def gamma(k: int, word) -> WordSum:
    """Divided power ``gamma_k`` of an even-length word.

    Sum over ordered block shuffles of the ``k``-fold repetition of
    ``word``, signed, with like terms collected (so repeated letters in
    ``word`` may produce larger coefficients).
    """
    word = tuple(word)
    n = len(word)
    if n % 2:
        raise OddLength(f"gamma needs an even-length word, got length {n}")
    if k < 1:
        raise ValueError("gamma needs k >= 1")
    out = {}
    for t, c in _universal_gamma(k, n).items():
        v = tuple(word[i] for i in t)
        out[v] = out.get(v, 0) + c
    return WordSum(out, k * n)


def decomposable_span_basis(alphabet, n):
    """Spanning set of the degree-``n`` shuffle decomposables over
    ``alphabet``: every nonzero ``u * v`` with ``|u| + |v| = n``."""
    from itertools import product

    alphabet = sorted(set(alphabet), key=lambda x: (type(x).__name__, x))
    seen = set()
    out = []
    for i in range(1, n):
        for u in product(alphabet, repeat=i):
            for v in product(alphabet, repeat=n - i):
                ws = shuffle_product(u, v)
                if not ws:
                    continue
                key = tuple(ws.items())
                neg = tuple((w, -c) for w, c in key)
                if key in seen or neg in seen:
                    continue
                seen.add(key)
                out.append(ws)
    return out
