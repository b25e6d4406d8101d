"""Shuffles, k-monotone permutations and ordered block shuffles.

A permutation is its image sequence ``(s(1), ..., s(n))`` read as an
ordering of ``1..n``; a cochain composed with it is
``(f o s)(a_1, ..., a_n) = f(a_{s(1)}, ..., a_{s(n)})``.  Every family is
returned in lexicographic order of image sequences.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations


def sign(perm) -> int:
    """Parity sign of an image sequence (values ``1..n``)."""
    n = len(perm)
    seen = [False] * (n + 1)
    s = 1
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j - 1]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def is_permutation(seq) -> bool:
    return sorted(seq) == list(range(1, len(seq) + 1))


def _interleavings(blocks):
    """All merges of the given increasing sequences, lexicographic."""
    out = []
    n = sum(len(b) for b in blocks)
    pos = [0] * len(blocks)
    cur = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        # candidates are the next element of each block; visit in value order
        cands = sorted((blocks[i][pos[i]], i) for i in range(len(blocks)) if pos[i] < len(blocks[i]))
        for v, i in cands:
            cur.append(v)
            pos[i] += 1
            rec()
            pos[i] -= 1
            cur.pop()

    rec()
    return out


@lru_cache(maxsize=None)
def shuffles(i: int, j: int):
    """The ``(i, j)``-shuffles: orderings keeping ``1..i`` and ``i+1..i+j``
    each in increasing order."""
    return _interleavings([list(range(1, i + 1)), list(range(i + 1, i + j + 1))])


def is_shuffle(perm, i) -> bool:
    first = [v for v in perm if v <= i]
    second = [v for v in perm if v > i]
    return first == sorted(first) and second == sorted(second)


@lru_cache(maxsize=None)
def monotone(k: int, n: int):
    """``k``-monotone permutations of ``n`` with their ``dr`` statistic.

    The sequence starts with ``k``; ``1..k`` appear in decreasing order and
    ``k+1..n`` in increasing order.  ``dr`` is the sum of the (1-based)
    positions of ``1, ..., k-1``.
    """
    if not 1 <= k <= n:
        raise ValueError("monotone(k, n) needs 1 <= k <= n")
    out = []
    rest = n - 1
    low = list(range(k - 1, 0, -1))
    high = list(range(k + 1, n + 1))
    for slots in combinations(range(rest), k - 1):
        seq = [0] * rest
        slot_set = set(slots)
        li = hi = 0
        for s in range(rest):
            if s in slot_set:
                seq[s] = low[li]
                li += 1
            else:
                seq[s] = high[hi]
                hi += 1
        perm = (k,) + tuple(seq)
        dr = sum(s + 2 for s in slots)
        out.append((perm, dr))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def ordered_block_shuffles(k: int, n: int, ordered: bool = True):
    """Shuffles of ``k`` consecutive blocks of size ``n`` in ``Sigma_{kn}``.

    With ``ordered`` (the default) only those where the first elements of
    the blocks appear in block order are kept.
    """
    blocks = [list(range(b * n + 1, (b + 1) * n + 1)) for b in range(k)]
    allp = _interleavings(blocks)
    if not ordered:
        return tuple(allp)
    return tuple(p for p in allp if leading_terms_in_order(p, k, n))


def leading_terms_in_order(perm, k, n) -> bool:
    heads = [b * n + 1 for b in range(k)]
    where = {v: i for i, v in enumerate(perm)}
    return all(where[heads[b]] < where[heads[b + 1]] for b in range(k - 1))
