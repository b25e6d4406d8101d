"""Slow, independent reference implementations used only by the tests."""

import itertools
from fractions import Fraction


def inversion_sign(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def brute_shuffles(i, j):
    n = i + j
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        a = [v for v in p if v <= i]
        b = [v for v in p if v > i]
        if a == sorted(a) and b == sorted(b):
            out.append(p)
    return sorted(out)


def brute_monotone(k, n):
    out = []
    for p in itertools.permutations(range(1, n + 1)):
        if p[0] != k:
            continue
        low = [v for v in p if v <= k]
        high = [v for v in p if v > k]
        if low == sorted(low, reverse=True) and high == sorted(high):
            dr = sum(p.index(v) + 1 for v in range(1, k))
            out.append((p, dr))
    return sorted(out)


def brute_block_shuffles(k, n, ordered=True):
    out = []
    for p in itertools.permutations(range(1, k * n + 1)):
        ok = True
        for b in range(k):
            block = [v for v in p if b * n < v <= (b + 1) * n]
            if block != sorted(block):
                ok = False
                break
        if not ok:
            continue
        if ordered:
            heads = [p.index(b * n + 1) for b in range(k)]
            if heads != sorted(heads):
                continue
        out.append(p)
    return sorted(out)


def brute_gamma(k, word):
    """Divided power straight from the definition, via the slow families."""
    n = len(word)
    rep = tuple(word) * k
    out = {}
    for p in brute_block_shuffles(k, n):
        t = tuple(rep[i - 1] for i in p)
        out[t] = out.get(t, 0) + inversion_sign(p)
    return {t: c for t, c in out.items() if c}


def apply_differential(X, M, s, n, p=None):
    """Evaluate ``(ds)`` on every (n+1)-tuple of non-identity elements.

    ``s`` maps n-tuples to value vectors (missing = zero); arithmetic is
    over Q, reduced mod ``p`` when given.
    """
    letters = list(X.nonidentity())
    out = {}

    def val(t):
        r = M.rank_of(X.sum(t))
        return s.get(t, (0,) * r)

    def push(y, x, vec):
        m = M.action_of(y, x)
        return tuple(sum(Fraction(m[a][b]) * vec[b] for b in range(len(vec))) for a in range(len(m)))

    for t in itertools.product(letters, repeat=n + 1):
        d = X.sum(t)
        acc = [Fraction(0)] * M.rank_of(d)
        first = push(t[0], X.sum(t[1:]), val(t[1:]))
        last = push(t[-1], X.sum(t[:-1]), val(t[:-1]))
        for a in range(len(acc)):
            acc[a] += first[a] + (-1) ** (n + 1) * last[a]
        for i in range(1, n + 1):
            merged = X.add(t[i - 1], t[i])
            if X.is_identity(merged):
                continue
            v = val(t[:i - 1] + (merged,) + t[i + 1:])
            for a in range(len(acc)):
                acc[a] += (-1) ** i * v[a]
        if p is not None:
            acc = [int(v) % p for v in acc]
        out[t] = tuple(acc)
    return out


def gf2_homology_brute(n, d_in, d_out):
    """``dim ker(d_out)/im(d_in)`` at a space of dimension ``n`` over F2,
    enumerating every vector.

    Matrices are lists of rows of 0/1 ints; feasible for n <= 12.
    """

    def apply(m, v):
        return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % 2 for i in range(len(m)))

    vectors = list(itertools.product((0, 1), repeat=n))
    kernel = [v for v in vectors if not any(apply(d_out, v))] if d_out else vectors
    if d_in and d_in[0]:
        image = {apply(d_in, u) for u in itertools.product((0, 1), repeat=len(d_in[0]))}
    else:
        image = {tuple([0] * n)}
    ker_dim = len(kernel).bit_length() - 1
    im_dim = len(image).bit_length() - 1
    return ker_dim - im_dim


def explicit_conditions(n, t):
    """Explicit symmetry conditions per dimension as ``{tuple: coeff}``
    dicts on a tuple ``t`` of letters (dimension 4 includes the Barr
    condition)."""
    if n == 2:
        a, b = t
        return [_collect([((a, b), 1), ((b, a), -1)])]
    if n == 3:
        a, b, c = t
        return [_collect([((a, b, c), 1), ((c, b, a), 1)]),
                _collect([((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1)])]
    if n == 4:
        a, b, c, d = t
        return [_collect([((a, b, c, d), 1), ((b, a, c, d), -1), ((b, c, a, d), 1), ((b, c, d, a), -1)]),
                _collect([((a, b, c, d), 1), ((d, c, b, a), 1)]),
                _collect([((a, b, b, a), 1)])]
    raise ValueError(n)


def _collect(pairs):
    out = {}
    for w, c in pairs:
        out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}
