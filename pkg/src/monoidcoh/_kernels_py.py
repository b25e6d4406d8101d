"""Pure-Python versions of the mod-p elimination kernels.

Same API as the compiled ``_kernels`` extension; selected by
``monoidcoh.kernels`` when the extension is not built.
"""


def rref_modp(rows, ncols, p):
    """Reduced row echelon form of a dense matrix over ``F_p``.

    ``rows`` is a list of equal-length integer lists (not modified).
    Returns ``(reduced, pivots)`` with only the nonzero rows kept.
    """
    a = [[v % p for v in r] for r in rows]
    m = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            for j in range(c, ncols):
                row[j] = row[j] * inv % p
        for i in range(m):
            if i != r:
                f = a[i][c]
                if f:
                    ai = a[i]
                    for j in range(c, ncols):
                        if row[j]:
                            ai[j] = (ai[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_modp(rows, ncols, p):
    a = [[v % p for v in r] for r in rows]
    m = len(a)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = pow(row[c], -1, p)
        for i in range(r + 1, m):
            f = a[i][c]
            if f:
                f = f * inv % p
                ai = a[i]
                for j in range(c, ncols):
                    if row[j]:
                        ai[j] = (ai[j] - f * row[j]) % p
        r += 1
    return r
