# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p elimination kernels (see ``_kernels_py`` for the reference)."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef i64* _load(rows, Py_ssize_t m, Py_ssize_t n, i64 p) except NULL:
    cdef i64* a = <i64*> malloc(max(m * n, 1) * sizeof(i64))
    cdef Py_ssize_t i, j
    cdef i64 v
    if a == NULL:
        raise MemoryError()
    for i in range(m):
        r = rows[i]
        for j in range(n):
            v = r[j] % p
            a[i * n + j] = v
    return a


cdef Py_ssize_t _eliminate(i64* a, Py_ssize_t m, Py_ssize_t n, i64 p, bint full, list pivots):
    cdef Py_ssize_t r = 0, c, i, j, piv, lo
    cdef i64 inv, f
    cdef i64* tmp = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef i64* row
    cdef i64* ai
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i * n + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            memcpy(tmp, a + r * n, n * sizeof(i64))
            memcpy(a + r * n, a + piv * n, n * sizeof(i64))
            memcpy(a + piv * n, tmp, n * sizeof(i64))
        row = a + r * n
        inv = _inv(row[c], p)
        if inv != 1:
            for j in range(c, n):
                row[j] = row[j] * inv % p
        lo = 0 if full else r + 1
        for i in range(lo, m):
            if i == r:
                continue
            ai = a + i * n
            f = ai[c]
            if f != 0:
                f = p - f
                for j in range(c, n):
                    if row[j] != 0:
                        ai[j] = (ai[j] + f * row[j]) % p
        pivots.append(c)
        r += 1
    free(tmp)
    return r


def rref_modp(rows, Py_ssize_t ncols, i64 p):
    """Reduced row echelon form over F_p; returns ``(reduced_rows, pivots)``."""
    cdef Py_ssize_t m = len(rows), i, j, r
    cdef i64* a = _load(rows, m, ncols, p)
    cdef list pivots = []
    try:
        r = _eliminate(a, m, ncols, p, True, pivots)
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(a)
    return out, pivots


def rank_modp(rows, Py_ssize_t ncols, i64 p):
    cdef Py_ssize_t m = len(rows), r
    cdef i64* a = _load(rows, m, ncols, p)
    cdef list pivots = []
    try:
        r = _eliminate(a, m, ncols, p, False, pivots)
    finally:
        free(a)
    return r
