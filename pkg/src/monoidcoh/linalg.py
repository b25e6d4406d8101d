"""Exact linear algebra over Z, Q and F_p.

Matrices are sparse (a list of ``{col: value}`` row dicts).  Ranks over
``F_p`` go through the elimination kernels in :mod:`monoidcoh.kernels`;
ranks over ``Q`` (and ``Z``) use fraction-free sparse elimination on integer
rows.  Torsion over ``Z`` comes from the Smith normal form.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import kernels
from .rings import CoefficientRing, Integers, Rationals

# ---------------------------------------------------------------- dense helpers
# (small matrices: module actions, test fixtures)


def dense_identity(ring, n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def dense_zero(ring, rows, cols):
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))


def dense_mul(ring, a, b, cols=None):
    """Product of tuple-of-tuple matrices.  ``cols`` is needed only when
    ``b`` has no rows (its column count is then not recorded)."""
    inner = len(b)
    if cols is None:
        if inner == 0 and a:
            raise ValueError("inner dimension 0: pass cols explicitly")
        cols = len(b[0]) if inner else 0
    out = []
    for r in a:
        if len(r) != inner:
            raise ValueError("shape mismatch in dense_mul")
        row = []
        for j in range(cols):
            s = 0
            for k in range(inner):
                if r[k]:
                    s += r[k] * b[k][j]
            row.append(ring.coerce(s))
        out.append(tuple(row))
    return tuple(out)


def is_zero_dense(a):
    return all(v == 0 for r in a for v in r)


# ---------------------------------------------------------------- matrices


class NotAComplex(ValueError):
    def __init__(self, entry):
        i, j, v = entry
        super().__init__(f"d_out * d_in != 0: entry ({i}, {j}) = {v}")
        self.entry = entry


class ExactMatrix:
    """Sparse exact matrix.  Entries are ring elements; zeros are not stored."""

    __slots__ = ("nrows", "ncols", "ring", "rows")

    def __init__(self, ring: CoefficientRing, nrows: int, ncols: int, rows=None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def from_dense(cls, ring, dense, ncols=None):
        dense = [list(r) for r in dense]
        nrows = len(dense)
        if ncols is None:
            ncols = len(dense[0]) if nrows else 0
        rows = []
        for r in dense:
            if len(r) != ncols:
                raise ValueError("ragged dense matrix")
            d = {}
            for j, v in enumerate(r):
                v = ring.coerce(v)
                if v:
                    d[j] = v
            rows.append(d)
        return cls(ring, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, ring, nrows, columns):
        """Build from a list of sparse column dicts ``{row: value}``."""
        rows = [dict() for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(ring, nrows, len(columns), rows)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, [{i: 1} for i in range(n)])

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def transpose(self):
        return ExactMatrix(self.ring, self.ncols, self.nrows, self.columns())

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        R = self.ring
        out = []
        orows = other.rows
        for r in self.rows:
            acc = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            d = {}
            for j, v in acc.items():
                v = R.coerce(v)
                if v:
                    d[j] = v
            out.append(d)
        return ExactMatrix(R, self.nrows, other.ncols, out)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        rows = []
        for a, b in zip(self.rows, other.rows):
            d = dict(a)
            for j, v in b.items():
                d[j + self.ncols] = v
            rows.append(d)
        return ExactMatrix(self.ring, self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        return ExactMatrix(self.ring, self.nrows + other.nrows, self.ncols,
                           [dict(r) for r in self.rows] + [dict(r) for r in other.rows])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self):
        return all(not r for r in self.rows)

    def first_nonzero(self):
        for i, r in enumerate(self.rows):
            if r:
                j = min(r)
                return (i, j, r[j])
        return None

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"ExactMatrix({self.ring}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def content_hash(self):
        h = hashlib.sha256()
        h.update(f"{self.ring.name}:{self.nrows}:{self.ncols};".encode())
        for i, r in enumerate(self.rows):
            if r:
                h.update(f"{i}:".encode())
                h.update(",".join(f"{j}={r[j]}" for j in sorted(r)).encode())
                h.update(b";")
        return h.hexdigest()


# ---------------------------------------------------------------- results


@dataclass(frozen=True)
class AbelianGroupDescription:
    """A computed (co)homology group.

    Over a field only ``dimension`` is meaningful; over ``Z`` the group is
    ``Z^free_rank`` plus cyclic torsion with invariant factors ``torsion``
    (each dividing the next).
    """

    ring: str
    free_rank: int
    torsion: tuple = field(default=())

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("invariant factors must exceed 1")

    @property
    def dimension(self):
        return self.free_rank

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(self.ring if self.free_rank == 1 else f"{self.ring}^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"ring": self.ring, "free_rank": self.free_rank, "torsion": list(self.torsion),
                "text": str(self)}


# ---------------------------------------------------------------- caching hook

_cache = None
_CACHE_MIN_NNZ = 256


def set_cache(cache):
    """Install an object with ``get(key)`` / ``put(key, value)`` used for
    rank and elementary-divisor lookups (``None`` disables)."""
    global _cache
    previous, _cache = _cache, cache
    return previous


def _cached(kind, M, compute):
    if _cache is None or M.nnz() < _CACHE_MIN_NNZ:
        return compute()
    key = f"{kind}-{M.content_hash()}"
    hit = _cache.get(key)
    if hit is not None:
        return hit
    value = compute()
    _cache.put(key, value)
    return value


# ---------------------------------------------------------------- elimination


def _integer_rows(M):
    """Rows of a Q-matrix scaled to primitive integer rows (same row space)."""
    out = []
    for r in M.rows:
        if not r:
            continue
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        out.append({j: int(v * den) for j, v in r.items()})
    return out


def _rank_integer_sparse(rows):
    basis = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            b = basis.get(c)
            if b is None:
                basis[c] = row
                break
            a, bc = row[c], b[c]
            g = gcd(a, bc)
            ma, mb = bc // g, a // g
            new = {}
            for j, v in row.items():
                new[j] = v * ma
            for j, v in b.items():
                w = new.get(j, 0) - v * mb
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            cont = 0
            for v in new.values():
                cont = gcd(cont, v)
                if cont == 1:
                    break
            if cont > 1:
                new = {j: v // cont for j, v in new.items()}
            row = new
    return len(basis)


def _rank_gf2_bits(M):
    basis = {}
    for r in M.rows:
        x = 0
        for j in r:
            x |= 1 << j
        while x:
            low = (x & -x).bit_length() - 1
            b = basis.get(low)
            if b is None:
                basis[low] = x
                break
            x ^= b
    return len(basis)


def _rank_modp_sparse(rows, p):
    basis = {}
    for row in rows:
        row = {j: v % p for j, v in row.items() if v % p}
        while row:
            c = min(row)
            b = basis.get(c)
            if b is None:
                inv = pow(row[c], -1, p)
                basis[c] = {j: v * inv % p for j, v in row.items()}
                break
            f = row[c]
            for j, v in b.items():
                w = (row.get(j, 0) - f * v) % p
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
    return len(basis)


DENSE_KERNEL_LIMIT = 40_000_000


def rank(M: ExactMatrix) -> int:
    """Exact rank (over Q for integer matrices)."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    return _cached("rank", M, lambda: _rank(M))


def _rank(M):
    R = M.ring
    if R.kind == "F":
        # densify when the compiled kernel is available and the matrix is not too large
        if kernels.BACKEND == "compiled" and R.p < 2 ** 31:
            A = M if M.nrows >= M.ncols else M.transpose()
            if A.nrows * A.ncols <= DENSE_KERNEL_LIMIT:
                rows = [r for r in A.rows if r]
                if not rows:
                    return 0
                return kernels.rank_modp(_densify(rows, A.ncols), A.ncols, R.p)
        if R.p == 2:
            return _rank_gf2_bits(M)
        return _rank_modp_sparse(M.rows, R.p)
    return _rank_integer_sparse(_integer_rows(M))


def _densify(rows, ncols):
    out = []
    for r in rows:
        d = [0] * ncols
        for j, v in r.items():
            d[j] = v
        out.append(d)
    return out


def rref(M: ExactMatrix):
    """Reduced row echelon form over a field: ``(rows, pivots)`` with rows
    as dense lists."""
    R = M.ring
    if not R.is_field:
        raise ValueError("rref needs a field; use smith_normal_form over Z")
    rows = [r for r in M.rows if r]
    if not rows:
        return [], []
    dense = _densify(rows, M.ncols)
    if R.kind == "F":
        if R.p < 2 ** 31:
            return kernels.rref_modp(dense, M.ncols, R.p)
        return kernels._kernels_py.rref_modp(dense, M.ncols, R.p)
    return _rref_rational(dense, M.ncols)


def _rref_rational(a, ncols):
    a = [[Fraction(v) for v in r] for r in a]
    m = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = 1 / row[c]
        for j in range(c, ncols):
            if row[j]:
                row[j] *= inv
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                ai = a[i]
                for j in range(c, ncols):
                    if row[j]:
                        ai[j] -= f * row[j]
        pivots.append(c)
        r += 1
    out = [[v.numerator if v.denominator == 1 else v for v in row] for row in a[:r]]
    return out, pivots


def kernel_basis(M: ExactMatrix):
    """Basis of ``{v : M v = 0}`` as a list of sparse dicts ``{col: value}``.

    Over a field: the standard basis read off the reduced echelon form (over
    ``Q`` each vector is scaled to a primitive integer vector).  Over ``Z``:
    a basis of the saturated lattice ``ker M``.
    """
    R = M.ring
    n = M.ncols
    if R.kind == "Z":
        return _integer_kernel(M)
    red, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = {f: 1}
        for row, c in zip(red, pivots):
            if row[f]:
                v[c] = R.coerce(-row[f])
        if R.kind == "Q":
            v = _primitive(v)
        basis.append(v)
    return basis


def _primitive(v):
    den = 1
    for x in v.values():
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    w = {j: int(x * den) for j, x in v.items()}
    g = 0
    for x in w.values():
        g = gcd(g, x)
    return {j: x // g for j, x in w.items()} if g > 1 else w


def _integer_kernel(M):
    Q = ExactMatrix(Rationals, M.nrows, M.ncols, M.rows)
    red, pivots = rref(Q)
    pivset = set(pivots)
    free = [f for f in range(M.ncols) if f not in pivset]
    integral = all(not isinstance(row[f], Fraction) for row in red for f in free)
    vecs = []
    for f in free:
        v = {f: Fraction(1)}
        for row, c in zip(red, pivots):
            if row[f]:
                v[c] = -Fraction(row[f])
        vecs.append(v)
    if integral:
        return [{j: int(x) for j, x in v.items()} for v in vecs]
    # saturate the lattice spanned by the (scaled) rational basis
    prim = [_primitive(v) for v in vecs]
    B = ExactMatrix.from_columns(Integers, M.ncols, prim)
    diag, U, V, Uinv = smith_normal_form(B, with_inverse=True)
    k = len(diag)
    cols = ExactMatrix.from_dense(Integers, Uinv).columns()
    return [c for c in cols[:k]]


# ---------------------------------------------------------------- Smith form


def smith_normal_form(M: ExactMatrix, with_transforms=True, with_inverse=False):
    """Smith normal form over Z.

    Returns ``(diagonal, U, V)`` with ``U * M * V`` zero except for the
    leading diagonal entries ``diagonal`` (all positive, each dividing the
    next) and ``U``, ``V`` unimodular dense matrices.  ``with_inverse`` adds
    ``U^{-1}`` as a fourth element.  Pivots are chosen by smallest nonzero
    magnitude; ties broken by position, so results are deterministic.
    """
    m, n = M.nrows, M.ncols
    a = M.to_dense()
    a = [[int(v) for v in r] for r in a]
    track = with_transforms or with_inverse
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    Ui = [[int(i == j) for j in range(m)] for i in range(m)] if with_inverse else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def row_add(dst, src, q):  # row[dst] += q * row[src]
        ad, as_ = a[dst], a[src]
        for j in range(n):
            if as_[j]:
                ad[j] += q * as_[j]
        if track:
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]
        if with_inverse:  # U^{-1} gets column[src] -= q * column[dst]
            for r in Ui:
                if r[dst]:
                    r[src] -= q * r[dst]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            U[i], U[j] = U[j], U[i]
        if with_inverse:
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def row_neg(i):
        a[i] = [-v for v in a[i]]
        if track:
            U[i] = [-v for v in U[i]]
        if with_inverse:
            for r in Ui:
                r[i] = -r[i]

    def col_add(dst, src, q):  # col[dst] += q * col[src]
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] += q * r[src]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if track:
            for r in V:
                r[i], r[j] = r[j], r[i]

    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                v = ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        row_swap(t, bi)
        col_swap(t, bj)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    row_add(i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    col_add(j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                # move the smallest remainder in row/column t to the pivot
                cand = [(abs(a[i][t]), 0, i) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), 1, j) for j in range(t + 1, n) if a[t][j]]
                _, kind, k = min(cand)
                if kind == 0:
                    row_swap(t, k)
                else:
                    col_swap(t, k)
                continue
            # divisibility of the trailing block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)
        diag.append(a[t][t])
        t += 1
    out = [diag]
    if with_transforms:
        out += [U, V]
    if with_inverse:
        if not with_transforms:
            out += [None, None]
        out.append(Ui)
    return tuple(out) if len(out) > 1 else (diag,)


def elementary_divisors(M: ExactMatrix):
    """Nonzero Smith diagonal of an integer matrix."""
    if M.nrows == 0 or M.ncols == 0 or M.is_zero():
        return []
    return _cached("snf", M, lambda: smith_normal_form(M, with_transforms=False)[0])


# ---------------------------------------------------------------- homology


def check_complex(d_in: ExactMatrix, d_out: ExactMatrix):
    if d_out.ncols != d_in.nrows:
        raise ValueError(f"maps do not compose: {d_in.shape} then {d_out.shape}")
    prod = d_out @ d_in
    bad = prod.first_nonzero()
    if bad is not None:
        raise NotAComplex(bad)


def homology_at(d_in: ExactMatrix, d_out: ExactMatrix, check=True) -> AbelianGroupDescription:
    """``ker(d_out) / im(d_in)`` for composable maps with ``d_out * d_in = 0``."""
    if check:
        check_complex(d_in, d_out)
    return group_from_ranks(d_in.ring, d_in.nrows, d_in, d_out)


def group_from_ranks(ring, dim, d_in, d_out):
    """Homology from ranks; ``d_in`` lands in, and ``d_out`` starts from, a
    free module of rank ``dim`` (over Z, the image of ``d_in`` must lie in a
    direct summand containing ``ker d_out`` -- true for saturated subspaces)."""
    r_out = rank(d_out) if d_out is not None else 0
    r_in = rank(d_in) if d_in is not None else 0
    free = dim - r_out - r_in
    torsion = ()
    if ring.kind == "Z" and d_in is not None:
        torsion = tuple(t for t in elementary_divisors(d_in) if t > 1)
    return AbelianGroupDescription(ring.name, free, torsion)
