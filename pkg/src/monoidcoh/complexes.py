"""Hochschild, Harrison and Barr cochain complexes of a graded monoid algebra.

An ``n``-cochain of ``K~X`` with coefficients in a left Beck module ``M``
assigns to every ``n``-tuple ``(x_1, ..., x_n)`` of monoid elements a value
in ``M_{x_1 + ... + x_n}``; the differential is

    (ds)(x_1..x_{n+1}) = (x_1)_* s(x_2..x_{n+1})
                         + sum_i (-1)^i s(.., x_i + x_{i+1}, ..)
                         + (-1)^{n+1} (x_{n+1})_* s(x_1..x_n).

Harrison cochains are the cochains killing shuffle decomposables; Barr
cochains additionally kill every evaluated divided power ``gamma_k(w)``,
``k >= 2``, ``|w|`` even.  Both conditions only relate a tuple to its
rearrangements, so the subspaces are computed one multiset of entries at a
time (cached per multiplicity pattern) and tensored with ``M_d``.

A complex is built either on all tuples (``degree=None``, finite monoids
only) or on the tuples of one internal degree.  A degree slice is exact
when the module does not move degrees; otherwise the slice is that of the
associated graded module (see :meth:`BeckModule.graded_part`).
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass
from functools import lru_cache

from .bar import act, gamma
from .linalg import (AbelianGroupDescription, ExactMatrix, NotAComplex, elementary_divisors,
                     group_from_ranks, kernel_basis, rank, smith_normal_form)
from .monoid import DegreeRequired, FunctorialityViolation
from .perms import monotone, shuffles, sign
from .rings import Integers

THEORIES = ("hochschild", "harrison", "barr")
MODES = ("shuffle", "monotone", "monotone_minimal")
DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    pass


class InternalAssertion(RuntimeError):
    """Raised when a built complex fails d^2 = 0 or subspace closure."""


class SliceError(ValueError):
    """The module moves degrees in a way no graded slice can represent."""


@dataclass(frozen=True)
class TupleBasis:
    n: int
    degree: object
    tuples: tuple
    normalized: bool

    def __len__(self):
        return len(self.tuples)


class CochainSpace:
    """Coordinates of ``C^n``: one block ``M_{sum t}`` per basis tuple ``t``."""

    def __init__(self, basis: TupleBasis, module, sums):
        self.basis = basis
        self.module = module
        self.sums = sums
        self.offsets = {}
        off = 0
        for t, s in zip(basis.tuples, sums):
            self.offsets[t] = off
            off += module.rank_of(s)
        self.total_rank = off

    def block(self, t):
        i = self.offsets.get(t)
        if i is None:
            return None
        return i


def minimal_monotone_ks(n):
    """Reduced monotone condition set: ``k = n`` plus the smaller member of
    each pair ``{k, n+1-k}``, i.e. ``2..floor((n+1)/2)``."""
    if n < 2:
        return ()
    return tuple(sorted({n} | set(range(2, (n + 1) // 2 + 1))))


def _perm_inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


@lru_cache(maxsize=None)
def _signed_family(kind, a, b, convention):
    if kind == "shuffle":
        fam = [(p, sign(p)) for p in shuffles(a, b)]
    else:
        fam = [(p, -1 if dr % 2 else 1) for p, dr in monotone(a, b)]
    if convention == "inverse":
        fam = [(_perm_inverse(p), s) for p, s in fam]
    return tuple(fam)


def condition_rows(word_list, index, n, theory, mode, convention="direct"):
    """Linear conditions (as ``{position: coeff}`` dicts) on cochain values
    over one orbit of rearrangements."""
    rows = []
    if theory == "hochschild" or n < 2:
        return rows
    for t in word_list:
        if mode == "shuffle":
            for i in range(1, n // 2 + 1):
                row = {}
                for p, s in _signed_family("shuffle", i, n - i, convention):
                    j = index[act(t, p)]
                    row[j] = row.get(j, 0) + s
                rows.append(row)
        else:
            ks = range(2, n + 1) if mode == "monotone" else minimal_monotone_ks(n)
            for k in ks:
                row = {index[t]: 1}
                for p, s in _signed_family("monotone", k, n, convention):
                    j = index[act(t, p)]
                    row[j] = row.get(j, 0) - s
                rows.append(row)
    return [{j: c for j, c in r.items() if c} for r in rows]


def barr_rows(pattern, index, n):
    """``s(gamma_k(w)) = 0`` for every ``w`` whose ``k``-fold repetition is a
    rearrangement of ``pattern`` (``k >= 2``, ``|w| = n/k`` even)."""
    rows = []
    counts = {}
    for x in pattern:
        counts[x] = counts.get(x, 0) + 1
    for k in range(2, n + 1):
        if n % k or (n // k) % 2:
            continue
        if any(c % k for c in counts.values()):
            continue
        base = []
        for x in sorted(counts):
            base += [x] * (counts[x] // k)
        for w in sorted(set(itertools.permutations(base))):
            row = {}
            for term, c in gamma(k, w).terms.items():
                j = index[term]
                row[j] = row.get(j, 0) + c
            row = {j: c for j, c in row.items() if c}
            if row:
                rows.append(row)
    return rows


@lru_cache(maxsize=None)
def orbit_subspace(pattern, theory, mode, ring, convention="direct"):
    """Kernel of the symmetry conditions on the rearrangements of
    ``pattern`` (a sorted tuple of canonical labels).

    Returns ``(arrangements, basis)``, basis vectors as dicts over
    arrangement positions.
    """
    n = len(pattern)
    words = sorted(set(itertools.permutations(pattern)))
    index = {w: i for i, w in enumerate(words)}
    rows = condition_rows(words, index, n, theory, mode, convention)
    if theory == "barr":
        rows += barr_rows(pattern, index, n)
    if not rows:
        return tuple(words), tuple({i: 1} for i in range(len(words)))
    M = ExactMatrix(ring, len(rows), len(words), [{j: ring.coerce(c) for j, c in r.items()} for r in rows])
    return tuple(words), tuple(kernel_basis(M))


@lru_cache(maxsize=None)
def orbit_conditions(pattern, theory, mode, ring):
    n = len(pattern)
    words = sorted(set(itertools.permutations(pattern)))
    index = {w: i for i, w in enumerate(words)}
    rows = condition_rows(words, index, n, theory, mode)
    if theory == "barr":
        rows += barr_rows(pattern, index, n)
    return tuple(words), tuple(rows)


def _canonical(multiset):
    """Relabel a sorted multiset to ``0, 1, ...`` in order of first value."""
    labels = {}
    for x in multiset:
        if x not in labels:
            labels[x] = len(labels)
    inverse = {v: k for k, v in labels.items()}
    return tuple(labels[x] for x in multiset), inverse


class CochainComplexSlice:
    """Cochain complex of ``K~X`` with coefficients in ``M`` for one
    internal degree (or all tuples), with Harrison/Barr subspaces."""

    def __init__(self, X, M, theory="harrison", degree=None, normalized=True,
                 mode="shuffle", budget=DEFAULT_BUDGET):
        if theory not in THEORIES:
            raise ValueError(f"unknown theory {theory!r}")
        if mode not in MODES:
            raise ValueError(f"unknown symmetry mode {mode!r}")
        if degree is None and not X.is_finite:
            raise DegreeRequired("infinite monoids need an internal degree")
        if degree is not None and not X.contains(degree):
            raise ValueError(f"degree {degree!r} is not an element of {X.name}")
        self.X = X
        self.ring = M.ring
        self.theory = theory
        self.mode = mode
        self.degree = degree
        self.normalized = normalized
        self.budget = budget
        self.graded = False
        if degree is not None and not M.is_degree_preserving():
            try:
                M = M.graded_part()
            except FunctorialityViolation as exc:
                raise SliceError(f"{M.name} over {X.name} cannot be sliced by degree "
                                 f"({exc}); use degree=None") from exc
            self.graded = True
        self.M = M
        self._spaces = {}
        self._diffs = {}
        self._subs = {}

    # -- spaces

    def space(self, n) -> CochainSpace:
        if n not in self._spaces:
            _precheck(self.X, self.M, n, self.degree, self.normalized, self.budget, "C^")
            if n < 0:
                tuples = ()
            else:
                tuples = tuple(self.X.tuples(n, self.degree, self.normalized))
            sums = [self.X.sum(t) for t in tuples]
            sp = CochainSpace(TupleBasis(n, self.degree, tuples, self.normalized), self.M, sums)
            if sp.total_rank > self.budget:
                raise BudgetExceeded(f"C^{n} has total rank {sp.total_rank} > budget {self.budget}")
            self._spaces[n] = sp
        return self._spaces[n]

    def differential(self, n) -> ExactMatrix:
        """Matrix of ``d: C^n -> C^{n+1}``."""
        if n in self._diffs:
            return self._diffs[n]
        X, M, R = self.X, self.M, self.ring
        src, tgt = self.space(n), self.space(n + 1)
        rows = [dict() for _ in range(tgt.total_rank)]
        if n >= 0:
            for t, d in zip(tgt.basis.tuples, tgt.sums):
                r0 = tgt.offsets[t]
                rd = M.rank_of(d)
                if rd == 0:
                    continue
                # outer faces
                for sgn, y, rest in ((1, t[0], t[1:]), ((-1) ** (n + 1), t[-1], t[:-1])):
                    c0 = src.block(rest)
                    if c0 is None:
                        continue
                    mat = M.action_of(y, X.sum(rest))
                    for a in range(rd):
                        row = rows[r0 + a]
                        for b, v in enumerate(mat[a]):
                            if v:
                                row[c0 + b] = row.get(c0 + b, 0) + sgn * v
                # inner faces
                for i in range(1, n + 1):
                    merged = X.add(t[i - 1], t[i])
                    if self.normalized and X.is_identity(merged):
                        continue
                    c0 = src.block(t[:i - 1] + (merged,) + t[i + 1:])
                    if c0 is None:
                        continue
                    s = -1 if i % 2 else 1
                    for a in range(rd):
                        row = rows[r0 + a]
                        row[c0 + a] = row.get(c0 + a, 0) + s
        clean = []
        for r in rows:
            d = {}
            for j, v in r.items():
                v = R.coerce(v)
                if v:
                    d[j] = v
            clean.append(d)
        D = ExactMatrix(R, tgt.total_rank, src.total_rank, clean)
        self._diffs[n] = D
        return D

    def _orbits(self, n):
        sp = self.space(n)
        groups = {}
        for t, s in zip(sp.basis.tuples, sp.sums):
            key = tuple(sorted(t, key=_key))
            groups.setdefault(key, []).append((t, s))
        return sp, [(k, groups[k]) for k in sorted(groups, key=lambda k: tuple(map(_key, k)))]

    def subspace(self, n, mode=None, convention="direct") -> ExactMatrix:
        """Inclusion matrix (columns = basis) of the theory's cochains in
        ``C^n``.  For Hochschild this is the identity."""
        mode = mode or self.mode
        key = (n, mode, convention)
        if key in self._subs:
            return self._subs[key]
        sp = self.space(n)
        theory = self.theory
        if theory != "hochschild" and n <= 0:
            B = ExactMatrix(self.ring, sp.total_rank, 0)
        elif theory == "hochschild":
            B = ExactMatrix.identity(self.ring, sp.total_rank)
        else:
            cols = []
            sp, orbits = self._orbits(n)
            for multiset, members in orbits:
                pattern, inverse = _canonical(multiset)
                words, basis = orbit_subspace(pattern, theory, mode, self.ring, convention)
                s = members[0][1]
                r = self.M.rank_of(s)
                offs = [sp.offsets[tuple(inverse[c] for c in w)] for w in words]
                for v in basis:
                    for a in range(r):
                        cols.append({offs[i] + a: c for i, c in v.items()})
            B = ExactMatrix.from_columns(self.ring, sp.total_rank, cols)
        self._subs[key] = B
        return B

    def conditions(self, n) -> ExactMatrix:
        """The theory's condition matrix on ``C^n`` (kernel = subspace)."""
        sp = self.space(n)
        rows = []
        if self.theory != "hochschild" and n >= 2:
            sp, orbits = self._orbits(n)
            for multiset, members in orbits:
                pattern, inverse = _canonical(multiset)
                words, crow = orbit_conditions(pattern, self.theory, self.mode, self.ring)
                r = self.M.rank_of(members[0][1])
                offs = [sp.offsets[tuple(inverse[c] for c in w)] for w in words]
                for row in crow:
                    for a in range(r):
                        rows.append({offs[i] + a: self.ring.coerce(c) for i, c in row.items()})
        elif self.theory != "hochschild" and n <= 0:
            rows = [{j: 1} for j in range(sp.total_rank)]
        return ExactMatrix(self.ring, len(rows), sp.total_rank,
                           [{j: c for j, c in r.items() if c} for r in rows])

    # -- cohomology

    def restricted(self, n) -> ExactMatrix:
        """``d^n`` applied to the subspace basis (in ambient coordinates)."""
        return self.differential(n) @ self.subspace(n)

    def cohomology(self, n) -> AbelianGroupDescription:
        if n < 0:
            return AbelianGroupDescription(self.ring.name, 0)
        B = self.subspace(n)
        d_out = self.restricted(n)
        d_in = self.restricted(n - 1) if n >= 1 else None
        return group_from_ranks(self.ring, B.ncols, d_in, d_out)

    def dim_kernel(self, n):
        return self.subspace(n).ncols - rank(self.restricted(n))

    def verify(self, n):
        """Check ``d^{n+1} d^n = 0`` and that ``d`` maps the subspace at
        ``n`` into the subspace at ``n+1``."""
        sq = self.differential(n + 1) @ self.differential(n)
        bad = sq.first_nonzero()
        if bad is not None:
            raise InternalAssertion(f"d^2 != 0 at n={n}: entry {bad}")
        if self.theory != "hochschild":
            img = self.conditions(n + 1) @ self.restricted(n)
            bad = img.first_nonzero()
            if bad is not None:
                raise InternalAssertion(f"{self.theory} subspace not closed at n={n}: entry {bad}")
        return True


def total_rank_estimate(X, M, n, degree, normalized):
    """Exact total rank of ``C^n`` without enumerating tuples (``None`` when
    no cheap count is available)."""
    if n < 0:
        return 0
    if not X.is_finite:
        if X.rank != 1:
            return None
        if n == 0:
            count = 1 if degree == 0 else 0
        elif normalized:
            count = comb(degree - 1, n - 1) if degree >= 1 else 0
        else:
            count = comb(degree + n - 1, n - 1)
        return count * M.rank_of(degree)
    letters = X.nonidentity() if normalized else X.elements()
    ways = {X.identity: 1}
    for _ in range(n):
        nxt = {}
        for s, c in ways.items():
            for x in letters:
                z = X.add(s, x)
                nxt[z] = nxt.get(z, 0) + c
        ways = nxt
    if degree is not None:
        return ways.get(degree, 0) * M.rank_of(degree)
    return sum(c * M.rank_of(s) for s, c in ways.items())


def _precheck(X, M, n, degree, normalized, budget, label):
    est = total_rank_estimate(X, M, n, degree, normalized)
    if est is not None and est > budget:
        raise BudgetExceeded(f"{label}{n} has total rank {est} > budget {budget}")


def _key(x):
    return x if isinstance(x, tuple) else (x,)


def build_hochschild_slice(X, M, degree=None, n_max=None, normalized=True, budget=DEFAULT_BUDGET):
    """Hochschild slice, verified through ``n_max`` when given."""
    s = CochainComplexSlice(X, M, "hochschild", degree, normalized, budget=budget)
    if n_max is not None:
        for n in range(-1, n_max + 1):
            s.verify(n)
    return s


def harrison_subspace(slice_, n, mode="shuffle"):
    if slice_.theory == "hochschild":
        slice_ = CochainComplexSlice(slice_.X, slice_.M, "harrison", slice_.degree,
                                     slice_.normalized, mode, slice_.budget)
    return slice_.subspace(n, mode)


def barr_subspace(slice_, n):
    if slice_.theory != "barr":
        slice_ = CochainComplexSlice(slice_.X, slice_.M, "barr", slice_.degree,
                                     slice_.normalized, slice_.mode, slice_.budget)
    return slice_.subspace(n)


def cohomology(X, M, theory, n, degree=None, mode="shuffle", normalized=True,
               budget=DEFAULT_BUDGET) -> AbelianGroupDescription:
    return CochainComplexSlice(X, M, theory, degree, normalized, mode, budget).cohomology(n)


def same_span(A: ExactMatrix, B: ExactMatrix) -> bool:
    """Equal column spans (over the matrices' ring, or Q for Z)."""
    ra, rb = rank(A), rank(B)
    return ra == rb and rank(A.hstack(B)) == ra


# ---------------------------------------------------------------- chain level


class ChainComplexSlice:
    """Hochschild and Harrison chains with coefficients in a right module.

    ``C_n`` has one block ``M^{sum t}`` per tuple ``t``; the boundary is
    ``phi(m, x_1) [x_2..] + sum_i (-1)^i m [.., x_i + x_{i+1}, ..]
    + (-1)^n phi(m, x_n) [..x_{n-1}]``.  Harrison chains are the quotient by
    the shuffle decomposables.
    """

    def __init__(self, X, M, degree=None, normalized=True, budget=DEFAULT_BUDGET):
        if M.side != "right":
            raise ValueError("chain complexes take a right Beck module")
        if degree is None and not X.is_finite:
            raise DegreeRequired("infinite monoids need an internal degree")
        self.X = X
        self.ring = M.ring
        self.degree = degree
        self.normalized = normalized
        self.graded = False
        if degree is not None and not M.is_degree_preserving():
            try:
                M = M.graded_part()
            except FunctorialityViolation as exc:
                raise SliceError(f"{M.name} over {X.name} cannot be sliced by degree") from exc
            self.graded = True
        self.M = M
        self._spaces = {}
        self.budget = budget

    def space(self, n) -> CochainSpace:
        if n not in self._spaces:
            _precheck(self.X, self.M, n, self.degree, self.normalized, self.budget, "C_")
            tuples = () if n < 0 else tuple(self.X.tuples(n, self.degree, self.normalized))
            sums = [self.X.sum(t) for t in tuples]
            sp = CochainSpace(TupleBasis(n, self.degree, tuples, self.normalized), self.M, sums)
            if sp.total_rank > self.budget:
                raise BudgetExceeded(f"C_{n} has total rank {sp.total_rank} > budget {self.budget}")
            self._spaces[n] = sp
        return self._spaces[n]

    def boundary(self, n) -> ExactMatrix:
        """Matrix of ``C_n -> C_{n-1}``."""
        X, M, R = self.X, self.M, self.ring
        src, tgt = self.space(n), self.space(n - 1)
        rows = [dict() for _ in range(tgt.total_rank)]
        if n >= 1:
            for t, d in zip(src.basis.tuples, src.sums):
                c0 = src.offsets[t]
                rd = M.rank_of(d)
                if rd == 0:
                    continue
                for sgn, y, rest in ((1, t[0], t[1:]), ((-1) ** n, t[-1], t[:-1])):
                    r0 = tgt.block(rest)
                    if r0 is None:
                        continue
                    mat = M.action_of(y, X.sum(rest))
                    for a, mrow in enumerate(mat):
                        for b, v in enumerate(mrow):
                            if v:
                                rows[r0 + a][c0 + b] = rows[r0 + a].get(c0 + b, 0) + sgn * v
                for i in range(1, n):
                    merged = X.add(t[i - 1], t[i])
                    if self.normalized and X.is_identity(merged):
                        continue
                    r0 = tgt.block(t[:i - 1] + (merged,) + t[i + 1:])
                    if r0 is None:
                        continue
                    s = -1 if i % 2 else 1
                    for a in range(rd):
                        rows[r0 + a][c0 + a] = rows[r0 + a].get(c0 + a, 0) + s
        clean = [{j: R.coerce(v) for j, v in r.items() if R.coerce(v)} for r in rows]
        return ExactMatrix(R, tgt.total_rank, src.total_rank, clean)

    def decomposables(self, n) -> ExactMatrix:
        """Columns spanning the shuffle decomposables in ``C_n``."""
        sp = self.space(n)
        cols = []
        if n >= 2:
            groups = {}
            for t, s in zip(sp.basis.tuples, sp.sums):
                groups.setdefault(tuple(sorted(t, key=_key)), []).append((t, s))
            for ms in sorted(groups, key=lambda k: tuple(map(_key, k))):
                pattern, inverse = _canonical(ms)
                words, rows = orbit_conditions(pattern, "harrison", "shuffle", self.ring)
                r = self.M.rank_of(groups[ms][0][1])
                offs = [sp.offsets[tuple(inverse[c] for c in w)] for w in words]
                for row in rows:
                    for a in range(r):
                        cols.append({offs[i] + a: self.ring.coerce(c) for i, c in row.items()
                                     if self.ring.coerce(c)})
        return ExactMatrix.from_columns(self.ring, sp.total_rank, cols)

    def hochschild_homology(self, n) -> AbelianGroupDescription:
        if n < 0:
            return AbelianGroupDescription(self.ring.name, 0)
        d_n = self.boundary(n) if n >= 1 else None
        d_up = self.boundary(n + 1)
        # H_n = ker(d_n) / im(d_{n+1}); group_from_ranks expects (into, out of)
        return group_from_ranks(self.ring, self.space(n).total_rank, d_up, d_n)

    def harrison_homology(self, n) -> AbelianGroupDescription:
        if n <= 0:
            return AbelianGroupDescription(self.ring.name, 0)
        return quotient_homology(self.space(n).total_rank, self.boundary(n), self.boundary(n + 1),
                                 self.decomposables(n - 1), self.decomposables(n))


def quotient_homology(N, d_n, d_up, G_low, G_here) -> AbelianGroupDescription:
    """Homology at ``C_n`` of the quotient complex ``C / D``.

    ``d_n: C_n -> C_{n-1}``, ``d_up: C_{n+1} -> C_n``; ``G_low`` and
    ``G_here`` are generator columns of ``D_{n-1}`` and ``D_n``.
    Cycles are ``{c : d_n c in D_{n-1}}``, boundaries ``im d_up + D_n``.
    """
    R = d_n.ring
    top = d_up.hstack(G_here)
    if R.is_field:
        low = d_n.hstack(G_low)
        dim_z = N - rank(low) + rank(G_low)
        return AbelianGroupDescription(R.name, dim_z - rank(top))
    # over Z: explicit lattices
    neg = ExactMatrix(R, G_low.nrows, G_low.ncols, [{j: -v for j, v in r.items()} for r in G_low.rows])
    K = kernel_basis(d_n.hstack(neg))
    zgens = [{i: v for i, v in vec.items() if i < N} for vec in K]
    zgens = [g for g in zgens if g]
    if not zgens:
        return AbelianGroupDescription(R.name, 0)
    Zg = ExactMatrix.from_columns(Integers, N, zgens)
    diag, U, V, Ui = smith_normal_form(Zg, with_inverse=True)
    r = len(diag)
    coords = []
    for col in top.columns():
        y = [sum(U[i][k] * v for k, v in col.items()) for i in range(N)]
        if any(y[i] for i in range(r, N)) or any(y[i] % diag[i] for i in range(r)):
            raise NotAComplex((0, 0, "boundary outside cycles"))
        coords.append({i: y[i] // diag[i] for i in range(r) if y[i]})
    C = ExactMatrix.from_columns(Integers, r, coords)
    inv = elementary_divisors(C)
    return AbelianGroupDescription(R.name, r - len(inv), tuple(t for t in inv if t > 1))


def harrison_homology(X, M, n, degree=None, normalized=True) -> AbelianGroupDescription:
    return ChainComplexSlice(X, M, degree, normalized).harrison_homology(n)


def hochschild_homology(X, M, n, degree=None, normalized=True) -> AbelianGroupDescription:
    return ChainComplexSlice(X, M, degree, normalized).hochschild_homology(n)
