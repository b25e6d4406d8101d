"""Direct solver for derivations ``s(x + y) = x_* s(y) + y_* s(x)``.

This deliberately avoids the cochain machinery so it can serve as an
independent check on ``ker d^1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import ExactMatrix, kernel_basis
from .monoid import DegreeRequired


class MismatchReport(AssertionError):
    pass


@dataclass(frozen=True)
class DerivationSpace:
    elements: tuple
    basis: tuple  # each item: {element: value vector}
    ring_name: str

    @property
    def dimension(self):
        return len(self.basis)


def _unknowns(X, M, elements):
    offsets, off = {}, 0
    for x in elements:
        offsets[x] = off
        off += M.rank_of(x)
    return offsets, off


def derivation_space(X, M, degree=None, bound=None) -> DerivationSpace:
    """Basis of ``Der(X, M)``.

    For the free monoid either ``bound`` (values on all elements of degree
    ``<= bound``, equations for every pair that stays in range) or
    ``degree`` (assignments supported on that one degree, for the
    associated graded module) must be given.
    """
    if X.is_finite:
        elements = tuple(X.elements())
    elif degree is not None:
        elements = tuple(x for x in _degrees_up_to(X, degree))
    elif bound is not None:
        elements = tuple(_degrees_up_to(X, bound))
    else:
        raise DegreeRequired("derivations on the free monoid need a degree or bound")
    if degree is not None and not M.is_degree_preserving():
        M = M.graded_part()
    if degree is not None:
        support = (degree,)
    else:
        support = elements
    R = M.ring
    offsets, total = _unknowns(X, M, support)
    elem_set = set(elements)
    eqs = []
    seen = set()
    for x in elements:
        for y in elements:
            z = X.add(x, y)
            if z not in elem_set:
                continue
            for a in range(M.rank_of(z)):
                row = {}
                if z in offsets:
                    row[offsets[z] + a] = row.get(offsets[z] + a, 0) + 1
                for mover, arg in ((x, y), (y, x)):
                    if arg not in offsets:
                        continue
                    mat = M.action_of(mover, arg)
                    for b, v in enumerate(mat[a]):
                        if v:
                            row[offsets[arg] + b] = row.get(offsets[arg] + b, 0) - v
                row = {j: R.coerce(v) for j, v in row.items() if R.coerce(v)}
                key = tuple(sorted(row.items()))
                if row and key not in seen:
                    seen.add(key)
                    eqs.append(row)
    K = kernel_basis(ExactMatrix(R, len(eqs), total, eqs))
    basis = []
    for vec in K:
        assignment = {}
        for x in support:
            r = M.rank_of(x)
            assignment[x] = tuple(vec.get(offsets[x] + a, 0) for a in range(r))
        e = X.identity
        if e in assignment and any(assignment[e]):
            raise MismatchReport("a derivation with s(identity) != 0")
        basis.append(assignment)
    return DerivationSpace(elements, tuple(basis), R.name)


def _degrees_up_to(X, d):
    if X.rank == 1:
        return range(0, d + 1)
    import itertools

    return (tuple(v) for v in itertools.product(*(range(c + 1) for c in d)))


def is_derivation(X, M, assignment, elements=None) -> bool:
    """Substitute an assignment back into every equation (missing values
    count as zero)."""
    R = M.ring
    elements = elements or tuple(assignment)
    present = set(elements)

    def val(x):
        if x in assignment:
            return assignment[x]
        return (0,) * M.rank_of(x)

    for x in elements:
        for y in elements:
            z = X.add(x, y)
            if z not in present:
                continue
            lhs = val(z)
            ax = M.action_of(x, y)
            ay = M.action_of(y, x)
            for a in range(M.rank_of(z)):
                rhs = sum(ax[a][b] * v for b, v in enumerate(val(y))) + sum(
                    ay[a][b] * v for b, v in enumerate(val(x)))
                if R.coerce(lhs[a] - rhs):
                    return False
    return True


@dataclass(frozen=True)
class DerivationReport:
    derivations: int
    kernel_d1: int

    @property
    def ok(self):
        return self.derivations == self.kernel_d1


def derivation_check(X, M, degree=None) -> DerivationReport:
    """Compare ``dim Der`` from the direct solver with ``dim ker d^1``."""
    from .complexes import CochainComplexSlice

    der = derivation_space(X, M, degree=degree).dimension
    ker = CochainComplexSlice(X, M, "hochschild", degree).dim_kernel(1)
    report = DerivationReport(der, ker)
    if not report.ok:
        raise MismatchReport(f"dim Der = {der} but dim ker d^1 = {ker}")
    return report
