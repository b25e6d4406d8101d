import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import case_id, grid_cases
from monoidcoh.derivations import (MismatchReport, derivation_check, derivation_space,
                                   is_derivation)
from monoidcoh.monoid import (DegreeRequired, FreeMonoid, constant_module, cyclic_group,
                              projective_module, semilattice_chain, trivial_monoid)
from monoidcoh.rings import Integers, PrimeField, Rationals

F2 = PrimeField(2)
N = FreeMonoid(1)


def test_trivial_monoid_has_no_derivations():
    X = trivial_monoid()
    assert derivation_space(X, constant_module(X, Rationals)).dimension == 0


def test_semilattice_constant_f2():
    X = semilattice_chain(2)
    assert derivation_space(X, constant_module(X, F2)).dimension == 0
    rep = derivation_check(X, constant_module(X, F2))
    assert (rep.derivations, rep.kernel_d1) == (0, 0)


def test_free_monoid_derivations_are_linear():
    sp = derivation_space(N, constant_module(N, Rationals), bound=6)
    assert sp.dimension == 1
    (s,) = sp.basis
    assert s[0] == (0,)
    for n in range(7):
        assert s[n][0] == n * s[1][0]


def test_free_monoid_needs_degree():
    with pytest.raises(DegreeRequired):
        derivation_space(N, constant_module(N, Rationals))


def test_free_degree_one_check():
    rep = derivation_check(N, constant_module(N, Rationals), degree=1)
    assert rep.ok and rep.derivations == 1


def test_cyclic_group_over_field_of_order():
    # s(k) = k s(1) with 3 s(1) = s(0) = 0, so over F3 one derivation
    X = cyclic_group(3)
    assert derivation_space(X, constant_module(X, PrimeField(3))).dimension == 1
    assert derivation_space(X, constant_module(X, Rationals)).dimension == 0


def test_basis_elements_satisfy_identity():
    X = semilattice_chain(3)
    M = projective_module(X, Rationals, 1)
    sp = derivation_space(X, M)
    assert all(is_derivation(X, M, s, sp.elements) for s in sp.basis)


def test_non_derivation_is_detected():
    X = cyclic_group(3)
    M = constant_module(X, PrimeField(3))
    assert is_derivation(X, M, {0: (0,), 1: (1,), 2: (2,)})
    assert not is_derivation(X, M, {0: (0,), 1: (1,), 2: (1,)})


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_random_assignments_match_solver(n, values):
    # an assignment is a derivation exactly when it lies in the solved span
    X = cyclic_group(n)
    R = PrimeField(5)
    M = constant_module(X, R)
    assignment = {x: (R.coerce(values[x]),) for x in X.elements()}
    sp = derivation_space(X, M)
    in_span = any(all(assignment[x] == tuple(R.coerce(c * v) for v in b[x]) for x in X.elements())
                  for b in sp.basis for c in range(5)) or not any(v[0] for v in assignment.values())
    assert is_derivation(X, M, assignment) == in_span


@pytest.mark.parametrize("case", grid_cases(), ids=case_id)
def test_derivations_match_kernel_of_first_differential(case):
    X, M, d = case
    assert derivation_check(X, M, degree=d).ok


def test_integral_grid_sample():
    for X in (cyclic_group(2), semilattice_chain(3)):
        for M in [constant_module(X, Integers)] + [projective_module(X, Integers, x)
                                                   for x in X.elements()]:
            assert derivation_check(X, M).ok


def test_mismatch_report_is_an_assertion():
    assert issubclass(MismatchReport, AssertionError)
