import sys

import pytest

from monoidcoh import linalg
from monoidcoh.monoid import (FreeMonoid, constant_module, cyclic_group, cyclic_rees,
                              projective_module, semilattice_chain, trivial_monoid)
from monoidcoh.rings import PrimeField, Rationals

GRID_MONOIDS = [trivial_monoid, lambda: cyclic_group(2), lambda: semilattice_chain(2),
                lambda: cyclic_rees(2, 2)]
GRID_RINGS = [Rationals, PrimeField(2), PrimeField(3)]


def grid_modules(X, R):
    """Identity-action constant module plus every left projective."""
    mods = [constant_module(X, R)]
    mods += [projective_module(X, R, x) for x in X.elements()]
    return mods


def grid_cases():
    """(X, M, degree) triples covering the finite monoids unsliced and the
    free-monoid slices of degree <= 8."""
    cases = []
    for make in GRID_MONOIDS:
        X = make()
        for R in GRID_RINGS:
            for M in grid_modules(X, R):
                cases.append((X, M, None))
    N = FreeMonoid(1)
    for R in GRID_RINGS:
        for preset in ("identity", "augmentation"):
            M = constant_module(N, R, preset=preset)
            for d in range(1, 9):
                cases.append((N, M, d))
    return cases


def case_id(case):
    X, M, d = case
    return f"{X.name}-{M.ring.name}-{M.name}-d{'all' if d is None else d}"


@pytest.fixture(autouse=True)
def _no_disk_cache():
    previous = linalg.set_cache(None)
    yield
    linalg.set_cache(previous)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
