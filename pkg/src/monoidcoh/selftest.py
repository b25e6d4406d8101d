"""Built-in consistency suite behind ``monoidcoh selftest``."""

from __future__ import annotations

from math import comb

from .bar import gamma
from .complexes import CochainComplexSlice, same_span
from .monoid import FreeMonoid, constant_module, cyclic_group, cyclic_rees, semilattice_chain
from .perms import monotone
from .rings import PrimeField, Rationals

GAMMA_2_ABCD = {
    tuple("abcdabcd"): 1, tuple("abcadbcd"): -1, tuple("abcabdcd"): 1,
    tuple("abacdbcd"): 1, tuple("abacbdcd"): -1, tuple("ababcdcd"): 2,
}
MONOTONE_4_6 = ["432156", "432516", "432561", "435216", "435261",
                "435621", "453216", "453261", "453621", "456321"]


def _gamma_facts():
    yield "gamma_2[a|b] = [a|b|a|b]", gamma(2, "ab").terms == {tuple("abab"): 1}
    yield "gamma_2[a|b|c|d] six-term expansion", gamma(2, "abcd").terms == GAMMA_2_ABCD
    g3 = gamma(3, "abcd")
    yield "gamma_3[a|b|c|d]: 53 terms in [-4, 6]", (
        len(g3) == 53 and min(g3.terms.values()) == -4 and max(g3.terms.values()) == 6)


def _perm_facts():
    seqs = ["".join(map(str, p)) for p, _ in monotone(4, 6)]
    yield "4-monotone permutations of 6", seqs == MONOTONE_4_6
    yield "monotone counts are binomial", all(
        len(monotone(k, n)) == comb(n - 1, k - 1) for n in range(1, 9) for k in range(1, n + 1))


def _subspace_facts():
    cases = [(cyclic_group(2), None), (semilattice_chain(2), None), (cyclic_rees(2, 2), None),
             (FreeMonoid(1), 6)]
    ok = True
    for X, d in cases:
        for R in (Rationals, PrimeField(2)):
            s = CochainComplexSlice(X, constant_module(X, R), "harrison", d)
            for n in range(2, 5):
                a, b, c = (s.subspace(n, m) for m in ("shuffle", "monotone", "monotone_minimal"))
                ok = ok and same_span(a, b) and same_span(b, c)
    yield "shuffle, monotone and reduced monotone subspaces agree", ok


def _cohomology_facts():
    X = cyclic_rees(2, 2)
    M = constant_module(X, Rationals)
    harr = CochainComplexSlice(X, M, "harrison")
    hoch = CochainComplexSlice(X, M, "hochschild")
    yield "Harr^0 = 0", harr.cohomology(0).is_zero()
    yield "Harr^1 = Hoch^1", harr.cohomology(1) == hoch.cohomology(1)
    N = FreeMonoid(1)
    s = [CochainComplexSlice(N, constant_module(N, PrimeField(2), preset="augmentation"), "barr", d)
         for d in (8, 10, 12)]
    yield "Barr^5 over F2 on N is nonzero in some degree <= 12", any(
        not c.cohomology(5).is_zero() for c in s)


def run_selftest(out) -> bool:
    ok = True
    for group in (_gamma_facts, _perm_facts, _subspace_facts, _cohomology_facts):
        for label, passed in group():
            ok = ok and passed
            print(f"{'PASS' if passed else 'FAIL'}  {label}", file=out)
    return ok
