"""Command-line interface: ``monoidcoh compute | perms | gamma | check | selftest``."""

from __future__ import annotations

import argparse
import sys

from . import jobs as jobs_mod
from .bar import format_wordsum, gamma
from .cache import ENV_VAR, DiskCache
from .complexes import BudgetExceeded, InternalAssertion, SliceError
from .derivations import MismatchReport, derivation_check
from .linalg import NotAComplex
from .monoid import DegreeRequired, FunctorialityViolation, InfiniteRank, MonoidError
from .perms import monotone, ordered_block_shuffles, shuffles, sign

EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

_INVALID = (jobs_mod.JobError, MonoidError, FunctorialityViolation, InfiniteRank,
            DegreeRequired, SliceError, KeyError, TypeError, ValueError)


def _fmt_perm(p):
    sep = "" if len(p) < 10 else " "
    return sep.join(str(v) for v in p)


def cmd_perms(args, out):
    fam, k, n = args.family, args.k, args.n
    if fam == "shuffle":
        for p in shuffles(k, n):
            print(f"{_fmt_perm(p)}  sgn={sign(p):+d}", file=out)
    elif fam == "monotone":
        if not 1 <= k <= n:
            raise jobs_mod.JobError("monotone needs 1 <= k <= n")
        for p, dr in monotone(k, n):
            print(f"{_fmt_perm(p)}  dr={dr}  sign={(-1) ** dr:+d}", file=out)
    elif fam in ("blocks", "blocks-all"):
        for p in ordered_block_shuffles(k, n, ordered=fam == "blocks"):
            print(f"{_fmt_perm(p)}  sgn={sign(p):+d}", file=out)
    else:
        raise jobs_mod.JobError(f"unknown family {fam!r}")
    return 0


def _letters(tokens):
    if len(tokens) == 1 and " " not in tokens[0]:
        return list(tokens[0])
    return " ".join(tokens).split()


def cmd_gamma(args, out):
    word = _letters(args.letters)
    print(format_wordsum(gamma(args.k, word)), file=out)
    return 0


def _cache_for(args):
    if getattr(args, "no_cache", False):
        return None
    return DiskCache()


def cmd_compute(args, out):
    job = jobs_mod.load_job(args.job)
    result = jobs_mod.run_job(job, jobs=args.jobs, cache=_cache_for(args))
    jobs_mod.write_result(result, args.out)
    print(jobs_mod.summary_table(result), file=out)
    return 0


def cmd_check(args, out):
    job = jobs_mod.load_job(args.job)
    X, M, R = jobs_mod.materialize(job)
    print(f"monoid {X.name}: valid", file=out)
    print(f"module {M.name} over {R.name}: functor laws hold", file=out)
    if M.side != "left":
        print("right module: derivation check skipped", file=out)
        return 0
    for d in jobs_mod.degrees_of(job, X):
        rep = derivation_check(X, M, degree=d)
        label = "all" if d is None else d
        print(f"d={label}: dim Der = {rep.derivations}, dim ker d1 = {rep.kernel_d1}: ok", file=out)
    return 0


def cmd_selftest(args, out):
    from .selftest import run_selftest

    return 0 if run_selftest(out) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="monoidcoh",
        description="Exact Hochschild, Harrison and Barr cohomology of commutative monoids.",
        epilog=f"The on-disk cache lives in ${ENV_VAR} (default ~/.cache/monoidcoh).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="run a job file")
    p.add_argument("--job", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("perms", help="list a permutation family")
    p.add_argument("family", choices=["shuffle", "monotone", "blocks", "blocks-all"])
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_perms)

    p = sub.add_parser("gamma", help="expand a divided power")
    p.add_argument("k", type=int)
    p.add_argument("letters", nargs="+")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("check", help="validate a job's monoid and module")
    p.add_argument("--job", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("selftest", help="run the built-in consistency suite")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InternalAssertion, NotAComplex, MismatchReport) as exc:
        print(f"error: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except _INVALID as exc:
        triple = getattr(exc, "triple", None)
        extra = f" (triple {triple})" if triple is not None else ""
        print(f"error: invalid input: {exc}{extra}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
