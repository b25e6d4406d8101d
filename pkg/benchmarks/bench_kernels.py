"""Compare the compiled mod-p kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 50 100 200] [--repeat 3]

Also times one end-to-end slice computation through each backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from monoidcoh import _kernels_py

try:
    from monoidcoh import _kernels
except ImportError:
    _kernels = None


def random_matrix(m, n, p, density, seed):
    rng = random.Random(seed)
    return [[rng.randrange(1, p) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(m)]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_kernels(sizes, p, density, repeat):
    print(f"{'size':>6} {'op':>5} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for size in sizes:
        A = random_matrix(size, size, p, density, seed=size)
        for op in ("rank", "rref"):
            py_fn = getattr(_kernels_py, f"{op}_modp")
            t_py = best(lambda: py_fn(A, size, p), repeat)
            if _kernels is None:
                print(f"{size:>6} {op:>5} {t_py:>10.4f} {'n/a':>11} {'':>8}")
                continue
            c_fn = getattr(_kernels, f"{op}_modp")
            assert c_fn(A, size, p) == py_fn(A, size, p)
            t_c = best(lambda: c_fn(A, size, p), repeat)
            print(f"{size:>6} {op:>5} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.1f}x")


SLICE = ("from monoidcoh.complexes import CochainComplexSlice;"
         "from monoidcoh.monoid import FreeMonoid, constant_module;"
         "from monoidcoh.rings import PrimeField;"
         "import time;"
         "N = FreeMonoid(1);"
         "t = time.perf_counter();"
         "g = CochainComplexSlice(N, constant_module(N, PrimeField(2)), 'barr', 12).cohomology(5);"
         "print(f'{time.perf_counter() - t:.3f}', g)")


def bench_slice():
    print("\nend-to-end: Barr^5 over F2 at internal degree 12")
    for label, pure in (("compiled", False), ("python", True)):
        env = dict(os.environ)
        env.pop("MONOIDCOH_PURE_PYTHON", None)
        if pure:
            env["MONOIDCOH_PURE_PYTHON"] = "1"
        out = subprocess.run([sys.executable, "-c", SLICE], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  {label:>8}: {out[0]} s  -> {out[1]}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-slice", action="store_true")
    args = ap.parse_args()
    print(f"compiled kernels {'available' if _kernels else 'NOT built'}; p = {args.prime}")
    bench_kernels(args.sizes, args.prime, args.density, args.repeat)
    if not args.skip_slice:
        bench_slice()


if __name__ == "__main__":
    main()
