#!/usr/bin/env python3
"""Compare the compiled and pure arithmetic kernels on representative loads.

The workloads mirror the hot paths of the verification suite: dense
polynomial products and gcds at typical degrees, Horner evaluations, exact
matrix products of the size that shows up in grid certification, and the
echelon forms behind kernel and quotient computations.

Run from the repository root:  python3 benchmarks/bench_kernels.py
"""

import os
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from tyang._kernel import pure  # noqa: E402

try:
    from tyang._kernel import _speedups
except ImportError:
    _speedups = None


def rand_fraction(rng, span=30, den=12):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def make_workloads():
    rng = random.Random(2024)
    polys = [
        ([rand_fraction(rng) for _ in range(12)], [rand_fraction(rng) for _ in range(10)])
        for _ in range(60)
    ]
    gcd_pairs = []
    for _ in range(30):
        g = [rand_fraction(rng) for _ in range(4)] + [Fraction(1)]
        a = pure.poly_mul(g, [rand_fraction(rng) for _ in range(5)] + [Fraction(1)])
        b = pure.poly_mul(g, [rand_fraction(rng) for _ in range(5)] + [Fraction(1)])
        gcd_pairs.append((a, b))
    eval_jobs = [
        ([rand_fraction(rng) for _ in range(14)], Fraction(rng.randint(1, 40)))
        for _ in range(400)
    ]
    mats = []
    for _ in range(6):
        n = 32
        A = [[rand_fraction(rng, 9, 5) for _ in range(n)] for _ in range(n)]
        B = [[rand_fraction(rng, 9, 5) for _ in range(n)] for _ in range(n)]
        mats.append((A, B))
    rrefs = []
    for _ in range(10):
        A = [[rand_fraction(rng, 9, 5) for _ in range(24)] for _ in range(16)]
        rrefs.append(A)
    return polys, gcd_pairs, eval_jobs, mats, rrefs


def run(backend, polys, gcd_pairs, eval_jobs, mats, rrefs):
    timings = {}
    t0 = time.perf_counter()
    for a, b in polys:
        backend.poly_mul(a, b)
        backend.poly_divmod(a, b if b and b[-1] else [Fraction(1)])
    timings["poly mul+divmod"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for a, b in gcd_pairs:
        backend.poly_gcd(a, b)
    timings["poly gcd"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for a, x in eval_jobs:
        backend.poly_eval(a, x)
    timings["poly eval"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for A, B in mats:
        backend.mat_mul(A, B)
    timings["mat mul 32x32"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    for A in rrefs:
        backend.mat_rref([row[:] for row in A])
    timings["mat rref 16x24"] = time.perf_counter() - t0
    return timings


def main():
    work = make_workloads()
    print(f"{'workload':<18} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>9}")
    pure_times = run(pure, *work)
    if _speedups is None:
        for name, tp in pure_times.items():
            print(f"{name:<18} {tp:>10.3f} {'n/a':>13} {'n/a':>9}")
        print("\ncompiled kernel not available; build with: python3 setup.py build_ext --inplace")
        return
    fast_times = run(_speedups, *work)
    # Sanity: identical outputs on one probe per family.
    a, b = work[0][0]
    assert pure.poly_mul(a, b) == _speedups.poly_mul(a, b)
    A, B = work[3][0]
    assert pure.mat_mul(A, B) == _speedups.mat_mul(A, B)
    for name in pure_times:
        tp, tf = pure_times[name], fast_times[name]
        print(f"{name:<18} {tp:>10.3f} {tf:>13.3f} {tp / tf:>8.1f}x")


if __name__ == "__main__":
    main()
