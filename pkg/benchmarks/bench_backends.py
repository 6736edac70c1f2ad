#!/usr/bin/env python3
"""Benchmark the compiled extension against the numpy fallback on the
two O(n^2) kernels, checking agreement while timing.

Usage:
    python benchmarks/bench_backends.py [--pair-sizes 2000,10000]
                                        [--gram-sizes 1000,2000]
                                        [--repeats 3]
"""

import argparse
import time

import numpy as np

from eppspulley import _core_py

try:
    from eppspulley import _core
except ImportError:
    _core = None


def best_of(repeats, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_pairwise(sizes, repeats, rng):
    print(f"{'pairwise_gauss_sum':24s} {'n':>8s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for n in sizes:
        y = rng.standard_normal(n)
        t_py, r_py = best_of(repeats, _core_py.pairwise_gauss_sum, y, 0.5)
        if _core is None:
            print(f"{'':24s} {n:8d} {t_py:9.3f}s {'-':>10s} {'-':>8s}")
            continue
        t_c, r_c = best_of(repeats, _core.pairwise_gauss_sum, y, 0.5)
        assert abs(r_c - r_py) <= 1e-12 * abs(r_py), "backend disagreement"
        print(f"{'':24s} {n:8d} {t_py:9.3f}s {t_c:9.3f}s {t_py / t_c:7.1f}x")


def bench_gram(sizes, repeats, rng):
    print(f"{'kernel_gram':24s} {'N':>8s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}")
    for n in sizes:
        y = rng.standard_normal(n)
        t_py, g_py = best_of(repeats, _core_py.kernel_gram, y)
        if _core is None:
            print(f"{'':24s} {n:8d} {t_py:9.3f}s {'-':>10s} {'-':>8s}")
            continue
        t_c, g_c = best_of(repeats, _core.kernel_gram, y)
        assert np.allclose(g_c, g_py, rtol=0.0, atol=1e-15), "backend disagreement"
        print(f"{'':24s} {n:8d} {t_py:9.3f}s {t_c:9.3f}s {t_py / t_c:7.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pair-sizes", default="2000,10000,20000")
    parser.add_argument("--gram-sizes", default="1000,2000")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if _core is None:
        print("compiled extension not available; timing the numpy fallback only\n")
    rng = np.random.default_rng(0)
    bench_pairwise([int(s) for s in args.pair_sizes.split(",")], args.repeats, rng)
    print()
    bench_gram([int(s) for s in args.gram_sizes.split(",")], args.repeats, rng)


if __name__ == "__main__":
    main()
