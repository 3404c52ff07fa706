"""Numba vs numpy timings for the hot kernels, plus end-to-end solves.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call of each kernel compiles it (or loads the on-disk
cache); that warm-up is timed separately and left out of the per-call
figures.
"""
import argparse
import time

import numpy as np

from quatlefteig import kernels, oracle, uniquad
from quatlefteig.quat import Quaternion


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    c = np.concatenate([rng.uniform(-10, 10, 4) + 1j * rng.uniform(-10, 10, 4), [1.0]])
    z0 = (1 + np.abs(c).max()) * (0.4 + 0.9j) ** np.arange(4)
    L = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    B = L @ (rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4)))
    M = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    x0 = rng.uniform(-4, 4, (200, 4))
    a1, a0 = rng.standard_normal(4), rng.standard_normal(4)
    return {
        "durand_kerner": (lambda f: f(c, z0), 200),
        "nullspace": (lambda f: f(B, 1e-10), 2000),
        "lu_det": (lambda f: f(M), 2000),
        "lm_multistart (200 starts)": (lambda f: f(x0, a1, a0), 1),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    print(f"{'kernel':28s} {'numba':>12s} {'numpy':>12s} {'speedup':>8s}")
    for name, (call, inner) in cases(rng).items():
        base = name.split()[0]
        fast = getattr(kernels, base + "_numba")
        slow = getattr(kernels, base + "_numpy")
        t0 = time.perf_counter()
        call(fast)
        warm = time.perf_counter() - t0
        tn = best_of(lambda: [call(fast) for _ in range(inner)], args.repeat) / inner
        tp = best_of(lambda: [call(slow) for _ in range(inner)], args.repeat) / inner
        print(f"{name:28s} {tn * 1e6:10.1f}us {tp * 1e6:10.1f}us {tp / tn:7.1f}x   (warm-up {warm:.2f}s)")

    a1, a0 = Quaternion(0.3, -1, 2, 0.5), Quaternion(1, 1, 0, -1)
    uniquad.solve(a1, a0)
    t = best_of(lambda: [uniquad.solve(a1, a0) for _ in range(100)], args.repeat) / 100
    print(f"\nuniquad.solve ({kernels.BACKEND}): {t * 1e3:.3f} ms per call")
    t = best_of(lambda: oracle.search_solutions(a1, a0, 200, 0), args.repeat)
    print(f"oracle.search_solutions, 200 starts ({kernels.BACKEND}): {t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
