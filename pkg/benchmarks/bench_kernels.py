"""Benchmark the hot kernels: @njit loop versions versus the numpy ones.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Representative sizes match the acceptance workloads (n=8192 series through
truncation-4096 causal filters; half-width-1024 two-sided windows; n=100000
AR recursions).  These numbers are why the package dispatches per kernel:
np.convolve wins the three convolution kernels, @njit wins the recursion.
Run with FRACSPEC_DISABLE_NUMBA=1 to time the pure-numpy/Python path only.
"""

import argparse
import time

import numpy as np

from fracspec import _kernels


def _time(fn, *args, repeat):
    fn(*args)  # warm up (numba compiles on first call)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    y = rng.normal(size=8192)
    coeffs = rng.normal(size=4097)
    weights = rng.normal(size=2049)
    phi = np.array([0.5, -0.3])
    long_x = rng.normal(size=100_000)

    have_numba = _kernels.BACKEND == "numba"
    cases = [
        ("causal n=8192 M=4096", (y, coeffs),
         _kernels._causal_apply_nb, _kernels._causal_apply_np),
        ("two-sided zero n=8192 M=1024", (y, weights),
         _kernels._two_sided_zero_nb, _kernels._two_sided_zero_np),
        ("two-sided periodic n=8192 M=1024", (y, weights),
         _kernels._two_sided_periodic_nb, _kernels._two_sided_periodic_np),
        ("AR recursion n=100000 p=2", (long_x, phi),
         _kernels._ar_recurse_nb, _kernels._ar_recurse_np),
    ]

    print(f"active backend: {_kernels.BACKEND}")
    print(f"{'kernel':<34} {'numba':>12} {'numpy':>12} {'numba/numpy':>12}")
    for name, data, nb_fn, np_fn in cases:
        t_np = _time(np_fn, *data, repeat=args.repeat)
        if have_numba:
            t_nb = _time(nb_fn, *data, repeat=args.repeat)
            ratio = f"{t_nb / t_np:>11.2f}x"
            nb_col = f"{t_nb * 1e3:>10.3f}ms"
        else:
            ratio = f"{'n/a':>12}"
            nb_col = f"{'n/a':>12}"
        print(f"{name:<34} {nb_col} {t_np * 1e3:>10.3f}ms {ratio}")


if __name__ == "__main__":
    main()
