#!/usr/bin/env python3
"""Timing comparison of the compiled and pure-python training kernels.

Runs the two hot kernels (per-anchor neighborhood fits and design-matrix
assembly) on synthetic data across problem sizes and prints the speedup of
the compiled extension over the numpy fallback.

Usage: python scripts/bench_backends.py [--repeats 3]
"""

import argparse
import time

import numpy as np

from ddfnn import _backend
from ddfnn.activations import ActivationKind


CASES = [
    # (N, n, m, k) roughly matching the benchmark presets
    (5000, 1, 200, 1),
    (5000, 2, 500, 2),
    (20000, 5, 500, 5),
    (50000, 10, 300, 10),
]


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; showing python-only timings")

    header = f"{'case (N, n, m, k)':<24} {'kernel':<14}" + "".join(f"{b:>12}" for b in backends)
    print(header + ("     speedup" if len(backends) > 1 else ""))
    print("-" * len(header))

    rng = np.random.default_rng(0)
    for N, n, m, k in CASES:
        X = rng.random((N, n))
        Y = rng.standard_normal(N)
        anchors = rng.integers(0, N, size=m, dtype=np.int64)
        W = rng.standard_normal((m, n))
        b = rng.standard_normal(m)

        jobs = {
            "place": lambda be: be.place_hyperplanes(X, Y, anchors, k),
            "design_matrix": lambda be: be.design_matrix(
                X, W, b, list(ActivationKind).index(ActivationKind.SIGMOID_UNIPOLAR), False
            ),
        }
        for name, job in jobs.items():
            times = {}
            for bname in backends:
                be = _backend._BACKENDS[bname]
                times[bname] = best_of(lambda: job(be), args.repeats)
            row = f"{str((N, n, m, k)):<24} {name:<14}"
            row += "".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends)
            if len(backends) > 1:
                row += f"{times['python'] / times['compiled']:>11.1f}x"
            print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
