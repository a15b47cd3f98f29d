"""Time the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--scale S]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from ftcurve import _backend
from ftcurve.generators import trefoil


def cases(scale: int):
    rng = np.random.default_rng(0)
    V = np.ascontiguousarray(trefoil(64 * scale).vertices)
    P = rng.normal(size=(100 * scale, 3))
    Q = rng.normal(size=(100 * scale, 3))
    U = rng.normal(size=(4096, 3))
    H = U @ trefoil(200).vertices.T
    X = rng.normal(size=(4096, 200, 2))
    pts = rng.normal(size=(200 * scale, 3))
    order = rng.permutation(len(pts))
    return {
        "frechet_dp": lambda k: k.frechet_dp(P, Q),
        "distortion_grid": lambda k: k.distortion_grid(V, True, 16),
        "count_extrema_batch": lambda k: k.count_extrema_batch(H, True, 1e-12),
        "tc_batch": lambda k: k.tc_batch(X, True),
        "min_ball": lambda k: k.min_ball(pts, order),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--scale", type=int, default=2, help="problem size multiplier")
    args = ap.parse_args(argv)
    if not _backend.compiled_available():
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    py, cy = _backend.load("python"), _backend.load("cython")
    print(f"{'kernel':<22}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for name, fn in cases(args.scale).items():
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<22}{t_py:>14.3f}{t_cy:>14.3f}{t_py / t_cy:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
