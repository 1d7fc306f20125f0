"""Timing comparison of the compiled and plain-numpy kernel paths.

Run as a script; it reports per-kernel medians and the speedup factor.
When numba is unavailable the jit column reads n/a and the table still
prints, so the benchmark doubles as a fallback sanity check.
"""

import argparse
import time

import numpy as np

from framelift import kernels


def _median_time(fn, args, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return sorted(times)[len(times) // 2]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=800, help="number of index points")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    pts = rng.uniform(0, 50, size=(args.size, 2))
    dist = kernels.pairwise_dist_numpy(pts)
    mat = np.abs(rng.standard_normal((args.size, args.size))) / (1.0 + dist) ** 3
    vals = (1.0 + np.linalg.norm(pts, axis=1)) ** 2

    cases = [
        ("pairwise_dist", (pts, 0.0), "pairwise_dist"),
        ("decay_max", (mat, dist, 4.0), "decay_max"),
        ("moderateness_max", (vals, dist, 2.0), "moderateness_max"),
        ("schur_kappa", (dist, 4.0), "schur_kappa"),
    ]

    print(f"n = {args.size}, repeats = {args.repeats} (median), numba available: {kernels.HAS_NUMBA}")
    header = f"{'kernel':<20}{'numpy [ms]':>12}{'jit [ms]':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, call_args, base in cases:
        np_fn = getattr(kernels, base + "_numpy")
        t_np = _median_time(np_fn, call_args, args.repeats)
        if kernels.HAS_NUMBA:
            jit_fn = getattr(kernels, base + "_jit")
            jit_fn(*call_args)  # compile outside the timed region
            t_jit = _median_time(jit_fn, call_args, args.repeats)
            ref = np.asarray(np_fn(*call_args))
            got = np.asarray(jit_fn(*call_args))
            assert np.allclose(ref, got, rtol=1e-12, atol=1e-12), name
            print(f"{name:<20}{t_np * 1e3:>12.3f}{t_jit * 1e3:>12.3f}{t_np / t_jit:>10.2f}")
        else:
            print(f"{name:<20}{t_np * 1e3:>12.3f}{'n/a':>12}{'n/a':>10}")


if __name__ == "__main__":
    main()
