"""Timing comparison: compiled spline kernels vs the pure-Python fallback.

Run as a script. Each kernel is timed on workloads shaped like the
Monte Carlo studies (pooled designs from a few hundred to tens of
thousands of points).

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from scband._kernels import _pykern
from scband.basis import BSplineSpec, make_knot_grid

try:
    from scband._kernels import _ckern
except ImportError:
    _ckern = None


def _workload(rng, total, J=6, p=4, n_subjects=100):
    spec = BSplineSpec(order=p, grid=make_knot_grid(J))
    x = rng.uniform(0, 1, total)
    y = np.sin(3 * x) + 0.1 * rng.standard_normal(total)
    u = y - y.mean()
    counts = np.full(n_subjects, total // n_subjects, dtype=np.int64)
    counts[: total % n_subjects] += 1
    theta = rng.standard_normal(spec.dim)
    return spec.extended_knots, p, x, y, u, counts, theta


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    print(f"{'kernel':<14}{'total':>8}{'python':>12}{'compiled':>12}{'speedup':>9}")
    for total in (500, 5_000, 60_000):
        t, p, x, y, u, counts, theta = _workload(rng, total)
        jobs = {
            "design_matrix": (lambda m: lambda: m.design_matrix(t, p, x)),
            "normal_eq": (lambda m: lambda: m.normal_eq(t, p, x, y)),
            "predict": (lambda m: lambda: m.predict(t, p, x, theta)),
            "cov_raw": (lambda m: lambda: m.cov_raw(t, p, x, u, counts)),
        }
        for name, make in jobs.items():
            py = _time(make(_pykern))
            if _ckern is None:
                print(f"{name:<14}{total:>8}{py * 1e3:>10.2f}ms{'-':>12}{'-':>9}")
                continue
            cy = _time(make(_ckern))
            print(
                f"{name:<14}{total:>8}{py * 1e3:>10.2f}ms{cy * 1e3:>10.2f}ms"
                f"{py / cy:>8.1f}x"
            )


if __name__ == "__main__":
    main()
