#!/usr/bin/env python3
"""Benchmark the hot kernels: numba-jitted path versus the numpy fallback.

Runs each kernel on the same inputs through both implementations (when
numba is importable), checks that the outputs agree, and prints a timing
table.  Use CAPSIEVE_NO_NUMBA=1 to see the fallback dispatch in the
package itself; this script always drives both implementations directly.
"""

import math
import time

import numpy as np

from capsieve import _backend


def _time(fn, *args, repeats=3):
    fn(*args)  # warm-up (first numba call compiles)
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    rng = np.random.default_rng(0)
    have_numba = _backend.HAVE_NUMBA

    cases = []

    coeffs = 2.0 * np.arange(21, dtype=np.float64) + 1.0
    t = rng.uniform(-1.0, 1.0, 1_000_000)
    cases.append(("legendre_series (1e6 pts, K=20)",
                  "legendre_series", (coeffs, t)))

    pts = rng.standard_normal((1500, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    sw = rng.uniform(0.1, 1.0, 1500)
    k10 = 2.0 * np.arange(11, dtype=np.float64) + 1.0
    cases.append(("kernel matrix (N=1500, K=10)",
                  "legendre_kernel_matrix", (pts, sw, k10)))

    pts2 = rng.standard_normal((3000, 3))
    pts2 /= np.linalg.norm(pts2, axis=1, keepdims=True)
    sw2 = rng.uniform(0.1, 1.0, 3000)
    vec = rng.standard_normal(3000)
    cases.append(("kernel matvec (N=3000, K=10)",
                  "legendre_kernel_matvec", (pts2, sw2, k10, vec)))

    print(f"numba available: {have_numba}")
    print(f"{'kernel':<38} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for label, name, args in cases:
        t_np, out_np = _time(_backend.IMPLS[name]["numpy"], *args)
        if have_numba:
            t_nb, out_nb = _time(_backend.IMPLS[name]["numba"], *args)
            assert np.allclose(out_np, out_nb, atol=1e-10), label
            print(f"{label:<38} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms "
                  f"{t_np / t_nb:>8.1f}x")
        else:
            print(f"{label:<38} {t_np * 1e3:>8.1f}ms {'-':>10} {'-':>9}")

    # CDF inversion has separate entry points
    u = rng.random(200_000)
    a, b, xmax = 1.5, 1.5, 0.05
    bab = math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
    nd = _backend.series_length(min(xmax, 0.55), b)
    nr = 1
    n_iter = _backend.bisection_count(xmax)
    t_np, x_np = _time(_backend._invert_cdf_np, a, b, xmax, u, bab, nd, nr, n_iter)
    label = "cap CDF inversion (2e5 samples)"
    if have_numba:
        t_nb, x_nb = _time(_backend._invert_cdf_nb, a, b, xmax, u, bab, nd, nr,
                           n_iter)
        assert np.allclose(x_np, x_nb, atol=1e-12)
        print(f"{label:<38} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms "
              f"{t_np / t_nb:>8.1f}x")
    else:
        print(f"{label:<38} {t_np * 1e3:>8.1f}ms {'-':>10} {'-':>9}")


if __name__ == "__main__":
    main()
