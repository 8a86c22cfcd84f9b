"""Pure-numpy fallback for the compiled kernels.

Same signatures as the Cython module. The recursion is vectorized over
evaluation points, carrying all K basis columns, so it is asymptotically
slower than the compiled local algorithm; see benchmarks/bench_kernels.py.
"""

import numpy as np


def design_matrix(t, p, x):
    """Dense (len(x), K) B-spline design matrix on extended knots ``t``."""
    t = np.asarray(t, dtype=float)
    x = np.asarray(x, dtype=float)
    n_int = t.shape[0] - 1
    # Degree-0 indicators, right-continuous, with the right endpoint folded
    # into the last nonempty interval.
    lo = t[:-1][None, :]
    hi = t[1:][None, :]
    xc = x[:, None]
    last = t[-1]
    vals = ((xc >= lo) & ((xc < hi) | ((xc == last) & (hi == last) & (lo < last)))).astype(float)
    for d in range(1, p):
        nxt = np.zeros((x.shape[0], n_int - d))
        for l in range(n_int - d):
            den1 = t[l + d] - t[l]
            if den1 > 0.0:
                nxt[:, l] += (x - t[l]) / den1 * vals[:, l]
            den2 = t[l + d + 1] - t[l + 1]
            if den2 > 0.0:
                nxt[:, l] += (t[l + d + 1] - x) / den2 * vals[:, l + 1]
        vals = nxt
    return np.ascontiguousarray(vals)


def normal_eq(t, p, x, y):
    """Unnormalized pooled sums: (sum B B^T, sum B y)."""
    D = design_matrix(t, p, x)
    return D.T @ D, D.T @ np.asarray(y, dtype=float)


def predict(t, p, x, theta):
    """Evaluate sum_l theta_l B_l(x) at each point."""
    return design_matrix(t, p, x) @ np.asarray(theta, dtype=float)


def cov_raw(t, p, x, u, counts):
    """Raw covariance sums: (sum_i s_i s_i^T, sum_ij B B^T u^2)."""
    D = design_matrix(t, p, x)
    u = np.asarray(u, dtype=float)
    W = D * u[:, None]
    offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
    S = np.add.reduceat(W, offsets, axis=0)
    return S.T @ S, W.T @ W
