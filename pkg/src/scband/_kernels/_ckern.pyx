# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels for B-spline evaluation and pooled accumulation.

Each point touches only the ``p`` basis functions supported on its knot
interval, so all loops here are O(p^2) per observation instead of O(K).
The accumulating kernels use Kahan compensation: the pooled sums can run
over 1e5+ observations.
"""

import numpy as np


cdef inline Py_ssize_t _find_span(const double[::1] t, Py_ssize_t p, double x) noexcept nogil:
    # Largest i in [p-1, len(t)-p-1] with t[i] <= x; x at the right endpoint
    # is clamped into the last nonempty interval.
    cdef Py_ssize_t lo = p - 1
    cdef Py_ssize_t hi = t.shape[0] - p - 1
    cdef Py_ssize_t mid
    if x >= t[hi + 1]:
        return hi
    if x <= t[lo]:
        return lo
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if t[mid] <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


cdef inline void _basis_funs(const double[::1] t, Py_ssize_t span, double x,
                             Py_ssize_t p, double* vals, double* left,
                             double* right) noexcept nogil:
    # de Boor's local algorithm; vals[0..p-1] are the nonzero functions
    # B_{span-p+1..span} (1-based) at x.
    cdef Py_ssize_t j, r
    cdef double saved, temp
    vals[0] = 1.0
    for j in range(1, p):
        left[j] = x - t[span + 1 - j]
        right[j] = t[span + j] - x
        saved = 0.0
        for r in range(j):
            temp = vals[r] / (right[r + 1] + left[j - r])
            vals[r] = saved + right[r + 1] * temp
            saved = left[j - r] * temp
        vals[j] = saved


def design_matrix(const double[::1] t, Py_ssize_t p, const double[::1] x):
    """Dense (len(x), K) B-spline design matrix on extended knots ``t``."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t K = t.shape[0] - p
    out_arr = np.zeros((n, K))
    cdef double[:, ::1] out = out_arr
    cdef double[64] vals
    cdef double[64] left
    cdef double[64] right
    cdef Py_ssize_t i, a, span, off
    with nogil:
        for i in range(n):
            span = _find_span(t, p, x[i])
            _basis_funs(t, span, x[i], p, vals, left, right)
            off = span - p + 1
            for a in range(p):
                out[i, off + a] = vals[a]
    return out_arr


def normal_eq(const double[::1] t, Py_ssize_t p, const double[::1] x,
              const double[::1] y):
    """Unnormalized pooled sums: (sum B B^T, sum B y), Kahan-compensated."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t K = t.shape[0] - p
    gram_arr = np.zeros((K, K))
    gcomp_arr = np.zeros((K, K))
    rhs_arr = np.zeros(K)
    rcomp_arr = np.zeros(K)
    cdef double[:, ::1] gram = gram_arr
    cdef double[:, ::1] gcomp = gcomp_arr
    cdef double[::1] rhs = rhs_arr
    cdef double[::1] rcomp = rcomp_arr
    cdef double[64] vals
    cdef double[64] left
    cdef double[64] right
    cdef Py_ssize_t i, a, b, ia, ib, span, off
    cdef double v, yy, tt
    with nogil:
        for i in range(n):
            span = _find_span(t, p, x[i])
            _basis_funs(t, span, x[i], p, vals, left, right)
            off = span - p + 1
            for a in range(p):
                ia = off + a
                v = vals[a] * y[i]
                yy = v - rcomp[ia]
                tt = rhs[ia] + yy
                rcomp[ia] = (tt - rhs[ia]) - yy
                rhs[ia] = tt
                for b in range(p):
                    ib = off + b
                    v = vals[a] * vals[b]
                    yy = v - gcomp[ia, ib]
                    tt = gram[ia, ib] + yy
                    gcomp[ia, ib] = (tt - gram[ia, ib]) - yy
                    gram[ia, ib] = tt
    return gram_arr, rhs_arr


def predict(const double[::1] t, Py_ssize_t p, const double[::1] x,
            const double[::1] theta):
    """Evaluate sum_l theta_l B_l(x) at each point."""
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double[64] vals
    cdef double[64] left
    cdef double[64] right
    cdef Py_ssize_t i, a, span, off
    cdef double acc
    with nogil:
        for i in range(n):
            span = _find_span(t, p, x[i])
            _basis_funs(t, span, x[i], p, vals, left, right)
            off = span - p + 1
            acc = 0.0
            for a in range(p):
                acc += vals[a] * theta[off + a]
            out[i] = acc
    return out_arr


def cov_raw(const double[::1] t, Py_ssize_t p, const double[::1] x,
            const double[::1] u, const long[::1] counts):
    """Raw covariance sums over subjects with residuals ``u``.

    Returns (sum_i s_i s_i^T, sum_ij B B^T u^2) where
    s_i = sum_j B(x_ij) u_ij; the cross-term sum over j != j' is the
    difference of the two.
    """
    cdef Py_ssize_t nsub = counts.shape[0]
    cdef Py_ssize_t K = t.shape[0] - p
    outer_arr = np.zeros((K, K))
    diag_arr = np.zeros((K, K))
    dcomp_arr = np.zeros((K, K))
    s_arr = np.empty(K)
    cdef double[:, ::1] outer = outer_arr
    cdef double[:, ::1] diag = diag_arr
    cdef double[:, ::1] dcomp = dcomp_arr
    cdef double[::1] s = s_arr
    cdef double[64] vals
    cdef double[64] left
    cdef double[64] right
    cdef Py_ssize_t i, j, a, b, ia, ib, span, off, pos = 0
    cdef double v, yy, tt
    with nogil:
        for i in range(nsub):
            for a in range(K):
                s[a] = 0.0
            for j in range(counts[i]):
                span = _find_span(t, p, x[pos])
                _basis_funs(t, span, x[pos], p, vals, left, right)
                off = span - p + 1
                for a in range(p):
                    ia = off + a
                    s[ia] += vals[a] * u[pos]
                    for b in range(p):
                        ib = off + b
                        v = vals[a] * vals[b] * u[pos] * u[pos]
                        yy = v - dcomp[ia, ib]
                        tt = diag[ia, ib] + yy
                        dcomp[ia, ib] = (tt - diag[ia, ib]) - yy
                        diag[ia, ib] = tt
                pos += 1
            for a in range(K):
                for b in range(K):
                    outer[a, b] += s[a] * s[b]
    return outer_arr, diag_arr
