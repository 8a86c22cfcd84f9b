"""Shared fixtures and brute-force oracles for the test suite.

The oracles here deliberately use the slowest, most transparent
formulation available (dense design matrices, explicit double loops)
so the optimized library code is checked against independent arithmetic.
"""

import numpy as np
import pytest

from scband.basis import design_matrix
from scband.fit import ObservationSet


def make_dataset(rng, n_subjects=12, count_lo=3, count_hi=8, curve=None, sd=0.3):
    """Small random longitudinal sample with a smooth default mean."""
    if curve is None:
        curve = lambda x: np.sin(2.0 * np.pi * x) + x
    subjects = []
    for _ in range(n_subjects):
        m = int(rng.integers(count_lo, count_hi + 1))
        x = rng.uniform(0.0, 1.0, m)
        y = curve(x) + sd * rng.standard_normal(m)
        subjects.append((x, y))
    return ObservationSet.from_subjects(subjects)


def dense_normal_solve(spec, data):
    """Least-squares oracle: explicit design matrix + lstsq."""
    D = design_matrix(spec, data.x)
    theta, *_ = np.linalg.lstsq(D, data.y, rcond=None)
    return theta


def pairwise_covariance_oracle(spec, data, theta):
    """O(total^2) double-loop assembly of the two raw covariance sums.

    raw1 sums B(X_ij) B(X_ij')^T u_ij u_ij' over distinct j != j' within
    each subject; raw2 sums the j = j' diagonal. Both are divided by
    n * Nbar^2, then wrapped in Gram inverses by the caller.
    """
    K = spec.dim
    raw1 = np.zeros((K, K))
    raw2 = np.zeros((K, K))
    for i in range(data.n_subjects):
        x, y = data.subject(i)
        B = design_matrix(spec, x)
        u = y - B @ theta
        for j in range(x.size):
            for jp in range(x.size):
                block = np.outer(B[j], B[jp]) * u[j] * u[jp]
                if j == jp:
                    raw2 += block
                else:
                    raw1 += block
    scale = 1.0 / (data.total_obs * data.nbar)
    return raw1 * scale, raw2 * scale


def gauss_grid(npts=200):
    """Gauss-Legendre nodes/weights mapped to [0, 1] for L2 inner products."""
    u, w = np.polynomial.legendre.leggauss(npts)
    return (u + 1.0) / 2.0, w / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def pytest_terminal_summary(terminalreporter):
    """Print one PASS/FAIL line per acceptance criterion, in order."""
    try:
        from test_acceptance import RESULTS
    except ImportError:  # pragma: no cover
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
