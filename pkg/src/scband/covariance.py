"""Plug-in covariance of the normalized mean estimator.

The two components split the pooled residual sums: the diagonal term
(same design point) and the within-subject cross term (distinct points).
The cross term is assembled as each subject's full outer product minus
its diagonal block, which costs O(N_i) per subject instead of O(N_i^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .basis import BSplineSpec, design_matrix, eval_basis
from .errors import DegenerateScale, NotPSD
from .fit import MeanFit, ObservationSet, predict_many

__all__ = [
    "CovarianceStructure",
    "estimate_covariance",
    "psd_sqrt",
    "op_inf_norm",
    "pointwise_scale",
]

_CLIP_RTOL = 1e-12
_PSD_RTOL = 1e-8
_SCALE_FLOOR = 1e-14


@dataclass(frozen=True)
class CovarianceStructure:
    """Sigma-hat = cross-term + diagonal-term, with a PSD square root."""

    sigma1: np.ndarray
    sigma2: np.ndarray
    sigma: np.ndarray
    sqrt_sigma: np.ndarray
    n: int
    nbar: float

    @property
    def dim(self) -> int:
        return self.sigma.shape[0]


def _symmetrize(M: np.ndarray) -> np.ndarray:
    return (M + M.T) / 2.0


def psd_sqrt(M: np.ndarray) -> np.ndarray:
    """Symmetric PSD square root via eigendecomposition.

    Eigenvalues below _CLIP_RTOL * lambda_max are treated as rounding
    noise and clipped to zero; genuinely negative spectra raise NotPSD.
    """
    M = np.asarray(M, dtype=float)
    vals, vecs = np.linalg.eigh(_symmetrize(M))
    vmax = float(np.max(np.abs(vals))) if vals.size else 0.0
    if vals.size and np.min(vals) < -_PSD_RTOL * max(vmax, 1e-300):
        raise NotPSD(f"eigenvalue {np.min(vals):.3e} below the PSD floor")
    vals = np.where(vals < _CLIP_RTOL * vmax, 0.0, vals)
    return _symmetrize((vecs * np.sqrt(vals)) @ vecs.T)


def op_inf_norm(M: np.ndarray) -> float:
    """L-infinity operator norm: maximum absolute row sum."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return float(np.max(np.sum(np.abs(M), axis=1))) if M.size else 0.0


def estimate_covariance(fit: MeanFit, data: ObservationSet) -> CovarianceStructure:
    """Plug-in estimate of the covariance components from fit residuals."""
    u = data.y - predict_many(fit, data.x)
    if isinstance(fit.spec, BSplineSpec):
        outer, diag = _kernels.cov_raw(
            fit.spec.extended_knots, fit.spec.order, data.x, u, data.counts
        )
    else:
        D = design_matrix(fit.spec, data.x)
        W = D * u[:, None]
        S = np.add.reduceat(W, data.offsets, axis=0)
        outer, diag = S.T @ S, W.T @ W
    scale = 1.0 / (data.total_obs * data.nbar)  # 1 / (n * Nbar^2)
    raw1 = (outer - diag) * scale
    raw2 = diag * scale

    def sandwich(raw):
        half = fit.solve_gram(raw)
        return _symmetrize(fit.solve_gram(half.T).T)

    sigma1 = sandwich(raw1)
    sigma2 = sandwich(raw2)
    sigma = _symmetrize(sigma1 + sigma2)
    return CovarianceStructure(
        sigma1=sigma1,
        sigma2=sigma2,
        sigma=sigma,
        sqrt_sigma=psd_sqrt(sigma),
        n=data.n_subjects,
        nbar=data.nbar,
    )


def pointwise_scale(fit: MeanFit, cov: CovarianceStructure, x: float) -> float:
    """Standard-deviation scale || Sigma^{1/2} B(x) ||_2 at one point."""
    val = float(np.linalg.norm(cov.sqrt_sigma @ eval_basis(fit.spec, x)))
    if val < _SCALE_FLOOR:
        raise DegenerateScale(f"band scale degenerate at x={x}")
    return val
