"""Pooled least-squares estimation of the mean function.

All subjects' design points are pooled into one regression onto the basis;
the normal equations are scaled by 1/(n * Nbar) so the Gram matrix is the
empirical inner-product matrix under the pooled design measure.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from . import _kernels
from .basis import BSplineSpec, design_matrix
from .errors import DesignSingular, DomainError

__all__ = ["ObservationSet", "MeanFit", "fit_mean", "predict", "predict_many", "residuals"]

_PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class ObservationSet:
    """Ragged longitudinal sample, stored subject-contiguously.

    ``x`` and ``y`` are the concatenated design points and responses;
    ``counts[i]`` observations belong to subject i.
    """

    x: np.ndarray
    y: np.ndarray
    counts: np.ndarray

    @classmethod
    def from_subjects(cls, subjects) -> "ObservationSet":
        """Build from an iterable of (x_i, y_i) pairs."""
        xs, ys, counts = [], [], []
        for xi, yi in subjects:
            xi = np.asarray(xi, dtype=float)
            yi = np.asarray(yi, dtype=float)
            if xi.shape != yi.shape or xi.ndim != 1 or xi.size == 0:
                raise ValueError("each subject needs matching nonempty x and y vectors")
            xs.append(xi)
            ys.append(yi)
            counts.append(xi.size)
        if not counts:
            raise ValueError("at least one subject is required")
        obs = cls(
            x=np.ascontiguousarray(np.concatenate(xs)),
            y=np.ascontiguousarray(np.concatenate(ys)),
            counts=np.asarray(counts, dtype=np.int64),
        )
        if obs.x.size and (obs.x.min() < 0.0 or obs.x.max() > 1.0):
            raise DomainError("design points must lie in [0, 1]")
        return obs

    @property
    def n_subjects(self) -> int:
        return len(self.counts)

    @property
    def total_obs(self) -> int:
        return int(self.counts.sum())

    @property
    def nbar(self) -> float:
        return self.total_obs / self.n_subjects

    @property
    def offsets(self) -> np.ndarray:
        return np.concatenate(([0], np.cumsum(self.counts)[:-1]))

    def subject(self, i: int):
        """Views (x_i, y_i) for subject i."""
        start = int(self.offsets[i])
        stop = start + int(self.counts[i])
        return self.x[start:stop], self.y[start:stop]

    def split_ragged(self, values: np.ndarray):
        """Split a pooled-length vector back into per-subject arrays."""
        return np.split(np.asarray(values), np.cumsum(self.counts)[:-1])


@dataclass(frozen=True)
class MeanFit:
    """Fitted basis coefficients with the pooled Gram matrix and its factor."""

    spec: object
    theta: np.ndarray
    gram: np.ndarray
    gram_chol: tuple = field(repr=False)
    n: int = 0
    nbar: float = 0.0

    def solve_gram(self, rhs: np.ndarray) -> np.ndarray:
        """Solve gram @ z = rhs using the cached Cholesky factor."""
        return cho_solve(self.gram_chol, rhs)


def _factor_gram(gram: np.ndarray):
    maxdiag = float(np.max(np.diag(gram))) if gram.size else 0.0
    try:
        chol = cho_factor(gram, lower=True)
    except np.linalg.LinAlgError as exc:
        raise DesignSingular(str(exc)) from exc
    except ValueError as exc:  # scipy raises ValueError on non-finite input
        raise DesignSingular(str(exc)) from exc
    pivots = np.diag(chol[0]) ** 2
    if np.min(pivots) < _PIVOT_RTOL * maxdiag:
        raise DesignSingular(
            f"smallest Cholesky pivot {np.min(pivots):.3e} below "
            f"{_PIVOT_RTOL:.0e} * max diagonal; too many basis functions "
            "for the observed design points"
        )
    return chol


def fit_mean(data: ObservationSet, spec) -> MeanFit:
    """Least-squares fit of the pooled regression onto ``spec``."""
    if spec.dim > data.total_obs:
        raise DesignSingular(
            f"basis dimension {spec.dim} exceeds total observation count {data.total_obs}"
        )
    if np.any(data.counts == 1):
        warnings.warn(
            "subjects with a single observation contribute to the mean fit "
            "and the diagonal covariance term only",
            stacklevel=2,
        )
    scale = 1.0 / data.total_obs
    if isinstance(spec, BSplineSpec):
        gram_sum, rhs_sum = _kernels.normal_eq(
            spec.extended_knots, spec.order, data.x, data.y
        )
    else:
        D = design_matrix(spec, data.x)
        gram_sum, rhs_sum = D.T @ D, D.T @ data.y
    gram = gram_sum * scale
    rhs = rhs_sum * scale
    chol = _factor_gram(gram)
    theta = cho_solve(chol, rhs)
    resid_norm = np.linalg.norm(gram @ theta - rhs)
    if resid_norm > 1e-10 * max(np.linalg.norm(rhs), 1e-300):
        raise DesignSingular(
            f"normal equations solved to relative residual {resid_norm:.3e} only"
        )
    return MeanFit(
        spec=spec,
        theta=theta,
        gram=gram,
        gram_chol=chol,
        n=data.n_subjects,
        nbar=data.nbar,
    )


def predict_many(fit: MeanFit, x) -> np.ndarray:
    """Fitted mean at an array of points in [0, 1]."""
    x = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)))
    if x.size and (x.min() < 0.0 or x.max() > 1.0):
        raise DomainError("prediction points must lie in [0, 1]")
    if isinstance(fit.spec, BSplineSpec):
        return _kernels.predict(fit.spec.extended_knots, fit.spec.order, x, fit.theta)
    return design_matrix(fit.spec, x) @ fit.theta


def predict(fit: MeanFit, x: float) -> float:
    """Fitted mean at a single point."""
    return float(predict_many(fit, float(x))[0])


def residuals(fit: MeanFit, data: ObservationSet):
    """Per-subject residual arrays Y_ij - mhat(X_ij)."""
    pooled = data.y - predict_many(fit, data.x)
    return data.split_ragged(pooled)
