"""Simultaneous confidence band via Gaussian multiplier simulation.

The sup-norm quantile of the normalized process is approximated by
simulating B Gaussian vectors with covariance Sigma-hat and taking the
empirical upper-alpha quantile of the grid supremum.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .basis import design_matrix
from .covariance import CovarianceStructure, _SCALE_FLOOR
from .errors import AllDegenerate
from .fit import MeanFit, ObservationSet, predict_many

__all__ = ["BandConfig", "BandResult", "simulate_quantile", "build_band", "covers"]


@dataclass(frozen=True)
class BandConfig:
    """Knobs for quantile simulation and band evaluation."""

    alpha: float = 0.05
    draws: int = 500
    grid_size: int = 1000
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.draws < 100:
            raise ValueError("at least 100 multiplier draws are required")
        if self.grid_size < 50:
            raise ValueError("grid must have at least 50 points")


@dataclass(frozen=True)
class BandResult:
    """Evaluation grid, fitted mean, scale, quantile, and band bounds."""

    grid: np.ndarray
    mhat: np.ndarray
    scale: np.ndarray
    qhat: float
    lower: np.ndarray
    upper: np.ndarray
    alpha: float
    draws: int
    seed: int


def _grid_points(m: int) -> np.ndarray:
    return (np.arange(m) + 0.5) / m


def _multiplier_draws(sqrt_sigma: np.ndarray, draws: int, seed: int) -> np.ndarray:
    """K x draws matrix of N(0, Sigma) vectors, one substream per draw."""
    k = sqrt_sigma.shape[0]
    w = np.empty((k, draws))
    for b in range(draws):
        gen = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(b,)))
        )
        w[:, b] = gen.standard_normal(k)
    return sqrt_sigma @ w


def _scale_on_grid(fit: MeanFit, cov: CovarianceStructure, grid: np.ndarray):
    bg = design_matrix(fit.spec, grid)
    scale = np.linalg.norm(cov.sqrt_sigma @ bg.T, axis=0)
    ok = scale >= _SCALE_FLOOR
    if not np.any(ok):
        raise AllDegenerate("estimated covariance annihilates the basis on the whole grid")
    if not np.all(ok):
        warnings.warn(
            f"band undefined at {np.count_nonzero(~ok)} grid points with degenerate scale",
            stacklevel=3,
        )
    return bg, scale, ok

def simulate_quantile(fit: MeanFit, cov: CovarianceStructure, cfg: BandConfig) -> float:
    """Empirical upper-alpha quantile of the simulated sup statistic."""
    grid = _grid_points(cfg.grid_size)
    bg, scale, ok = _scale_on_grid(fit, cov, grid)
    z = _multiplier_draws(cov.sqrt_sigma, cfg.draws, cfg.seed)
    ratios = np.abs(bg[ok] @ z) / scale[ok, None]
    sups = np.sort(ratios.max(axis=0))
    rank = int(np.ceil((1.0 - cfg.alpha) * cfg.draws))
    return float(sups[rank - 1])


def build_band(
    fit: MeanFit, cov: CovarianceStructure, cfg: BandConfig, data: ObservationSet = None
) -> BandResult:
    """SCB: mhat(x) +- qhat * scale(x) / sqrt(n) on the midpoint grid."""
    grid = _grid_points(cfg.grid_size)
    _, scale, ok = _scale_on_grid(fit, cov, grid)
    qhat = simulate_quantile(fit, cov, cfg)
    mhat = predict_many(fit, grid)
    half = np.where(ok, qhat * scale / np.sqrt(fit.n), np.nan)
    return BandResult(
        grid=grid,
        mhat=mhat,
        scale=scale,
        qhat=qhat,
        lower=mhat - half,
        upper=mhat + half,
        alpha=cfg.alpha,
        draws=cfg.draws,
        seed=cfg.seed,
    )


def covers(band: BandResult, f) -> bool:
    """True iff f stays inside the band at every defined grid point."""
    try:
        vals = np.asarray(f(band.grid), dtype=float)
        if vals.shape != band.grid.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([float(f(x)) for x in band.grid])
    ok = ~np.isnan(band.lower)
    return bool(np.all((band.lower[ok] <= vals[ok]) & (vals[ok] <= band.upper[ok])))
