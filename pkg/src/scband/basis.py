"""Basis systems on the unit interval.

Three families share one evaluation interface: B-splines of arbitrary
order on equally-spaced interior knots, the unit-normalized Fourier
system, and shifted Legendre polynomials orthonormal on [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError

__all__ = [
    "KnotGrid",
    "BSplineSpec",
    "FourierSpec",
    "LegendreSpec",
    "make_knot_grid",
    "eval_bspline",
    "eval_fourier",
    "eval_legendre",
    "eval_basis",
    "design_matrix",
]


@dataclass(frozen=True)
class KnotGrid:
    """Equally-spaced knots 0 = t_0 < t_1 < ... < t_{J+1} = 1."""

    interior: int
    knots: tuple = field(default=None)

    def __post_init__(self):
        if self.interior < 0:
            raise ValueError("interior knot count must be nonnegative")
        if self.knots is None:
            J = self.interior
            object.__setattr__(
                self, "knots", tuple(l / (J + 1) for l in range(J + 2))
            )


def make_knot_grid(J: int) -> KnotGrid:
    """Grid with J interior knots at l/(J+1)."""
    return KnotGrid(interior=J)


@dataclass(frozen=True)
class BSplineSpec:
    """Order-p spline space on an equally-spaced grid; dimension J + p."""

    order: int = 4
    grid: KnotGrid = field(default_factory=lambda: make_knot_grid(0))

    def __post_init__(self):
        if not 1 <= self.order <= 32:
            raise ValueError("spline order must be in [1, 32]")

    @property
    def dim(self) -> int:
        return self.grid.interior + self.order

    @property
    def extended_knots(self) -> np.ndarray:
        """Knot vector with boundary knots repeated ``order`` times."""
        p = self.order
        inner = self.grid.knots[1:-1]
        return np.concatenate((np.zeros(p), inner, np.ones(p)))


@dataclass(frozen=True)
class FourierSpec:
    """1, sqrt(2)cos(2pi x), sqrt(2)sin(2pi x), ... with unit L2 norms."""

    dim: int = 3

    def __post_init__(self):
        if self.dim < 1 or self.dim % 2 == 0:
            raise ValueError("Fourier dimension must be a positive odd integer")


@dataclass(frozen=True)
class LegendreSpec:
    """Shifted Legendre polynomials, orthonormal w.r.t. Lebesgue on [0, 1]."""

    dim: int = 3

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("Legendre dimension must be positive")


def _check_domain(x: np.ndarray):
    if x.size and (np.min(x) < 0.0 or np.max(x) > 1.0 or not np.all(np.isfinite(x))):
        raise DomainError("evaluation points must lie in [0, 1]")


def _bspline_design(spec: BSplineSpec, x: np.ndarray) -> np.ndarray:
    return _kernels.design_matrix(spec.extended_knots, spec.order, x)


def _fourier_design(spec: FourierSpec, x: np.ndarray) -> np.ndarray:
    out = np.empty((x.shape[0], spec.dim))
    out[:, 0] = 1.0
    root2 = np.sqrt(2.0)
    for k in range(1, (spec.dim + 1) // 2):
        out[:, 2 * k - 1] = root2 * np.cos(2.0 * np.pi * k * x)
        out[:, 2 * k] = root2 * np.sin(2.0 * np.pi * k * x)
    return out

def _legendre_design(spec: LegendreSpec, x: np.ndarray) -> np.ndarray:
    # Three-term recurrence on u = 2x - 1 via legvander, then scale each
    # degree-k column by sqrt(2k + 1) for unit norm on [0, 1].
    V = np.polynomial.legendre.legvander(2.0 * x - 1.0, spec.dim - 1)
    return V * np.sqrt(2.0 * np.arange(spec.dim) + 1.0)


def design_matrix(spec, x) -> np.ndarray:
    """Row-per-point basis matrix of shape (len(x), spec.dim)."""
    x = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)))
    _check_domain(x)
    if isinstance(spec, BSplineSpec):
        return _bspline_design(spec, x)
    if isinstance(spec, FourierSpec):
        return _fourier_design(spec, x)
    if isinstance(spec, LegendreSpec):
        return _legendre_design(spec, x)
    raise TypeError(f"unknown basis spec {type(spec).__name__}")


def eval_bspline(spec: BSplineSpec, x: float) -> np.ndarray:
    """Nonzero-padded B-spline basis vector B(x) of length J + p."""
    return design_matrix(spec, float(x))[0]


def eval_fourier(spec: FourierSpec, x: float) -> np.ndarray:
    """Fourier basis vector of length J (odd)."""
    return design_matrix(spec, float(x))[0]


def eval_legendre(spec: LegendreSpec, x: float) -> np.ndarray:
    """Shifted-Legendre basis vector of length J."""
    return design_matrix(spec, float(x))[0]


def eval_basis(spec, x: float) -> np.ndarray:
    """Evaluate whichever basis ``spec`` describes at a single point."""
    return design_matrix(spec, float(x))[0]
