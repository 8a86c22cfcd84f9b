"""BIC-driven choice of the basis dimension.

The criterion is log of the mean squared residual plus J log(nNbar)/(nNbar),
penalizing the interior-knot count J (spline) or the series dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .basis import BSplineSpec, FourierSpec, LegendreSpec, make_knot_grid
from .errors import DesignSingular, NoFeasibleKnots
from .fit import MeanFit, ObservationSet, fit_mean, predict_many

__all__ = ["SelectionResult", "bic", "select_knots", "candidate_range"]

_SSE_FLOOR = 1e-300


@dataclass(frozen=True)
class SelectionResult:
    """Candidate table and the BIC-minimizing dimension."""

    candidates: list  # (J, bic or None, status) triples
    chosen: int
    jmin: int
    jmax: int
    fit: MeanFit = None


def _complexity(spec) -> int:
    return spec.grid.interior if isinstance(spec, BSplineSpec) else spec.dim


def bic(fit: MeanFit, data: ObservationSet, penalize_dimension: bool = False) -> float:
    """BIC of a fitted mean; ``penalize_dimension`` swaps J for the full
    parameter count K (off by default)."""
    u = data.y - predict_many(fit, data.x)
    msr = max(float(u @ u) / data.total_obs, _SSE_FLOOR)
    count = fit.spec.dim if penalize_dimension else _complexity(fit.spec)
    total = data.total_obs
    return math.log(msr) + count * math.log(total) / total


def candidate_range(total_obs: int) -> tuple:
    """Integer range [ceil(0.5 (nNbar)^{1/6}), floor(2 (nNbar)^{1/4})]."""
    jmin = math.ceil(0.5 * total_obs ** (1.0 / 6.0))
    jmax = math.floor(2.0 * total_obs ** 0.25)
    return jmin, jmax


def _with_complexity(template, J: int):
    if isinstance(template, BSplineSpec):
        return replace(template, grid=make_knot_grid(J))
    return replace(template, dim=J)


def select_knots(
    data: ObservationSet, template=None, penalize_dimension: bool = False
) -> SelectionResult:
    """Fit every candidate dimension and keep the BIC argmin.

    Singular candidates are recorded as failed and skipped; ties break
    toward the smaller dimension. For a Fourier template only odd
    dimensions are eligible.
    """
    if template is None:
        template = BSplineSpec()
    jmin, jmax = candidate_range(data.total_obs)
    if isinstance(template, (FourierSpec, LegendreSpec)):
        jmin = max(jmin, 1)
    candidates = []
    best = None
    for J in range(jmin, jmax + 1):
        if isinstance(template, FourierSpec) and J % 2 == 0:
            continue
        spec = _with_complexity(template, J)
        try:
            fitted = fit_mean(data, spec)
        except DesignSingular:
            candidates.append((J, None, "singular"))
            continue
        value = bic(fitted, data, penalize_dimension=penalize_dimension)
        candidates.append((J, value, "ok"))
        if best is None or value < best[1]:
            best = (J, value, fitted)
    if best is None:
        raise NoFeasibleKnots(
            f"all candidate dimensions in [{jmin}, {jmax}] failed to fit"
        )
    return SelectionResult(
        candidates=candidates, chosen=best[0], jmin=jmin, jmax=jmax, fit=best[2]
    )
