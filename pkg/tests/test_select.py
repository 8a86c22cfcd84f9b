"""BIC computation and candidate-scan behavior."""

import math

import numpy as np
import pytest

from scband.basis import BSplineSpec, FourierSpec, LegendreSpec, make_knot_grid
from scband.errors import NoFeasibleKnots
from scband.fit import ObservationSet, fit_mean, predict_many
from scband.select import bic, candidate_range, select_knots

from conftest import make_dataset


def test_candidate_range_hand_values():
    # 0.5 * 450^{1/6} = 1.388 -> 2;  2 * 450^{1/4} = 9.21 -> 9
    assert candidate_range(450) == (2, 9)
    # 0.5 * 60000^{1/6} = 3.12 -> 4;  2 * 60000^{1/4} = 31.3 -> 31
    assert candidate_range(60_000) == (4, 31)


def test_bic_formula_hand_check(rng):
    data = make_dataset(rng, n_subjects=10)
    spec = BSplineSpec(order=4, grid=make_knot_grid(2))
    fitted = fit_mean(data, spec)
    u = data.y - predict_many(fitted, data.x)
    total = data.total_obs
    expected = math.log(float(u @ u) / total) + 2 * math.log(total) / total
    assert bic(fitted, data) == pytest.approx(expected, rel=1e-12)
    # dimension-penalized variant swaps J=2 for K=6
    expected_k = math.log(float(u @ u) / total) + 6 * math.log(total) / total
    assert bic(fitted, data, penalize_dimension=True) == pytest.approx(
        expected_k, rel=1e-12
    )


def test_select_scans_range_and_caches_winner(rng):
    data = make_dataset(rng, n_subjects=40, count_lo=5, count_hi=10)
    result = select_knots(data, BSplineSpec(order=4))
    assert (result.jmin, result.jmax) == candidate_range(data.total_obs)
    scanned = [J for J, _, _ in result.candidates]
    assert scanned == list(range(result.jmin, result.jmax + 1))
    ok = {J: v for J, v, status in result.candidates if status == "ok"}
    assert result.chosen == min(ok, key=lambda J: (ok[J], J))
    assert result.fit is not None
    assert result.fit.spec.grid.interior == result.chosen


def test_select_picks_enough_knots_for_wiggly_truth(rng):
    wiggly = lambda x: np.sin(6.0 * np.pi * x)
    data = make_dataset(rng, n_subjects=60, count_lo=8, count_hi=14, curve=wiggly, sd=0.05)
    result = select_knots(data, BSplineSpec(order=4))
    assert result.chosen > result.jmin  # the flattest candidate underfits


def test_fourier_template_skips_even_dims(rng):
    data = make_dataset(rng, n_subjects=40, count_lo=5, count_hi=10)
    result = select_knots(data, FourierSpec(dim=3))
    assert all(J % 2 == 1 for J, _, _ in result.candidates)
    assert result.chosen % 2 == 1


def test_legendre_template_minimum_dimension_is_one(rng):
    subjects = [(rng.uniform(0, 1, 2), rng.standard_normal(2)) for _ in range(8)]
    data = ObservationSet.from_subjects(subjects)
    result = select_knots(data, LegendreSpec(dim=2))
    assert result.jmin >= 1


def test_singular_candidates_are_recorded_not_fatal(rng):
    # only 8 distinct design points: candidates with dim > 8 are rank
    # deficient and must be skipped, small J still fits
    shared = np.linspace(0.03, 0.97, 8)
    subjects = [(shared, rng.standard_normal(8)) for _ in range(40)]
    data = ObservationSet.from_subjects(subjects)
    result = select_knots(data, BSplineSpec(order=4))
    statuses = {status for _, _, status in result.candidates}
    assert "singular" in statuses and "ok" in statuses


def test_no_feasible_knots_raises(rng):
    subjects = [
        (np.full(30, 0.5), rng.standard_normal(30)) for _ in range(40)
    ]
    data = ObservationSet.from_subjects(subjects)
    with pytest.raises(NoFeasibleKnots):
        select_knots(data, BSplineSpec(order=4))
