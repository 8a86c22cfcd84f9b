"""Basis evaluation: algebraic identities, hand values, and domain checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scband.basis import (
    BSplineSpec,
    FourierSpec,
    KnotGrid,
    LegendreSpec,
    design_matrix,
    eval_basis,
    eval_bspline,
    eval_fourier,
    eval_legendre,
    make_knot_grid,
)
from scband.errors import DomainError

from conftest import gauss_grid


def test_knot_grid_equally_spaced():
    g = make_knot_grid(3)
    assert g.knots == (0.0, 0.25, 0.5, 0.75, 1.0)
    assert make_knot_grid(0).knots == (0.0, 1.0)


def test_knot_grid_rejects_negative():
    with pytest.raises(ValueError):
        KnotGrid(interior=-1)


def test_bspline_dimension_and_extended_knots():
    spec = BSplineSpec(order=4, grid=make_knot_grid(2))
    assert spec.dim == 6
    t = spec.extended_knots
    assert t.shape == (10,)
    np.testing.assert_allclose(t[:4], 0.0)
    np.testing.assert_allclose(t[-4:], 1.0)
    np.testing.assert_allclose(t[4:6], [1 / 3, 2 / 3])


@given(
    order=st.integers(1, 8),
    J=st.integers(0, 12),
    x=st.floats(0.0, 1.0, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_partition_of_unity(order, J, x):
    spec = BSplineSpec(order=order, grid=make_knot_grid(J))
    b = eval_bspline(spec, x)
    assert b.shape == (J + order,)
    assert np.all(b >= -1e-14)
    assert abs(b.sum() - 1.0) < 1e-12


def test_order_one_is_interval_indicator():
    spec = BSplineSpec(order=1, grid=make_knot_grid(3))
    np.testing.assert_allclose(eval_bspline(spec, 0.1), [1, 0, 0, 0])
    np.testing.assert_allclose(eval_bspline(spec, 0.30), [0, 1, 0, 0])
    # knots belong to the right interval; x = 1 closes into the last one
    np.testing.assert_allclose(eval_bspline(spec, 0.25), [0, 1, 0, 0])
    np.testing.assert_allclose(eval_bspline(spec, 1.0), [0, 0, 0, 1])


def test_linear_hat_function_hand_values():
    # order 2, one interior knot at 1/2: hats at 0, 1/2, 1
    spec = BSplineSpec(order=2, grid=make_knot_grid(1))
    np.testing.assert_allclose(eval_bspline(spec, 0.25), [0.5, 0.5, 0.0])
    np.testing.assert_allclose(eval_bspline(spec, 0.5), [0.0, 1.0, 0.0])
    np.testing.assert_allclose(eval_bspline(spec, 1.0), [0.0, 0.0, 1.0])


def test_cubic_matches_uniform_bspline_weights():
    # On a uniform grid away from the boundary, cubic B-splines at a knot
    # take the classical weights (1/6, 4/6, 1/6).
    spec = BSplineSpec(order=4, grid=make_knot_grid(7))
    b = eval_bspline(spec, 0.5)
    inz = np.nonzero(b > 1e-12)[0]
    np.testing.assert_allclose(b[inz], [1 / 6, 4 / 6, 1 / 6], atol=1e-12)


def test_local_support_width():
    spec = BSplineSpec(order=4, grid=make_knot_grid(9))
    b = eval_bspline(spec, 0.43)
    assert np.count_nonzero(b > 1e-14) <= 4


def test_bspline_continuity_across_knot():
    spec = BSplineSpec(order=4, grid=make_knot_grid(4))
    eps = 1e-9
    left = eval_bspline(spec, 0.4 - eps)
    right = eval_bspline(spec, 0.4 + eps)
    np.testing.assert_allclose(left, right, atol=1e-6)


def test_boundary_values():
    spec = BSplineSpec(order=4, grid=make_knot_grid(3))
    b0 = eval_bspline(spec, 0.0)
    b1 = eval_bspline(spec, 1.0)
    np.testing.assert_allclose(b0, np.eye(spec.dim)[0], atol=1e-14)
    np.testing.assert_allclose(b1, np.eye(spec.dim)[-1], atol=1e-14)


def test_fourier_hand_values():
    spec = FourierSpec(dim=5)
    r2 = np.sqrt(2.0)
    np.testing.assert_allclose(eval_fourier(spec, 0.0), [1, r2, 0, r2, 0], atol=1e-12)
    np.testing.assert_allclose(
        eval_fourier(spec, 0.25), [1, 0, r2, -r2, 0], atol=1e-12
    )


def test_fourier_rejects_even_dim():
    with pytest.raises(ValueError):
        FourierSpec(dim=4)


@pytest.mark.parametrize("dim", [1, 3, 5, 9])
def test_fourier_orthonormal(dim):
    x, w = gauss_grid(400)
    B = design_matrix(FourierSpec(dim=dim), x)
    G = (B * w[:, None]).T @ B
    np.testing.assert_allclose(G, np.eye(dim), atol=1e-10)


@pytest.mark.parametrize("dim", [1, 2, 5, 8])
def test_legendre_orthonormal(dim):
    x, w = gauss_grid(400)
    B = design_matrix(LegendreSpec(dim=dim), x)
    G = (B * w[:, None]).T @ B
    np.testing.assert_allclose(G, np.eye(dim), atol=1e-10)


def test_legendre_hand_values():
    spec = LegendreSpec(dim=3)
    # P0 = 1, P1 = sqrt(3)(2x-1), P2 = sqrt(5)(6x^2-6x+1)
    np.testing.assert_allclose(
        eval_legendre(spec, 1.0), [1.0, np.sqrt(3.0), np.sqrt(5.0)], atol=1e-12
    )
    np.testing.assert_allclose(
        eval_legendre(spec, 0.5), [1.0, 0.0, -np.sqrt(5.0) / 2.0], atol=1e-12
    )


def test_design_matrix_shape_and_dispatch():
    x = np.linspace(0, 1, 17)
    for spec in (BSplineSpec(order=3, grid=make_knot_grid(2)), FourierSpec(5), LegendreSpec(4)):
        D = design_matrix(spec, x)
        assert D.shape == (17, spec.dim)
        np.testing.assert_allclose(D[3], eval_basis(spec, x[3]))


def test_domain_violations_raise():
    spec = BSplineSpec()
    for bad in (-0.01, 1.01, np.nan, np.inf):
        with pytest.raises(DomainError):
            design_matrix(spec, [0.5, bad])


def test_unknown_spec_type_raises():
    with pytest.raises(TypeError):
        design_matrix(object(), [0.5])
