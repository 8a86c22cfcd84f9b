"""Simultaneous confidence bands for mean functions of discretely
observed random curves, valid from sparse to dense sampling."""

from ._kernels import BACKEND
from .band import BandConfig, BandResult, build_band, covers, simulate_quantile
from .basis import (
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
from .covariance import (
    CovarianceStructure,
    estimate_covariance,
    op_inf_norm,
    pointwise_scale,
    psd_sqrt,
)
from .fit import MeanFit, ObservationSet, fit_mean, predict, predict_many, residuals
from .io import DomainMap, ingest_csv
from .select import SelectionResult, bic, candidate_range, select_knots
from .simulate import (
    SimulationConfig,
    SimulationReport,
    gen_dataset,
    run_coverage,
    sample_counts,
    true_mean,
)

__version__ = "0.1.0"
