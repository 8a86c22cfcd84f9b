"""Synthetic functional data and Monte Carlo coverage experiments.

Curves follow a four-component Karhunen-Loeve expansion around a fixed
smooth mean, observed at uniform design points with homoscedastic or
heteroscedastic measurement error. Four sampling schemes sweep the
per-subject observation count from sparse to dense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .band import BandConfig, build_band, covers
from .basis import BSplineSpec
from .covariance import estimate_covariance, op_inf_norm
from .errors import EmptySupport, NoFeasibleKnots
from .fit import ObservationSet
from .select import select_knots

__all__ = [
    "SCORE_DISTRIBUTIONS",
    "SimulationConfig",
    "RepRecord",
    "SimulationReport",
    "true_mean",
    "eigenvalues",
    "eigenfunction",
    "noise_sd",
    "sample_counts",
    "gen_dataset",
    "run_coverage",
]

_LAMBDAS = (1.0, 0.5, 0.25, 0.125)  # 2^{1-k}, k = 1..4


def true_mean(x):
    """Simulation truth: 1.5 sin(3 pi (x + 1/2)) + 2 x^3."""
    x = np.asarray(x, dtype=float)
    return 1.5 * np.sin(3.0 * np.pi * (x + 0.5)) + 2.0 * x**3


def eigenvalues() -> np.ndarray:
    return np.array(_LAMBDAS)


def eigenfunction(k: int, x) -> np.ndarray:
    """k-th orthonormal eigenfunction (1-based): alternating sin/cos pairs."""
    x = np.asarray(x, dtype=float)
    freq = 2.0 * np.pi * ((k + 1) // 2)
    if k % 2 == 1:
        return np.sqrt(2.0) * np.sin(freq * x)
    return np.sqrt(2.0) * np.cos(freq * x)


def _draw_normal(rng, size):
    return rng.standard_normal(size)


def _draw_uniform(rng, size):
    s = math.sqrt(3.0)
    return rng.uniform(-s, s, size)


def _draw_laplace(rng, size):
    # density 2^{-1/2} exp(-sqrt(2)|x|): unit variance
    return rng.laplace(0.0, 1.0 / math.sqrt(2.0), size)


SCORE_DISTRIBUTIONS = {
    "normal": _draw_normal,
    "uniform": _draw_uniform,
    "laplace": _draw_laplace,
}


def noise_sd(x, sigma_eps: float, heteroscedastic: bool):
    """Error standard deviation sigma(x)."""
    x = np.asarray(x, dtype=float)
    if heteroscedastic:
        e = np.exp(-x)
        return 1.2 * sigma_eps * (5.0 - e) / (5.0 + e)
    return np.full_like(x, sigma_eps)


def _count_support(setting: int, n: int) -> tuple:
    if setting == 1:
        return 3, 6
    if setting == 2:
        return math.floor(2.0 * n**0.2), math.floor(4.0 * n**0.2)
    if setting == 3:
        return math.floor(n**0.5), math.floor(2.0 * n**0.5)
    if setting == 4:
        return n // 4, n // 2
    raise ValueError(f"sampling setting must be 1-4, got {setting}")


def sample_counts(setting: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. per-subject observation counts for the given scheme."""
    lo, hi = _count_support(setting, n)
    if lo < 1 or hi < lo:
        raise EmptySupport(f"setting {setting} has empty count support for n={n}")
    return rng.integers(lo, hi + 1, size=n)


@dataclass(frozen=True)
class SimulationConfig:
    """One Monte Carlo experiment: sampling scheme, distributions, sizes."""

    setting: int = 1
    n: int = 100
    score_dist: str = "normal"
    error_dist: str = "normal"
    heteroscedastic: bool = False
    sigma_eps: float = 0.1
    reps: int = 500
    band: BandConfig = field(default_factory=BandConfig)
    seed: int = 0
    spline_order: int = 4
    lambdas: tuple = _LAMBDAS  # test hook: force zero curve variance

    def __post_init__(self):
        if self.n < 10:
            raise ValueError("need at least 10 subjects")
        if self.reps < 1:
            raise ValueError("need at least one replication")
        if self.setting not in (1, 2, 3, 4):
            raise ValueError(f"sampling setting must be 1-4, got {self.setting}")
        for name in (self.score_dist, self.error_dist):
            if name not in SCORE_DISTRIBUTIONS:
                raise ValueError(f"unknown distribution {name!r}")


def _rep_rng(seed: int, rep: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(rep, 0)))
    )


def _rep_band_seed(seed: int, rep: int) -> int:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(rep, 1))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def gen_dataset(cfg: SimulationConfig, rep: int = 0) -> ObservationSet:
    """One synthetic sample; deterministic in (cfg.seed, rep)."""
    rng = _rep_rng(cfg.seed, rep)
    counts = sample_counts(cfg.setting, cfg.n, rng)
    score_draw = SCORE_DISTRIBUTIONS[cfg.score_dist]
    error_draw = SCORE_DISTRIBUTIONS[cfg.error_dist]
    lams = np.asarray(cfg.lambdas, dtype=float)
    subjects = []
    for n_i in counts:
        x = rng.uniform(0.0, 1.0, int(n_i))
        scores = score_draw(rng, lams.size)
        eps = error_draw(rng, int(n_i))
        y = true_mean(x)
        for k in range(lams.size):
            y = y + math.sqrt(lams[k]) * scores[k] * eigenfunction(k + 1, x)
        y = y + noise_sd(x, cfg.sigma_eps, cfg.heteroscedastic) * eps
        subjects.append((x, y))
    return ObservationSet.from_subjects(subjects)


@dataclass(frozen=True)
class RepRecord:
    """Outcome of one replication."""

    rep: int
    status: str  # "ok" or "infeasible"
    chosen_j: int = -1
    qhat: float = float("nan")
    covered: bool = False
    norm_sigma1: float = float("nan")
    norm_sigma2: float = float("nan")


@dataclass(frozen=True)
class SimulationReport:
    """Aggregated coverage and covariance-norm diagnostics."""

    config: SimulationConfig
    records: list
    coverage: float
    mean_norm_sigma1: float
    mean_norm_sigma2: float
    n_failed: int


def run_replication(cfg: SimulationConfig, rep: int, template=None) -> RepRecord:
    """Generate, select, fit, band, and score one replication."""
    if template is None:
        template = BSplineSpec(order=cfg.spline_order)
    data = gen_dataset(cfg, rep)
    try:
        selection = select_knots(data, template)
    except NoFeasibleKnots:
        return RepRecord(rep=rep, status="infeasible")
    fitted = selection.fit
    cov = estimate_covariance(fitted, data)
    band_cfg = BandConfig(
        alpha=cfg.band.alpha,
        draws=cfg.band.draws,
        grid_size=cfg.band.grid_size,
        seed=_rep_band_seed(cfg.seed, rep),
    )
    band = build_band(fitted, cov, band_cfg, data)
    return RepRecord(
        rep=rep,
        status="ok",
        chosen_j=selection.chosen,
        qhat=band.qhat,
        covered=covers(band, true_mean),
        norm_sigma1=op_inf_norm(cov.sigma1),
        norm_sigma2=op_inf_norm(cov.sigma2),
    )


def run_coverage(cfg: SimulationConfig, template=None, progress=None) -> SimulationReport:
    """Monte Carlo loop over cfg.reps replications."""
    records = []
    for rep in range(cfg.reps):
        records.append(run_replication(cfg, rep, template))
        if progress is not None:
            progress(rep + 1, cfg.reps)
    ok = [r for r in records if r.status == "ok"]
    n_failed = len(records) - len(ok)
    if ok:
        coverage = sum(r.covered for r in ok) / len(ok)
        mean1 = float(np.mean([r.norm_sigma1 for r in ok]))
        mean2 = float(np.mean([r.norm_sigma2 for r in ok]))
    else:
        coverage, mean1, mean2 = float("nan"), float("nan"), float("nan")
    return SimulationReport(
        config=cfg,
        records=records,
        coverage=coverage,
        mean_norm_sigma1=mean1,
        mean_norm_sigma2=mean2,
        n_failed=n_failed,
    )
