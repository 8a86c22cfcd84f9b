"""Command-line front end: band construction, knot selection, simulations."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from .band import BandConfig, build_band
from .basis import BSplineSpec, FourierSpec, LegendreSpec, make_knot_grid
from .covariance import estimate_covariance, op_inf_norm
from .errors import ScbandError
from .fit import fit_mean
from .io import ingest_csv
from .select import select_knots
from .simulate import SimulationConfig, run_coverage
from .svg import band_svg

__all__ = ["main"]


def _basis_template(name: str, order: int):
    if name == "bspline":
        return BSplineSpec(order=order)
    if name == "fourier":
        return FourierSpec(dim=3)
    if name == "legendre":
        return LegendreSpec(dim=3)
    raise ValueError(f"unknown basis {name!r}")


def _parse_domain(text):
    if text is None:
        return None
    lo, hi = (float(v) for v in text.split(","))
    return lo, hi


def _add_io_args(sub):
    sub.add_argument("--input", required=True, help="long-format CSV path")
    sub.add_argument("--output-dir", default=".", help="directory for artifacts")
    sub.add_argument("--x-col", default="x")
    sub.add_argument("--y-col", default="y")
    sub.add_argument("--id-col", default="id")
    sub.add_argument("--domain", default=None, help="raw design domain as 'lo,hi'")
    sub.add_argument(
        "--basis", default="bspline", choices=("bspline", "fourier", "legendre")
    )
    sub.add_argument("--order", type=int, default=4, help="spline order p")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="scband",
        description="Simultaneous confidence bands for mean functions of "
        "sparsely-to-densely observed curves.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    band = subs.add_parser("band", help="fit and write a simultaneous confidence band")
    _add_io_args(band)
    band.add_argument("--alpha", type=float, default=0.05)
    band.add_argument("--boot", type=int, default=500, help="multiplier replications")
    band.add_argument("--grid", type=int, default=1000, help="evaluation grid size")
    band.add_argument("--seed", type=int, default=0)
    band.add_argument("--knots", type=int, default=None, help="fix J instead of BIC")
    band.add_argument("--plot", action="store_true", help="also emit an SVG figure")

    sel = subs.add_parser("select", help="print the BIC candidate table")
    _add_io_args(sel)

    sim = subs.add_parser("simulate", help="run a Monte Carlo coverage study")
    sim.add_argument("--setting", type=int, default=1, help="sampling scheme 1-4")
    sim.add_argument("--n", type=int, default=100)
    sim.add_argument("--score-dist", default="normal", choices=("normal", "uniform", "laplace"))
    sim.add_argument("--error-dist", default="normal", choices=("normal", "uniform", "laplace"))
    sim.add_argument("--hetero", action="store_true")
    sim.add_argument("--sigma-eps", type=float, default=0.1)
    sim.add_argument("--reps", type=int, default=500)
    sim.add_argument("--alpha", type=float, default=0.05)
    sim.add_argument("--boot", type=int, default=500)
    sim.add_argument("--grid", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--output-dir", default=".")
    return parser


def _load(args):
    return ingest_csv(
        args.input,
        x_col=args.x_col,
        y_col=args.y_col,
        id_col=args.id_col,
        domain=_parse_domain(args.domain),
    )


def _spec_meta(spec):
    if isinstance(spec, BSplineSpec):
        return {"basis": "bspline", "J": spec.grid.interior, "p": spec.order, "K": spec.dim}
    name = "fourier" if isinstance(spec, FourierSpec) else "legendre"
    return {"basis": name, "J": spec.dim, "p": None, "K": spec.dim}


def cmd_band(args) -> int:
    data, dmap = _load(args)
    template = _basis_template(args.basis, args.order)
    if args.knots is not None:
        if args.basis == "bspline":
            spec = BSplineSpec(order=args.order, grid=make_knot_grid(args.knots))
        else:
            spec = dataclasses.replace(template, dim=args.knots)
        fitted = fit_mean(data, spec)
    else:
        fitted = select_knots(data, template).fit
    cov = estimate_covariance(fitted, data)
    cfg = BandConfig(alpha=args.alpha, draws=args.boot, grid_size=args.grid, seed=args.seed)
    band = build_band(fitted, cov, cfg, data)

    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    band_path = outdir / "band.csv"
    x_raw = dmap.from_unit(band.grid)
    with open(band_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x_raw", "x_unit", "mhat", "lower", "upper", "scale"])
        for row in zip(x_raw, band.grid, band.mhat, band.lower, band.upper, band.scale):
            writer.writerow([f"{v:.12g}" for v in row])
    manifest = {
        "command": "band",
        "input": str(args.input),
        "n": data.n_subjects,
        "nbar": data.nbar,
        "domain": [dmap.raw_min, dmap.raw_max],
        **_spec_meta(fitted.spec),
        "alpha": band.alpha,
        "boot": band.draws,
        "grid": cfg.grid_size,
        "seed": band.seed,
        "qhat": band.qhat,
        "norm_sigma1_inf": op_inf_norm(cov.sigma1),
        "norm_sigma2_inf": op_inf_norm(cov.sigma2),
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    if args.plot:
        svg = band_svg(
            x_raw, band.mhat, band.lower, band.upper,
            points_x=dmap.from_unit(data.x), points_y=data.y,
        )
        (outdir / "band.svg").write_text(svg)
    print(f"wrote {band_path} (J={manifest['J']}, qhat={band.qhat:.4f})")
    return 0


def cmd_select(args) -> int:
    data, _ = _load(args)
    template = _basis_template(args.basis, args.order)
    result = select_knots(data, template)
    print(f"candidate range: [{result.jmin}, {result.jmax}]")
    print(f"{'J':>4}  {'BIC':>14}  status")
    for J, value, status in result.candidates:
        shown = f"{value:14.6f}" if value is not None else " " * 14
        marker = "  <- chosen" if J == result.chosen and status == "ok" else ""
        print(f"{J:>4}  {shown}  {status}{marker}")
    return 0


def cmd_simulate(args) -> int:
    cfg = SimulationConfig(
        setting=args.setting,
        n=args.n,
        score_dist=args.score_dist,
        error_dist=args.error_dist,
        heteroscedastic=args.hetero,
        sigma_eps=args.sigma_eps,
        reps=args.reps,
        band=BandConfig(alpha=args.alpha, draws=args.boot, grid_size=args.grid),
        seed=args.seed,
    )
    report = run_coverage(cfg)
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    reps_path = outdir / "replications.csv"
    with open(reps_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["rep", "status", "chosen_j", "qhat", "covered", "norm_sigma1", "norm_sigma2"])
        for r in report.records:
            writer.writerow([
                r.rep, r.status, r.chosen_j, f"{r.qhat:.12g}",
                int(r.covered), f"{r.norm_sigma1:.12g}", f"{r.norm_sigma2:.12g}",
            ])
    summary = {
        "command": "simulate",
        "setting": cfg.setting,
        "n": cfg.n,
        "score_dist": cfg.score_dist,
        "error_dist": cfg.error_dist,
        "heteroscedastic": cfg.heteroscedastic,
        "sigma_eps": cfg.sigma_eps,
        "reps": cfg.reps,
        "alpha": cfg.band.alpha,
        "boot": cfg.band.draws,
        "grid": cfg.band.grid_size,
        "seed": cfg.seed,
        "coverage": report.coverage,
        "mean_norm_sigma1_inf": report.mean_norm_sigma1,
        "mean_norm_sigma2_inf": report.mean_norm_sigma2,
        "n_failed": report.n_failed,
    }
    (outdir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(
        f"coverage={report.coverage:.3f} "
        f"|S1|={report.mean_norm_sigma1:.3f} |S2|={report.mean_norm_sigma2:.3f} "
        f"({report.n_failed} failed reps)"
    )
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"band": cmd_band, "select": cmd_select, "simulate": cmd_simulate}
    try:
        return handlers[args.command](args)
    except (ScbandError, ValueError, OSError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
