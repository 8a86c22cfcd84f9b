"""Dependency-free SVG rendering of a fitted band over the raw data."""

from __future__ import annotations

import numpy as np

__all__ = ["band_svg"]

_W, _H = 640, 420
_MARGIN = 50


def _scaler(lo, hi, out_lo, out_hi):
    span = hi - lo if hi > lo else 1.0

    def scale(v):
        return out_lo + (np.asarray(v, dtype=float) - lo) / span * (out_hi - out_lo)

    return scale


def _polyline(xs, ys):
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))


def band_svg(grid_raw, mhat, lower, upper, points_x=None, points_y=None) -> str:
    """SVG document: scatter of observations, fitted mean, band envelope."""
    grid_raw = np.asarray(grid_raw, dtype=float)
    finite_lo = lower[~np.isnan(lower)]
    finite_hi = upper[~np.isnan(upper)]
    ys = [mhat, finite_lo, finite_hi]
    if points_y is not None and len(points_y):
        ys.append(np.asarray(points_y, dtype=float))
    y_all = np.concatenate([np.ravel(v) for v in ys])
    sx = _scaler(grid_raw.min(), grid_raw.max(), _MARGIN, _W - _MARGIN)
    sy = _scaler(y_all.min(), y_all.max(), _H - _MARGIN, _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    ok = ~np.isnan(lower)
    gx, lo, hi, mh = grid_raw[ok], lower[ok], upper[ok], mhat[ok]
    parts.append(
        f'<polygon points="{_polyline(sx(np.concatenate((gx, gx[::-1]))), sy(np.concatenate((hi, lo[::-1]))))}" '
        'fill="#9ecae1" fill-opacity="0.45" stroke="none"/>'
    )
    if points_x is not None and points_y is not None:
        px, py = sx(points_x), sy(points_y)
        for x, y in zip(px, py):
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1.5" fill="#555" fill-opacity="0.5"/>')
    parts.append(
        f'<polyline points="{_polyline(sx(gx), sy(mh))}" fill="none" stroke="#08519c" stroke-width="2"/>'
    )
    for curve in (lo, hi):
        parts.append(
            f'<polyline points="{_polyline(sx(gx), sy(curve))}" fill="none" '
            'stroke="#08519c" stroke-width="1" stroke-dasharray="6,4"/>'
        )
    parts.append(
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_W - 2 * _MARGIN}" '
        f'height="{_H - 2 * _MARGIN}" fill="none" stroke="#333"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts)
