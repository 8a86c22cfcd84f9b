"""Long-format CSV ingestion for longitudinal data."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyDataset, ParseError
from .fit import ObservationSet

__all__ = ["DomainMap", "ingest_csv"]


@dataclass(frozen=True)
class DomainMap:
    """Affine map between the raw design domain and the unit interval."""

    raw_min: float
    raw_max: float

    def __post_init__(self):
        if not self.raw_min < self.raw_max:
            raise ValueError("domain lower bound must be below upper bound")

    def to_unit(self, x):
        return (np.asarray(x, dtype=float) - self.raw_min) / (self.raw_max - self.raw_min)

    def from_unit(self, u):
        return self.raw_min + np.asarray(u, dtype=float) * (self.raw_max - self.raw_min)


def ingest_csv(
    path,
    x_col: str = "x",
    y_col: str = "y",
    id_col: str = "id",
    domain: tuple = None,
):
    """Parse a header-ed long-format CSV into (ObservationSet, DomainMap).

    Rows are grouped by subject id, preserving file order within each
    subject. With no ``domain`` override the observed x-range is used
    (degenerate ranges expand to a unit-width window).
    """
    groups = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise EmptyDataset(f"{path}: no header row")
        for col in (x_col, y_col, id_col):
            if col not in reader.fieldnames:
                raise ParseError(f"{path}: missing column {col!r}", row=1)
        for idx, row in enumerate(reader, start=2):
            try:
                x = float(row[x_col])
                y = float(row[y_col])
            except (TypeError, ValueError) as exc:
                raise ParseError(f"{path}: malformed row {idx}", row=idx) from exc
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ParseError(f"{path}: non-finite value in row {idx}", row=idx)
            subject = row[id_col]
            if subject is None or subject == "":
                raise ParseError(f"{path}: empty subject id in row {idx}", row=idx)
            groups.setdefault(subject, ([], []))
            groups[subject][0].append(x)
            groups[subject][1].append(y)
    if not groups:
        raise EmptyDataset(f"{path}: no data rows")

    all_x = np.concatenate([np.asarray(g[0]) for g in groups.values()])
    if domain is not None:
        dmap = DomainMap(float(domain[0]), float(domain[1]))
        if all_x.min() < dmap.raw_min or all_x.max() > dmap.raw_max:
            raise DomainError(
                f"{path}: design points outside the declared domain "
                f"[{dmap.raw_min}, {dmap.raw_max}]"
            )
    else:
        lo, hi = float(all_x.min()), float(all_x.max())
        if lo == hi:
            lo, hi = lo - 0.5, hi + 0.5
        dmap = DomainMap(lo, hi)

    subjects = [(dmap.to_unit(xs), np.asarray(ys, dtype=float)) for xs, ys in groups.values()]
    return ObservationSet.from_subjects(subjects), dmap
