"""Datasets and min-max normalization metadata.

Training operates on inputs scaled per axis into [0, 1] and targets mapped
affinely into a chosen interval. The metadata needed to invert both maps
travels with every dataset and with every trained model.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np


def _spans(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    # degenerate (constant) axes become pure shifts so the map stays invertible
    span = hi - lo
    return np.where(span == 0.0, 1.0, span)


@dataclass(frozen=True)
class Normalization:
    """Affine input/target scaling and its exact inverse.

    input_ranges: (n, 2) natural [lo, hi] per input axis.
    target_bounds: natural (min, max) the targets were scaled from.
    target_range: (lo, hi) interval the targets were scaled into.
    """

    input_ranges: np.ndarray
    target_bounds: tuple
    target_range: tuple

    def __post_init__(self):
        ranges = np.asarray(self.input_ranges, dtype=np.float64)
        if ranges.ndim != 2 or ranges.shape[1] != 2:
            raise ValueError("input_ranges must have shape (n, 2)")
        if not np.all(np.isfinite(ranges)):
            raise ValueError("input_ranges must be finite")
        bounds = (float(self.target_bounds[0]), float(self.target_bounds[1]))
        rng = (float(self.target_range[0]), float(self.target_range[1]))
        if not all(np.isfinite(v) for v in bounds + rng):
            raise ValueError("target bounds and range must be finite")
        if rng[1] <= rng[0]:
            raise ValueError("target_range must satisfy lo < hi")
        object.__setattr__(self, "input_ranges", ranges)
        object.__setattr__(self, "target_bounds", bounds)
        object.__setattr__(self, "target_range", rng)

    @classmethod
    def identity(cls, n: int) -> "Normalization":
        return cls(np.tile([0.0, 1.0], (n, 1)), (0.0, 1.0), (0.0, 1.0))

    @property
    def input_dim(self) -> int:
        return self.input_ranges.shape[0]

    def normalize_inputs(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        lo = self.input_ranges[:, 0]
        return (X - lo) / _spans(lo, self.input_ranges[:, 1])

    def denormalize_inputs(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        lo = self.input_ranges[:, 0]
        return X * _spans(lo, self.input_ranges[:, 1]) + lo

    def normalize_targets(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.float64)
        b_lo, b_hi = self.target_bounds
        r_lo, r_hi = self.target_range
        span = (b_hi - b_lo) or 1.0
        return r_lo + (r_hi - r_lo) * (y - b_lo) / span

    def denormalize_targets(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.float64)
        b_lo, b_hi = self.target_bounds
        r_lo, r_hi = self.target_range
        span = (b_hi - b_lo) or 1.0
        return b_lo + (y - r_lo) * span / (r_hi - r_lo)


@dataclass(frozen=True)
class Dataset:
    """Normalized (inputs, targets) with the metadata to undo the scaling."""

    inputs: np.ndarray
    targets: np.ndarray
    normalization: Normalization
    provenance: Mapping = field(default_factory=dict)

    def __post_init__(self):
        X = np.ascontiguousarray(self.inputs, dtype=np.float64)
        y = np.ascontiguousarray(self.targets, dtype=np.float64)
        if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
            raise ValueError(
                f"inputs (N, n) and targets (N,) required, got {X.shape} and {y.shape}"
            )
        if not np.all(np.isfinite(X)) or not np.all(np.isfinite(y)):
            raise ValueError("dataset values must be finite")
        if X.shape[1] != self.normalization.input_dim:
            raise ValueError("normalization metadata does not match the input dimension")
        object.__setattr__(self, "inputs", X)
        object.__setattr__(self, "targets", y)

    @property
    def n_samples(self) -> int:
        return self.inputs.shape[0]

    @property
    def input_dim(self) -> int:
        return self.inputs.shape[1]

    @classmethod
    def from_arrays(cls, inputs, targets, normalization: Normalization | None = None,
                    provenance: Mapping | None = None) -> "Dataset":
        """Wrap already-normalized arrays; identity normalization by default."""
        inputs = np.atleast_2d(np.asarray(inputs, dtype=np.float64))
        if normalization is None:
            normalization = Normalization.identity(inputs.shape[1])
        return cls(inputs, np.asarray(targets, dtype=np.float64),
                   normalization, provenance or {})


def load_xy_csv(path):
    """Read a training CSV: header row, n input columns, one target column.

    Returns ``(X (N, n), y (N,), column_names)``. Malformed rows raise
    ValueError naming the line number.
    """
    rows, names = _read_numeric_csv(path)
    if len(names) < 2:
        raise ValueError(
            f"{path}: expected at least 2 columns (inputs then target), found {len(names)}"
        )
    data = np.asarray(rows, dtype=np.float64)
    return data[:, :-1], data[:, -1], names


def load_x_csv(path, expected_dim: int | None = None):
    """Read a prediction CSV: header row plus input columns only."""
    rows, names = _read_numeric_csv(path)
    if expected_dim is not None and len(names) != expected_dim:
        raise ValueError(
            f"{path}: expected {expected_dim} input columns, found {len(names)}"
        )
    return np.asarray(rows, dtype=np.float64), names


def _read_numeric_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            names = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: file is empty (header row required)") from None
        names = [c.strip() for c in names]
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(names):
                raise ValueError(
                    f"{path}: line {line_no}: expected {len(names)} fields, found {len(row)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise ValueError(f"{path}: line {line_no}: non-numeric value in {row!r}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows after the header")
    return rows, names
