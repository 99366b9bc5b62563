"""Neighborhood search and local hyperplane fitting.

Each hidden node is anchored at a training point; the target function's
local slope there is estimated by a least-squares affine fit over the
anchor plus its k nearest training points (Euclidean distance, ties broken
by ascending dataset index).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class Hyperplane:
    """Affine local model ``y = slopes . x + intercept``."""

    slopes: np.ndarray
    intercept: float

    def __post_init__(self):
        s = np.asarray(self.slopes, dtype=np.float64)
        if s.ndim != 1 or s.size == 0:
            raise ValueError("hyperplane slopes must be a non-empty 1-D vector")
        if not np.all(np.isfinite(s)) or not np.isfinite(self.intercept):
            raise ValueError("hyperplane coefficients must be finite")
        object.__setattr__(self, "slopes", s)
        object.__setattr__(self, "intercept", float(self.intercept))

    def value_at(self, x) -> float:
        x = np.asarray(x, dtype=np.float64)
        return float(np.dot(self.slopes, x) + self.intercept)


@dataclass(frozen=True)
class Neighborhood:
    """An anchor row and its k nearest training points.

    ``member_indices`` lists the anchor first, then neighbors in ascending
    (distance, index) order; ``inputs``/``targets`` are the matching rows.
    """

    center_index: int
    member_indices: np.ndarray
    inputs: np.ndarray
    targets: np.ndarray

    @property
    def size(self) -> int:
        return self.member_indices.size


def squared_distances(X: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance from every row of X to x.

    Accumulates coordinates in ascending order so the compiled kernel
    produces bit-identical values.
    """
    d = X[:, 0] - x[0]
    acc = d * d
    for j in range(1, X.shape[1]):
        d = X[:, j] - x[j]
        acc = acc + d * d
    return acc


def k_nearest(X: np.ndarray, center_index: int, k: int) -> np.ndarray:
    """Indices of the k rows nearest to row ``center_index`` (itself excluded).

    Exact: distance ties are broken by ascending row index. Result is sorted
    by (distance, index).
    """
    n_rows = X.shape[0]
    if n_rows == 0:
        raise ConfigurationError("dataset is empty")
    if not 0 <= center_index < n_rows:
        raise ValueError(f"center index {center_index} out of range [0, {n_rows})")
    if k < 1:
        raise ConfigurationError(f"k must be >= 1, got {k}")
    if k >= n_rows:
        raise ConfigurationError(f"k={k} needs at least k+1={k + 1} points, dataset has {n_rows}")

    d2 = squared_distances(X, X[center_index])
    d2[center_index] = np.inf
    if k == n_rows - 1:
        members = np.concatenate(
            [np.arange(center_index, dtype=np.intp), np.arange(center_index + 1, n_rows, dtype=np.intp)]
        )
    else:
        kth = np.partition(d2, k - 1)[k - 1]
        closer = np.flatnonzero(d2 < kth)
        ties = np.flatnonzero(d2 == kth)
        members = np.concatenate([closer, ties[: k - closer.size]])
    order = np.lexsort((members, d2[members]))
    return members[order].astype(np.intp)


def find_neighborhood(dataset, center_index: int, k: int) -> Neighborhood:
    """Anchor row plus its k nearest training points from a dataset."""
    X = dataset.inputs
    neighbors = k_nearest(X, center_index, k)
    members = np.concatenate([[center_index], neighbors]).astype(np.intp)
    return Neighborhood(
        center_index=int(center_index),
        member_indices=members,
        inputs=X[members],
        targets=dataset.targets[members],
    )


def fit_affine(inputs: np.ndarray, targets: np.ndarray):
    """Minimum-norm least-squares affine fit; returns (slopes, intercept).

    Rank-deficient point sets (duplicates, collinear geometry) yield the
    smallest-norm coefficient vector instead of failing.
    """
    rows, n = inputs.shape
    design = np.empty((rows, n + 1), dtype=np.float64)
    design[:, :n] = inputs
    design[:, n] = 1.0
    coef = np.linalg.lstsq(design, targets, rcond=None)[0]
    return coef[:n], float(coef[n])


def fit_hyperplane(neighborhood: Neighborhood) -> Hyperplane:
    """Least-squares hyperplane through a neighborhood's (input, target) pairs."""
    rows, n = neighborhood.inputs.shape
    if rows < n + 1:
        raise ConfigurationError(
            f"hyperplane fit needs at least n+1={n + 1} points, neighborhood has {rows} "
            "(k must be >= input dimension)"
        )
    slopes, intercept = fit_affine(neighborhood.inputs, np.asarray(neighborhood.targets, dtype=np.float64))
    return Hyperplane(slopes=slopes, intercept=intercept)
