"""Minimum-norm least-squares solve for the output weights.

``solve_min_norm`` computes the pseudoinverse solution of ``H beta = Y``
through an SVD-based solver (LAPACK dgelsd). The call is pinned to a single
BLAS thread: results are then bit-identical regardless of machine load,
sweep parallelism, or thread-count flags.
"""

from __future__ import annotations

import numpy as np
from threadpoolctl import threadpool_limits

from .errors import ConfigurationError


def default_rcond(rows: int, cols: int) -> float:
    """Singular-value cutoff used when none is given: eps * max(rows, cols)."""
    return float(np.finfo(np.float64).eps) * max(rows, cols)


def solve_min_norm(H, Y, rcond: float | None = None, ridge: float = 0.0) -> np.ndarray:
    """Solve ``H beta = Y`` in the minimum-norm least-squares sense.

    Singular values below ``rcond * s_max`` are treated as zero; among all
    least-squares minimizers the returned beta has the smallest Euclidean
    norm. ``ridge > 0`` adds a Tikhonov term ``ridge * ||beta||^2`` (solved
    through the augmented system), which is off by default.
    """
    H = np.asarray(H, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if H.ndim != 2:
        raise ValueError(f"H must be 2-D, got shape {H.shape}")
    if H.size == 0:
        raise ConfigurationError("H must have at least one row and one column")
    rows, cols = H.shape
    if Y.shape != (rows,):
        raise ValueError(f"Y must have length {rows}, got shape {Y.shape}")
    if not np.all(np.isfinite(H)):
        raise ValueError("H contains non-finite entries")
    if not np.all(np.isfinite(Y)):
        raise ValueError("Y contains non-finite entries")
    if rcond is not None and rcond < 0:
        raise ValueError(f"rcond must be >= 0, got {rcond}")
    if ridge < 0:
        raise ValueError(f"ridge must be >= 0, got {ridge}")

    if ridge > 0.0:
        H = np.vstack([H, np.sqrt(ridge) * np.eye(cols)])
        Y = np.concatenate([Y, np.zeros(cols)])
    cut = default_rcond(rows, cols) if rcond is None else float(rcond)
    with threadpool_limits(limits=1):
        beta = np.linalg.lstsq(H, Y, rcond=cut)[0]
    return beta
