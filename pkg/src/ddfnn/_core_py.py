"""Pure-numpy fallback for the hot training kernels.

Mirrors the compiled module ``ddfnn._core``: same functions, same argument
conventions, same neighbor ordering and least-squares cutoff, so either
backend can serve the trainer.
"""

from __future__ import annotations

import numpy as np

from .activations import KIND_BY_CODE, activation_values
from .local_geometry import fit_affine, k_nearest

NAME = "python"


def place_hyperplanes(X: np.ndarray, Y: np.ndarray, anchors: np.ndarray, k: int):
    """Fit a local hyperplane around every anchor row.

    For each anchor: gather the anchor plus its k nearest rows and solve the
    minimum-norm least-squares affine fit. Returns
    ``(slopes (m, n), intercepts (m,))``.
    """
    m = anchors.shape[0]
    n = X.shape[1]
    slopes = np.empty((m, n), dtype=np.float64)
    intercepts = np.empty(m, dtype=np.float64)
    rows = np.empty(k + 1, dtype=np.intp)
    for i in range(m):
        center = int(anchors[i])
        rows[0] = center
        rows[1:] = k_nearest(X, center, k)
        slopes[i], intercepts[i] = fit_affine(X[rows], Y[rows])
    return slopes, intercepts


def design_matrix(X: np.ndarray, weights: np.ndarray, biases: np.ndarray,
                  kind_code: int, softplus_naive: bool = False) -> np.ndarray:
    """Hidden-layer output matrix H with H[i, j] = h_j(x_i).

    The pre-activation is accumulated coordinate by coordinate in ascending
    order, bias added last; this matches the compiled kernel exactly, so a
    node evaluated at its own anchor hits its placement value bit-for-bit.
    """
    n = X.shape[1]
    Z = X[:, 0, None] * weights[None, :, 0]
    for j in range(1, n):
        Z = Z + X[:, j, None] * weights[None, :, j]
    Z = Z + biases[None, :]
    return activation_values(KIND_BY_CODE[kind_code], Z, softplus_naive)
