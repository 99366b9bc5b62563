"""Activation families and closed-form hidden-node parameterization.

A hidden node computes ``h(z)`` with ``z = a . x + b``. All seven families
share one placement scheme: the weight vector is a scaled copy of the slope
vector of a hyperplane fitted to the targets around an anchor point ``x*``,
and the bias shifts the node so that its most nonlinear point (inflection,
segment midpoint, or softplus knee) lands exactly on ``x*``. ReLU is the
exception: it simply adopts the hyperplane as its active half.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import expit


class ActivationKind(enum.Enum):
    SIGMOID_UNIPOLAR = "sigu"
    SIGMOID_BIPOLAR = "sigb"
    SINE = "sin"
    SATLIN_UNIPOLAR = "satu"
    SATLIN_BIPOLAR = "satb"
    RELU = "relu"
    SOFTPLUS = "soft"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> "ActivationKind":
        try:
            return cls(token.strip().lower())
        except ValueError:
            known = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown activation token {token!r}; expected one of: {known}") from None


ALL_KINDS = tuple(ActivationKind)

# Stable integer codes shared with the compiled kernels.
KIND_CODES = {kind: code for code, kind in enumerate(ALL_KINDS)}
KIND_BY_CODE = {code: kind for kind, code in KIND_CODES.items()}

# Multiplier turning a fitted hyperplane slope into the node weight.
_WEIGHT_SCALE = {
    ActivationKind.SIGMOID_UNIPOLAR: 4.0,
    ActivationKind.SIGMOID_BIPOLAR: 2.0,
    ActivationKind.SINE: 1.0,
    ActivationKind.SATLIN_UNIPOLAR: 1.0,
    ActivationKind.SATLIN_BIPOLAR: 1.0,
    ActivationKind.RELU: 1.0,
    ActivationKind.SOFTPLUS: 2.0,
}

# Node value at its anchor after placement; ReLU is plane-dependent and
# therefore absent.
PLACEMENT_VALUE = {
    ActivationKind.SIGMOID_UNIPOLAR: 0.5,
    ActivationKind.SIGMOID_BIPOLAR: 0.0,
    ActivationKind.SINE: 0.0,
    ActivationKind.SATLIN_UNIPOLAR: 0.5,
    ActivationKind.SATLIN_BIPOLAR: 0.0,
    ActivationKind.SOFTPLUS: float(np.log(2.0)),
}


@dataclass(frozen=True)
class HiddenNode:
    """One hidden unit: activation kind, weight vector, scalar bias."""

    kind: ActivationKind
    weights: np.ndarray
    bias: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("node weights must be a non-empty 1-D vector")
        if not np.all(np.isfinite(w)) or not np.isfinite(self.bias):
            raise ValueError("node parameters must be finite")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", float(self.bias))

    @property
    def input_dim(self) -> int:
        return self.weights.size


def activation_values(kind: ActivationKind, z, softplus_naive: bool = False) -> np.ndarray:
    """Pointwise ``h(z)`` for the given family.

    Softplus defaults to the overflow-safe rearrangement
    ``max(z, 0) + log1p(exp(-|z|))``; ``softplus_naive=True`` evaluates the
    textbook ``log(1 + exp(z))``, which overflows to inf for large ``z``.
    """
    z = np.asarray(z, dtype=np.float64)
    if kind is ActivationKind.SIGMOID_UNIPOLAR:
        return expit(z)
    if kind is ActivationKind.SIGMOID_BIPOLAR:
        return 2.0 * expit(z) - 1.0
    if kind is ActivationKind.SINE:
        return np.sin(z)
    if kind is ActivationKind.SATLIN_UNIPOLAR:
        return np.clip(z, 0.0, 1.0)
    if kind is ActivationKind.SATLIN_BIPOLAR:
        return np.clip(z, -1.0, 1.0)
    if kind is ActivationKind.RELU:
        return np.maximum(z, 0.0)
    if kind is ActivationKind.SOFTPLUS:
        if softplus_naive:
            with np.errstate(over="ignore"):
                return np.log(1.0 + np.exp(z))
        return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))
    raise ValueError(f"unhandled activation kind {kind!r}")


def evaluate(node: HiddenNode, x, softplus_naive: bool = False) -> float:
    """Evaluate one node at one input vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size != node.input_dim:
        raise ValueError(
            f"input has dimension {x.size if x.ndim == 1 else x.shape}, "
            f"node expects {node.input_dim}"
        )
    if not np.all(np.isfinite(x)):
        raise ValueError("input vector must be finite")
    # Ascending-index accumulation, matching the design-matrix kernels bit
    # for bit so the anchor lands exactly on the placement value.
    w = node.weights
    z = w[0] * x[0]
    for j in range(1, w.size):
        z = z + w[j] * x[j]
    z = z + node.bias
    return float(activation_values(node.kind, z, softplus_naive))


def rowwise_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-row dot product accumulated in ascending column order.

    Kept as a plain loop (not BLAS) so the bias computed here cancels the
    kernels' ``z`` accumulation exactly at the anchor.
    """
    acc = a[:, 0] * b[:, 0]
    for j in range(1, a.shape[1]):
        acc = acc + a[:, j] * b[:, j]
    return acc


def parameterize_batch(kind: ActivationKind, slopes: np.ndarray, intercepts: np.ndarray,
                       anchors: np.ndarray):
    """Vectorized node parameterization for ``m`` fitted hyperplanes.

    Returns ``(weights (m, n), biases (m,))``. Biases for every family except
    ReLU are computed from the already-scaled weights; ReLU reuses the
    hyperplane intercept unchanged.
    """
    slopes = np.asarray(slopes, dtype=np.float64)
    intercepts = np.asarray(intercepts, dtype=np.float64)
    anchors = np.asarray(anchors, dtype=np.float64)
    if slopes.ndim != 2 or anchors.shape != slopes.shape:
        raise ValueError("slopes and anchors must both have shape (m, n)")
    if intercepts.shape != (slopes.shape[0],):
        raise ValueError("intercepts must have shape (m,)")
    if not (np.all(np.isfinite(slopes)) and np.all(np.isfinite(intercepts))
            and np.all(np.isfinite(anchors))):
        raise ValueError("hyperplane coefficients and anchors must be finite")

    weights = _WEIGHT_SCALE[kind] * slopes
    if kind is ActivationKind.RELU:
        biases = intercepts.copy()
    elif kind is ActivationKind.SATLIN_UNIPOLAR:
        biases = 0.5 - rowwise_dot(weights, anchors)
    else:
        biases = -rowwise_dot(weights, anchors)
    return weights, biases


def parameterize(kind: ActivationKind, plane, x_star) -> HiddenNode:
    """Closed-form node placement from one local hyperplane and its anchor."""
    slopes = np.asarray(plane.slopes, dtype=np.float64)
    x_star = np.asarray(x_star, dtype=np.float64)
    if x_star.shape != slopes.shape:
        raise ValueError("anchor and hyperplane slopes must have the same dimension")
    weights, biases = parameterize_batch(
        kind, slopes[None, :], np.asarray([plane.intercept]), x_star[None, :]
    )
    return HiddenNode(kind=kind, weights=weights[0], bias=float(biases[0]))
