"""The node-placement training loop and the trained-model type.

Training draws m anchor rows up front from a seeded PCG64 generator, fits a
local hyperplane around each anchor, converts every hyperplane into a hidden
node with the closed-form rules of the chosen activation family, assembles
the hidden-layer output matrix, and solves for the output weights by
minimum-norm least squares. Given the same dataset and config the result is
bit-identical across runs and thread counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import _backend
from .activations import ActivationKind, HiddenNode, parameterize_batch
from .data import Normalization
from .errors import ConfigurationError, TrainingError
from .solver import default_rcond, solve_min_norm

RNG_ALGORITHM = "pcg64"

MODEL_FORMAT = "ddfnn-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters of one training run.

    hidden_nodes: number of hidden units (m).
    n_neighbors: neighbors per local fit (k); must be >= the input dimension.
    activation: family used for every hidden node.
    seed: fully determines the anchor draws.
    rcond: pseudoinverse cutoff; None selects eps * max(N, m).
    ridge: optional Tikhonov term for the output solve, 0 disables.
    softplus_naive: evaluate softplus as log(1 + exp(z)) verbatim, which can
        overflow; kept for demonstrating that failure mode.
    constant_column: append an all-ones column to the design matrix
        (an output bias); off by default.
    """

    hidden_nodes: int
    n_neighbors: int
    activation: ActivationKind
    seed: int = 0
    rcond: float | None = None
    ridge: float = 0.0
    softplus_naive: bool = False
    constant_column: bool = False


@dataclass(frozen=True)
class FnnModel:
    """A trained single-hidden-layer network.

    Prediction needs only (activation, weights, biases, beta); anchors and
    the fitted hyperplanes are retained for introspection and testing.
    """

    activation: ActivationKind
    weights: np.ndarray            # (m, n)
    biases: np.ndarray             # (m,)
    beta: np.ndarray               # (m,) or (m+1,) with a constant column
    anchors: np.ndarray            # (m, n) anchor input rows
    anchor_indices: np.ndarray     # (m,) dataset row of each anchor
    plane_slopes: np.ndarray       # (m, n)
    plane_intercepts: np.ndarray   # (m,)
    normalization: Normalization
    n_neighbors: int
    seed: int
    rng: str
    rcond: float | None
    ridge: float
    softplus_naive: bool
    constant_column: bool

    @property
    def input_dim(self) -> int:
        return self.weights.shape[1]

    @property
    def hidden_nodes(self) -> int:
        return self.weights.shape[0]

    @property
    def nodes(self):
        """Hidden units as individual objects (introspection convenience)."""
        return tuple(
            HiddenNode(self.activation, self.weights[i], float(self.biases[i]))
            for i in range(self.hidden_nodes)
        )


def validate_config(config: TrainConfig, n_samples: int, input_dim: int) -> None:
    """Reject hyperparameters that cannot train on an (N, n) dataset."""
    if config.hidden_nodes < 1:
        raise ConfigurationError(f"hidden node count must be >= 1, got {config.hidden_nodes}")
    if config.n_neighbors < 1:
        raise ConfigurationError(f"k must be >= 1, got {config.n_neighbors}")
    if config.n_neighbors < input_dim:
        raise ConfigurationError(
            f"k must be >= input dimension (k={config.n_neighbors}, n={input_dim}): "
            "the local fit would be under-determined"
        )
    if n_samples < config.n_neighbors + 1:
        raise ConfigurationError(
            f"dataset has {n_samples} points but k={config.n_neighbors} needs at least k+1"
        )
    if config.rcond is not None and config.rcond < 0:
        raise ConfigurationError(f"rcond must be >= 0, got {config.rcond}")
    if config.ridge < 0:
        raise ConfigurationError(f"ridge must be >= 0, got {config.ridge}")
    if not isinstance(config.activation, ActivationKind):
        raise ConfigurationError(f"activation must be an ActivationKind, got {config.activation!r}")


def train(dataset, config: TrainConfig) -> FnnModel:
    """Train a network on a normalized dataset."""
    X = dataset.inputs
    Y = dataset.targets
    n_samples, input_dim = X.shape
    validate_config(config, n_samples, input_dim)
    if X.min() < -1e-9 or X.max() > 1.0 + 1e-9:
        raise ConfigurationError("dataset inputs must be normalized to [0, 1] per axis")

    # All anchor draws happen up front, in one pass of the seeded generator:
    # node construction can then be reordered or parallelized freely without
    # changing the model.
    rng = np.random.default_rng(config.seed)
    anchor_indices = rng.integers(0, n_samples, size=config.hidden_nodes, dtype=np.int64)

    plane_slopes, plane_intercepts = _backend.place_hyperplanes(
        X, Y, anchor_indices, config.n_neighbors
    )
    anchors = np.ascontiguousarray(X[anchor_indices])
    weights, biases = parameterize_batch(
        config.activation, plane_slopes, plane_intercepts, anchors
    )

    H = _backend.design_matrix(X, weights, biases, config.activation, config.softplus_naive)
    bad_nodes = np.flatnonzero(~np.isfinite(H).all(axis=0))
    if bad_nodes.size:
        raise TrainingError(
            f"hidden node {int(bad_nodes[0])} produced non-finite activations "
            f"({config.activation.token}"
            f"{', naive softplus overflow' if config.softplus_naive else ''})"
        )
    if config.constant_column:
        H = np.hstack([H, np.ones((n_samples, 1))])

    beta = solve_min_norm(H, Y, rcond=config.rcond, ridge=config.ridge)

    return FnnModel(
        activation=config.activation,
        weights=weights,
        biases=biases,
        beta=beta,
        anchors=anchors,
        anchor_indices=anchor_indices,
        plane_slopes=plane_slopes,
        plane_intercepts=plane_intercepts,
        normalization=dataset.normalization,
        n_neighbors=config.n_neighbors,
        seed=int(config.seed),
        rng=RNG_ALGORITHM,
        rcond=config.rcond,
        ridge=float(config.ridge),
        softplus_naive=bool(config.softplus_naive),
        constant_column=bool(config.constant_column),
    )


def predict_batch(model: FnnModel, X) -> np.ndarray:
    """Network outputs for a batch of input vectors (normalized space)."""
    X = np.ascontiguousarray(np.atleast_2d(np.asarray(X, dtype=np.float64)))
    if X.ndim != 2 or X.shape[1] != model.input_dim:
        raise ValueError(f"inputs must have shape (N, {model.input_dim}), got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("inputs must be finite")
    H = _backend.design_matrix(X, model.weights, model.biases,
                               model.activation, model.softplus_naive)
    if model.constant_column:
        H = np.hstack([H, np.ones((X.shape[0], 1))])
    # einsum keeps a fixed, batch-size-independent reduction order, so a
    # batched call matches single predictions bit for bit
    return np.einsum("ij,j->i", H, model.beta)


def predict(model: FnnModel, x) -> float:
    """Network output for a single input vector (normalized space)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"x must be a 1-D vector, got shape {x.shape}")
    return float(predict_batch(model, x[None, :])[0])


def save_model(model: FnnModel, path) -> None:
    """Write the model as versioned JSON (UTF-8, LF); round-trips exactly."""
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "rng": model.rng,
        "seed": model.seed,
        "activation": model.activation.token,
        "input_dim": model.input_dim,
        "hidden_nodes": model.hidden_nodes,
        "n_neighbors": model.n_neighbors,
        "rcond": model.rcond,
        "ridge": model.ridge,
        "softplus_naive": model.softplus_naive,
        "constant_column": model.constant_column,
        "normalization": {
            "input_ranges": model.normalization.input_ranges.tolist(),
            "target_bounds": list(model.normalization.target_bounds),
            "target_range": list(model.normalization.target_range),
        },
        "beta": model.beta.tolist(),
        "nodes": [
            {
                "weights": model.weights[i].tolist(),
                "bias": float(model.biases[i]),
                "anchor": model.anchors[i].tolist(),
                "anchor_index": int(model.anchor_indices[i]),
                "plane_slopes": model.plane_slopes[i].tolist(),
                "plane_intercept": float(model.plane_intercepts[i]),
            }
            for i in range(model.hidden_nodes)
        ],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_model(path) -> FnnModel:
    """Read a model written by :func:`save_model`."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a {MODEL_FORMAT} file")
    if doc.get("version") != MODEL_VERSION:
        raise ValueError(f"{path}: unsupported model version {doc.get('version')!r}")

    nodes = doc["nodes"]
    norm = doc["normalization"]
    return FnnModel(
        activation=ActivationKind.from_token(doc["activation"]),
        weights=np.asarray([nd["weights"] for nd in nodes], dtype=np.float64),
        biases=np.asarray([nd["bias"] for nd in nodes], dtype=np.float64),
        beta=np.asarray(doc["beta"], dtype=np.float64),
        anchors=np.asarray([nd["anchor"] for nd in nodes], dtype=np.float64),
        anchor_indices=np.asarray([nd["anchor_index"] for nd in nodes], dtype=np.int64),
        plane_slopes=np.asarray([nd["plane_slopes"] for nd in nodes], dtype=np.float64),
        plane_intercepts=np.asarray([nd["plane_intercept"] for nd in nodes], dtype=np.float64),
        normalization=Normalization(
            np.asarray(norm["input_ranges"], dtype=np.float64),
            tuple(norm["target_bounds"]),
            tuple(norm["target_range"]),
        ),
        n_neighbors=int(doc["n_neighbors"]),
        seed=int(doc["seed"]),
        rng=str(doc["rng"]),
        rcond=doc["rcond"],
        ridge=float(doc["ridge"]),
        softplus_naive=bool(doc["softplus_naive"]),
        constant_column=bool(doc["constant_column"]),
    )
