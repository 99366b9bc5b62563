"""Synthetic regression benchmarks and the sweep harness.

Five target functions with fixed natural domains; datasets are min-max
normalized (inputs per axis to [0, 1] from the analytical domain bounds,
targets to a per-function interval from the empirical min/max over the
combined train+test values, so both splits share the same constants).
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .activations import ALL_KINDS, ActivationKind
from .data import Dataset, Normalization
from .errors import ConfigurationError, TrainingError
from .trainer import TrainConfig, train, predict_batch, validate_config


class TargetFunction(enum.Enum):
    TF1 = "tf1"
    TF2 = "tf2"
    TF3 = "tf3"
    TF4 = "tf4"
    TF5 = "tf5"

    @property
    def token(self) -> str:
        return self.value

    @classmethod
    def from_token(cls, token: str) -> "TargetFunction":
        try:
            return cls(token.strip().lower())
        except ValueError:
            known = ", ".join(tf.value for tf in cls)
            raise ValueError(f"unknown target function {token!r}; expected one of: {known}") from None


# natural per-axis domain, fixed arity (None = configurable), target interval
_DOMAIN = {
    TargetFunction.TF1: (0.0, 1.0),
    TargetFunction.TF2: (0.0, 1.0),
    TargetFunction.TF3: (0.0, 1.0),
    TargetFunction.TF4: (0.0, float(np.pi)),
    TargetFunction.TF5: (-500.0, 500.0),
}
_FIXED_ARITY = {TargetFunction.TF1: 1, TargetFunction.TF2: 1}
_TARGET_RANGE = {
    TargetFunction.TF1: (0.0, 1.0),
    TargetFunction.TF2: (0.0, 1.0),
    TargetFunction.TF3: (-1.0, 1.0),
    TargetFunction.TF4: (-1.0, 1.0),
    TargetFunction.TF5: (-1.0, 1.0),
}


def tf_domain(tf: TargetFunction):
    return _DOMAIN[tf]


def tf_arity(tf: TargetFunction, n: int | None = None) -> int:
    """Resolve and validate the input dimension for a target function."""
    fixed = _FIXED_ARITY.get(tf)
    if fixed is not None:
        if n not in (None, fixed):
            raise ConfigurationError(f"{tf.token} is {fixed}-dimensional, got n={n}")
        return fixed
    if n is None:
        raise ConfigurationError(f"{tf.token} needs an explicit input dimension n")
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    return int(n)


def eval_tf_batch(tf: TargetFunction, X: np.ndarray) -> np.ndarray:
    """Vectorized target-function values for rows of X (natural domain)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] < 1:
        raise ValueError(f"X must have shape (N, n), got {X.shape}")
    lo, hi = _DOMAIN[tf]
    if X.size and (X.min() < lo or X.max() > hi):
        raise ValueError(f"{tf.token} inputs must lie within [{lo}, {hi}] on every axis")
    fixed = _FIXED_ARITY.get(tf)
    if fixed is not None and X.shape[1] != fixed:
        raise ValueError(f"{tf.token} expects {fixed} input column(s), got {X.shape[1]}")

    if tf is TargetFunction.TF1:
        x = X[:, 0]
        return np.sin(20.0 * np.exp(x)) * x ** 2
    if tf is TargetFunction.TF2:
        x = X[:, 0]
        return (0.2 * np.exp(-((10.0 * x - 4.0) ** 2))
                + 0.5 * np.exp(-((80.0 * x - 40.0) ** 2))
                + 0.3 * np.exp(-((80.0 * x - 20.0) ** 2)))
    if tf is TargetFunction.TF3:
        return np.sum(np.sin(20.0 * np.exp(X)) * X ** 2, axis=1)
    if tf is TargetFunction.TF4:
        i = np.arange(1, X.shape[1] + 1, dtype=np.float64)
        return -np.sum(np.sin(X) * np.sin(i * X ** 2 / np.pi) ** 20, axis=1)
    if tf is TargetFunction.TF5:
        n = X.shape[1]
        return 418.9829 * n - np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=1)
    raise ValueError(f"unhandled target function {tf!r}")


def eval_tf(tf: TargetFunction, x) -> float:
    """Target-function value at one natural-domain point."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if x.ndim != 1:
        raise ValueError(f"x must be a scalar or 1-D vector, got shape {x.shape}")
    return float(eval_tf_batch(tf, x[None, :])[0])


def _natural_inputs(tf: TargetFunction, n: int, split: str, size: int, seed: int) -> np.ndarray:
    lo, hi = _DOMAIN[tf]
    if split == "train":
        u = np.random.default_rng(np.random.SeedSequence((int(seed), 0))).random((size, n))
        return lo + (hi - lo) * u
    if n == 1:
        return np.linspace(lo, hi, size)[:, None]
    # multivariate test grid is infeasible; uniform draw from a stream
    # disjoint from the train stream
    u = np.random.default_rng(np.random.SeedSequence((int(seed), 1))).random((size, n))
    return lo + (hi - lo) * u


def make_dataset_pair(tf: TargetFunction, n: int | None, train_size: int, test_size: int,
                      seed: int):
    """Normalized (train, test) datasets sharing one set of target constants."""
    n = tf_arity(tf, n)
    if train_size < 2 or test_size < 2:
        raise ConfigurationError("train and test sizes must each be >= 2")

    X_train = _natural_inputs(tf, n, "train", train_size, seed)
    X_test = _natural_inputs(tf, n, "test", test_size, seed)
    y_train = eval_tf_batch(tf, X_train)
    y_test = eval_tf_batch(tf, X_test)

    lo, hi = _DOMAIN[tf]
    norm = Normalization(
        input_ranges=np.tile([lo, hi], (n, 1)),
        target_bounds=(min(y_train.min(), y_test.min()), max(y_train.max(), y_test.max())),
        target_range=_TARGET_RANGE[tf],
    )

    def build(X, y, split, size):
        return Dataset(
            inputs=norm.normalize_inputs(X),
            targets=norm.normalize_targets(y),
            normalization=norm,
            provenance={"tf": tf.token, "n": n, "split": split, "size": size, "seed": int(seed)},
        )

    return build(X_train, y_train, "train", train_size), build(X_test, y_test, "test", test_size)


def make_dataset(tf: TargetFunction, n: int | None, split: str, size: int, seed: int) -> Dataset:
    """One split of an equal-size train/test pair (shared normalization)."""
    if split not in ("train", "test"):
        raise ValueError(f"split must be 'train' or 'test', got {split!r}")
    pair = make_dataset_pair(tf, n, size, size, seed)
    return pair[0] if split == "train" else pair[1]


def rmse(predicted, actual) -> float:
    """Root mean squared error."""
    predicted = np.asarray(predicted, dtype=np.float64)
    actual = np.asarray(actual, dtype=np.float64)
    if predicted.shape != actual.shape or predicted.ndim != 1 or predicted.size < 1:
        raise ValueError(
            f"predicted and actual must be equal-length vectors, got {predicted.shape} and {actual.shape}"
        )
    return float(np.sqrt(np.mean((predicted - actual) ** 2)))


CSV_HEADER = "tf,n,af,m,k,seed,rmse_train,rmse_test,wall_ms,status"

STATUS_OK = "ok"
STATUS_OVERFLOW = "overflow"


@dataclass(frozen=True)
class SweepRecord:
    tf: str
    n: int
    af: str
    m: int
    k: int
    seed: int
    rmse_train: float | None
    rmse_test: float | None
    wall_ms: float | None
    status: str


@dataclass
class ExperimentReport:
    """Sweep results in deterministic (activation, m, seed) order."""

    records: list

    def to_csv_text(self) -> str:
        def fmt(v):
            if v is None:
                return ""
            return repr(v) if isinstance(v, float) else str(v)

        lines = [CSV_HEADER]
        for r in self.records:
            lines.append(",".join(fmt(v) for v in (
                r.tf, r.n, r.af, r.m, r.k, r.seed, r.rmse_train, r.rmse_test, r.wall_ms, r.status
            )))
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_csv_text())

    def median_test_rmse(self, af: str) -> float | None:
        """Median test RMSE over this report's successful rows for one activation."""
        vals = [r.rmse_test for r in self.records if r.af == af and r.rmse_test is not None]
        return float(np.median(vals)) if vals else None


def run_sweep(tf: TargetFunction, n: int | None, activations, m_values, k: int, seeds,
              train_size: int, test_size: int, *, data_seed: int = 0,
              rcond: float | None = None, ridge: float = 0.0,
              softplus_naive: bool = False, threads: int = 1,
              timings: bool = False) -> ExperimentReport:
    """Train/evaluate every (activation, m, seed) cell on one dataset pair.

    Configuration errors surface before any training starts. A naive-softplus
    overflow is recorded as ``status=overflow`` instead of aborting the sweep.
    Results are deterministic and independent of ``threads``.
    """
    activations = [a if isinstance(a, ActivationKind) else ActivationKind.from_token(a)
                   for a in activations]
    m_values = [int(m) for m in m_values]
    seeds = [int(s) for s in seeds]
    if not activations or not m_values or not seeds:
        raise ConfigurationError("activations, m values, and seeds must all be non-empty")
    if threads < 1:
        raise ConfigurationError(f"threads must be >= 1, got {threads}")

    n = tf_arity(tf, n)
    train_ds, test_ds = make_dataset_pair(tf, n, train_size, test_size, data_seed)

    cells = [
        TrainConfig(hidden_nodes=m, n_neighbors=k, activation=af, seed=seed,
                    rcond=rcond, ridge=ridge, softplus_naive=softplus_naive)
        for af in activations for m in m_values for seed in seeds
    ]
    for cfg in cells:  # fail fast, before the long run
        validate_config(cfg, train_ds.n_samples, train_ds.input_dim)

    def run_cell(cfg: TrainConfig) -> SweepRecord:
        start = time.perf_counter() if timings else None
        try:
            model = train(train_ds, cfg)
            err_train = rmse(predict_batch(model, train_ds.inputs), train_ds.targets)
            err_test = rmse(predict_batch(model, test_ds.inputs), test_ds.targets)
            status, results = STATUS_OK, (err_train, err_test)
        except TrainingError:
            status, results = STATUS_OVERFLOW, (None, None)
        wall = (time.perf_counter() - start) * 1e3 if timings else None
        return SweepRecord(tf.token, n, cfg.activation.token, cfg.hidden_nodes,
                           cfg.n_neighbors, cfg.seed, results[0], results[1], wall, status)

    if threads == 1:
        records = [run_cell(cfg) for cfg in cells]
    else:
        # cells are independent; submission order fixes the report order
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(run_cell, cells))
    return ExperimentReport(records)


def _preset(tf, n, m, k, size):
    return {
        "tf": tf, "n": n, "m_values": (m,), "k": k,
        "train_size": size, "test_size": size,
    }


# One-command reproductions of the benchmark settings: TF1/TF2 use 5000
# points and k=1 with the node counts of the single-fit figures; the
# multivariate functions use k=n and sizes 5000/20000/50000 for n=2/5/10.
# The node count for the multivariate presets (500) is this package's
# choice; see the README.
PRESETS = {
    "tf1-paper": _preset(TargetFunction.TF1, 1, 30, 1, 5000),
    "tf2-paper": _preset(TargetFunction.TF2, 1, 120, 1, 5000),
    "tf3-n2": _preset(TargetFunction.TF3, 2, 500, 2, 5000),
    "tf3-n5": _preset(TargetFunction.TF3, 5, 500, 5, 20000),
    "tf3-n10": _preset(TargetFunction.TF3, 10, 500, 10, 50000),
    "tf4-n2": _preset(TargetFunction.TF4, 2, 500, 2, 5000),
    "tf4-n5": _preset(TargetFunction.TF4, 5, 500, 5, 20000),
    "tf4-n10": _preset(TargetFunction.TF4, 10, 500, 10, 50000),
    "tf5-n2": _preset(TargetFunction.TF5, 2, 500, 2, 5000),
    "tf5-n5": _preset(TargetFunction.TF5, 5, 500, 5, 20000),
    "tf5-n10": _preset(TargetFunction.TF5, 10, 500, 10, 50000),
}

DEFAULT_PRESET_ACTIVATIONS = tuple(kind.token for kind in ALL_KINDS)


def get_preset(name: str) -> dict:
    try:
        return dict(PRESETS[name])
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigurationError(f"unknown preset {name!r}; available presets: {known}") from None
