"""Data-driven, closed-form training of single-hidden-layer feedforward networks.

Hidden-node weights and biases are computed from hyperplanes fitted to the
targets around randomly selected training points; only the output weights
are solved for, by minimum-norm least squares. Seven activation families are
supported, each with its own placement rule.
"""

from ._backend import active_backend, available_backends, use_backend
from .activations import (
    ALL_KINDS,
    ActivationKind,
    HiddenNode,
    PLACEMENT_VALUE,
    activation_values,
    evaluate,
    parameterize,
    parameterize_batch,
)
from .benchmarks import (
    ExperimentReport,
    PRESETS,
    SweepRecord,
    TargetFunction,
    eval_tf,
    eval_tf_batch,
    get_preset,
    make_dataset,
    make_dataset_pair,
    rmse,
    run_sweep,
)
from .data import Dataset, Normalization, load_x_csv, load_xy_csv
from .errors import ConfigurationError, DdfnnError, TrainingError
from .local_geometry import (
    Hyperplane,
    Neighborhood,
    find_neighborhood,
    fit_hyperplane,
    k_nearest,
)
from .solver import default_rcond, solve_min_norm
from .trainer import (
    FnnModel,
    RNG_ALGORITHM,
    TrainConfig,
    load_model,
    predict,
    predict_batch,
    save_model,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_KINDS",
    "ActivationKind",
    "ConfigurationError",
    "Dataset",
    "DdfnnError",
    "ExperimentReport",
    "FnnModel",
    "HiddenNode",
    "Hyperplane",
    "Neighborhood",
    "Normalization",
    "PLACEMENT_VALUE",
    "PRESETS",
    "RNG_ALGORITHM",
    "SweepRecord",
    "TargetFunction",
    "TrainConfig",
    "TrainingError",
    "activation_values",
    "active_backend",
    "available_backends",
    "default_rcond",
    "eval_tf",
    "eval_tf_batch",
    "evaluate",
    "find_neighborhood",
    "fit_hyperplane",
    "get_preset",
    "k_nearest",
    "load_model",
    "load_x_csv",
    "load_xy_csv",
    "make_dataset",
    "make_dataset_pair",
    "parameterize",
    "parameterize_batch",
    "predict",
    "predict_batch",
    "rmse",
    "run_sweep",
    "save_model",
    "solve_min_norm",
    "train",
    "use_backend",
    "__version__",
]
