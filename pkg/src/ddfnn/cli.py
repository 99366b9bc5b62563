"""Command-line interface.

Subcommands: ``train`` and ``predict`` work on CSV files; ``bench`` runs a
named benchmark preset; ``sweep`` runs an explicit (activation, m, seed)
grid; ``curve`` emits fitted-curve and per-node plot data for the 1-D
benchmarks. All outputs are UTF-8 CSV with LF line endings, and every
command is deterministic given its flags.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import _backend
from .activations import ActivationKind
from .benchmarks import (
    DEFAULT_PRESET_ACTIVATIONS,
    TargetFunction,
    get_preset,
    make_dataset_pair,
    rmse,
    run_sweep,
    tf_arity,
)
from .data import Dataset, Normalization, load_x_csv, load_xy_csv
from .errors import ConfigurationError, DdfnnError
from .trainer import TrainConfig, load_model, predict_batch, save_model, train


def _default_seed() -> int:
    return int(os.environ.get("DDM_SEED", "0"))


def _int_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or comma list, got {text!r}") from None


def _af_list(text: str):
    return [ActivationKind.from_token(tok) for tok in text.split(",") if tok.strip() != ""]


def _fmt(v: float) -> str:
    return repr(float(v))


def _add_solver_flags(p):
    p.add_argument("--rcond", type=float, default=None,
                   help="pseudoinverse cutoff (default: eps * max(N, m))")
    p.add_argument("--ridge", type=float, default=0.0,
                   help="Tikhonov term for the output solve (default 0 = plain pseudoinverse)")
    p.add_argument("--softplus-naive", action="store_true",
                   help="evaluate softplus as log(1+exp(z)) verbatim (can overflow)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddfnn",
        description="Closed-form, data-driven training of single-hidden-layer networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train on a CSV (n input columns then one target column)")
    p.add_argument("data", help="training CSV with a header row")
    p.add_argument("--m", type=int, required=True, help="hidden node count")
    p.add_argument("--k", type=int, required=True, help="neighborhood size (>= input dimension)")
    p.add_argument("--af", type=ActivationKind.from_token, default=ActivationKind.SIGMOID_UNIPOLAR,
                   help="activation token: sigu sigb sin satu satb relu soft (default sigu)")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $DDM_SEED or 0)")
    p.add_argument("--out", required=True, help="model file to write (JSON)")
    _add_solver_flags(p)

    p = sub.add_parser("predict", help="predict with a saved model on a CSV of inputs")
    p.add_argument("model", help="model file written by 'train'")
    p.add_argument("data", help="CSV of input columns with a header row")
    p.add_argument("--out", required=True, help="prediction CSV to write")

    p = sub.add_parser("bench", help="run a named benchmark preset")
    p.add_argument("preset", help="preset name (see --list via an unknown name)")
    p.add_argument("--af", type=_af_list, default=None, help="comma list of activation tokens")
    p.add_argument("--m", type=_int_list, default=None, help="hidden node count(s), comma list")
    p.add_argument("--k", type=int, default=None, help="neighborhood size override")
    p.add_argument("--n", type=int, default=None, help="input dimension override")
    p.add_argument("--seed", type=_int_list, default=None,
                   help="training seed(s), comma list (default: $DDM_SEED or 0)")
    p.add_argument("--data-seed", type=int, default=0, help="dataset generation seed")
    p.add_argument("--train-size", type=int, default=None)
    p.add_argument("--test-size", type=int, default=None)
    p.add_argument("--threads", type=int, default=1, help="worker threads across sweep cells")
    p.add_argument("--timings", action="store_true",
                   help="record wall_ms per cell (off by default so reruns are byte-identical)")
    p.add_argument("--out", default=None, help="report CSV (default: <preset>.csv)")
    _add_solver_flags(p)

    p = sub.add_parser("sweep", help="run an explicit (activation, m, seed) grid")
    p.add_argument("--tf", type=TargetFunction.from_token, required=True, help="tf1..tf5")
    p.add_argument("--n", type=int, default=None, help="input dimension (required for tf3-tf5)")
    p.add_argument("--af", type=_af_list,
                   default=[ActivationKind.from_token(t) for t in DEFAULT_PRESET_ACTIVATIONS],
                   help="comma list of activation tokens (default: all seven)")
    p.add_argument("--m", type=_int_list, required=True, help="hidden node count(s), comma list")
    p.add_argument("--k", type=int, required=True, help="neighborhood size")
    p.add_argument("--seed", type=_int_list, default=None,
                   help="training seed(s), comma list (default: $DDM_SEED or 0)")
    p.add_argument("--data-seed", type=int, default=0, help="dataset generation seed")
    p.add_argument("--train-size", type=int, default=5000)
    p.add_argument("--test-size", type=int, default=5000)
    p.add_argument("--threads", type=int, default=1, help="worker threads across sweep cells")
    p.add_argument("--timings", action="store_true",
                   help="record wall_ms per cell (off by default so reruns are byte-identical)")
    p.add_argument("--out", required=True, help="report CSV to write")
    _add_solver_flags(p)

    p = sub.add_parser("curve", help="fitted-curve and per-node plot data (1-D benchmarks)")
    p.add_argument("--tf", type=TargetFunction.from_token, required=True, help="tf1 or tf2")
    p.add_argument("--af", type=ActivationKind.from_token, required=True)
    p.add_argument("--m", type=int, required=True, help="hidden node count")
    p.add_argument("--k", type=int, required=True, help="neighborhood size")
    p.add_argument("--seed", type=int, default=None, help="training seed (default: $DDM_SEED or 0)")
    p.add_argument("--data-seed", type=int, default=0, help="dataset generation seed")
    p.add_argument("--train-size", type=int, default=5000)
    p.add_argument("--test-size", type=int, default=5000)
    p.add_argument("--out", required=True, help="curve CSV; node shapes go to <out stem>_nodes.csv")
    _add_solver_flags(p)

    return parser


def _cmd_train(args) -> int:
    X, y, _names = load_xy_csv(args.data)
    norm = Normalization(
        input_ranges=np.column_stack([X.min(axis=0), X.max(axis=0)]),
        target_bounds=(float(y.min()), float(y.max())),
        target_range=(0.0, 1.0),
    )
    dataset = Dataset(norm.normalize_inputs(X), norm.normalize_targets(y), norm,
                      provenance={"source": str(args.data)})
    config = TrainConfig(
        hidden_nodes=args.m, n_neighbors=args.k, activation=args.af,
        seed=args.seed if args.seed is not None else _default_seed(),
        rcond=args.rcond, ridge=args.ridge, softplus_naive=args.softplus_naive,
    )
    model = train(dataset, config)
    save_model(model, args.out)
    err = rmse(predict_batch(model, dataset.inputs), dataset.targets)
    print(f"rmse_train={_fmt(err)}")
    return 0


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    X, names = load_x_csv(args.data, expected_dim=model.input_dim)
    preds = model.normalization.denormalize_targets(
        predict_batch(model, model.normalization.normalize_inputs(X))
    )
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(names + ["prediction"]) + "\n")
        for row, p in zip(X, preds):
            fh.write(",".join(_fmt(v) for v in row) + f",{_fmt(p)}\n")
    print(f"wrote {len(preds)} predictions to {args.out}")
    return 0


def _run_and_report(args, settings) -> int:
    report = run_sweep(
        tf=settings["tf"], n=settings["n"], activations=settings["activations"],
        m_values=settings["m_values"], k=settings["k"], seeds=settings["seeds"],
        train_size=settings["train_size"], test_size=settings["test_size"],
        data_seed=args.data_seed, rcond=args.rcond, ridge=args.ridge,
        softplus_naive=args.softplus_naive, threads=args.threads, timings=args.timings,
    )
    report.write_csv(settings["out"])

    tf = settings["tf"]
    print(f"{tf.token} n={settings['n']} k={settings['k']} "
          f"train={settings['train_size']} test={settings['test_size']} "
          f"-> {settings['out']}")
    print(f"{'af':<6} {'median rmse_test':>18}")
    for af in settings["activations"]:
        tok = af.token if isinstance(af, ActivationKind) else af
        med = report.median_test_rmse(tok)
        shown = f"{med:.3e}" if med is not None else "overflow"
        print(f"{tok:<6} {shown:>18}")
    return 0


def _cmd_bench(args) -> int:
    preset = get_preset(args.preset)
    seeds = args.seed if args.seed is not None else [_default_seed()]
    settings = {
        "tf": preset["tf"],
        "n": args.n if args.n is not None else preset["n"],
        "activations": args.af if args.af is not None else list(DEFAULT_PRESET_ACTIVATIONS),
        "m_values": args.m if args.m is not None else list(preset["m_values"]),
        "k": args.k if args.k is not None else preset["k"],
        "seeds": seeds,
        "train_size": args.train_size if args.train_size is not None else preset["train_size"],
        "test_size": args.test_size if args.test_size is not None else preset["test_size"],
        "out": args.out if args.out is not None else f"{args.preset}.csv",
    }
    return _run_and_report(args, settings)


def _cmd_sweep(args) -> int:
    seeds = args.seed if args.seed is not None else [_default_seed()]
    settings = {
        "tf": args.tf, "n": tf_arity(args.tf, args.n), "activations": args.af,
        "m_values": args.m, "k": args.k, "seeds": seeds,
        "train_size": args.train_size, "test_size": args.test_size, "out": args.out,
    }
    return _run_and_report(args, settings)


def _cmd_curve(args) -> int:
    if args.tf not in (TargetFunction.TF1, TargetFunction.TF2):
        raise ConfigurationError(
            f"curve plots are 1-D only; {args.tf.token} is multivariate "
            "(supported: tf1, tf2)"
        )
    seed = args.seed if args.seed is not None else _default_seed()
    train_ds, test_ds = make_dataset_pair(args.tf, 1, args.train_size, args.test_size,
                                          args.data_seed)
    config = TrainConfig(
        hidden_nodes=args.m, n_neighbors=args.k, activation=args.af, seed=seed,
        rcond=args.rcond, ridge=args.ridge, softplus_naive=args.softplus_naive,
    )
    model = train(train_ds, config)

    x_natural = model.normalization.denormalize_inputs(test_ds.inputs)[:, 0]
    y_fit = predict_batch(model, test_ds.inputs)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,y_true,y_fit\n")
        for x, yt, yf in zip(x_natural, test_ds.targets, y_fit):
            fh.write(f"{_fmt(x)},{_fmt(yt)},{_fmt(yf)}\n")

    stem, ext = os.path.splitext(args.out)
    nodes_path = f"{stem}_nodes{ext or '.csv'}"
    shapes = _backend.design_matrix(test_ds.inputs, model.weights, model.biases,
                                    model.activation, model.softplus_naive)
    with open(nodes_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x," + ",".join(f"node_{j + 1}" for j in range(model.hidden_nodes)) + "\n")
        for x, row in zip(x_natural, shapes):
            fh.write(f"{_fmt(x)}," + ",".join(_fmt(v) for v in row) + "\n")

    err = rmse(y_fit, test_ds.targets)
    print(f"rmse_test={_fmt(err)}")
    print(f"wrote {args.out} and {nodes_path}")
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "predict": _cmd_predict,
    "bench": _cmd_bench,
    "sweep": _cmd_sweep,
    "curve": _cmd_curve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and usage errors
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DdfnnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
