"""Selects the compiled kernel module at import, falling back to numpy.

Set ``DDFNN_BACKEND=python`` (or ``compiled``) to force a choice;
``auto`` (default) prefers the compiled extension when it imported cleanly.
``scripts/bench_backends.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

from . import _core_py
from .activations import KIND_CODES
from .errors import ConfigurationError

_BACKENDS = {"python": _core_py}
try:
    from . import _core
    _BACKENDS["compiled"] = _core
except ImportError:
    _core = None


def available_backends():
    return tuple(sorted(_BACKENDS))


def _select(name: str):
    if name == "auto":
        return _BACKENDS.get("compiled", _core_py)
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown backend {name!r}; available: {', '.join(available_backends())} (or 'auto')"
        ) from None


_active = _select(os.environ.get("DDFNN_BACKEND", "auto").lower())


def active_backend() -> str:
    return _active.NAME


def use_backend(name: str) -> str:
    """Switch the kernel backend; returns the name now active."""
    global _active
    _active = _select(name)
    return _active.NAME


def place_hyperplanes(X, Y, anchors, k: int):
    X = np.ascontiguousarray(X, dtype=np.float64)
    Y = np.ascontiguousarray(Y, dtype=np.float64)
    anchors = np.ascontiguousarray(anchors, dtype=np.int64)
    return _active.place_hyperplanes(X, Y, anchors, int(k))


def design_matrix(X, weights, biases, kind, softplus_naive: bool = False):
    X = np.ascontiguousarray(X, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    biases = np.ascontiguousarray(biases, dtype=np.float64)
    return _active.design_matrix(X, weights, biases, KIND_CODES[kind], bool(softplus_naive))
