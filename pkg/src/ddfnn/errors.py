"""Exception types shared across the package.

Plain ``ValueError`` is used for contract violations on individual calls
(bad shapes, non-finite values). The classes below mark errors with a
distinct meaning for callers such as the CLI.
"""


class DdfnnError(Exception):
    """Base class for package-specific errors."""


class ConfigurationError(DdfnnError, ValueError):
    """A hyperparameter or dataset combination that can never be trained."""


class TrainingError(DdfnnError, RuntimeError):
    """Training started but could not produce a finite model."""
