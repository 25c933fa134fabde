"""Exception types shared by the solvers and the CLI."""
from __future__ import annotations


class DomainError(ValueError):
    """Argument outside the documented domain of a function."""


class PreconditionError(ValueError):
    """An operation was called outside the regime where it is valid."""


class SolverError(RuntimeError):
    """Base class for solver failures; carries an optional partial report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NoBoundState(SolverError):
    """No bracket for the requested level could be established."""


class NoConvergence(SolverError):
    """Iteration limit reached before the tolerance was met."""
