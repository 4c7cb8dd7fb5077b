"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class LandenError(Exception):
    """Base class for all errors raised by :mod:`ratlanden`."""

    exit_code = 1
    category = "error"


class DomainError(LandenError, ValueError):
    """Input outside the domain of an operation (real poles, zero divisor, ...)."""

    exit_code = 3
    category = "domain"


class ConvergenceError(LandenError):
    exit_code = 4
    category = "non-convergence"


class AccuracyError(LandenError, ArithmeticError):
    """Requested tolerance not reached; ``best`` carries the best estimate."""

    exit_code = 5
    category = "accuracy"

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
