"""Exception hierarchy shared across the package."""

from __future__ import annotations


class HHBoundsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HHBoundsError):
    """Invalid geometry or parameters (degenerate interval, bad grid, t outside range)."""


class EvaluationError(HHBoundsError):
    """A function evaluation produced a non-finite value or failed outright.

    ``where`` carries the offending evaluation point when known.
    """

    def __init__(self, message: str, where: tuple[float, ...] | None = None):
        super().__init__(message)
        self.where = where


class PreconditionError(HHBoundsError):
    """A documented hypothesis was violated (positivity flag, bound ordering)."""
