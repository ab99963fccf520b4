"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """A descriptor or structured input violates its invariants."""


class PrecisionError(ArithmeticError):
    """A finite-precision computation cannot certify its answer.

    ``lower_bound`` carries what *is* known, e.g. ``valuation >= K``.
    """

    def __init__(self, message: str, lower_bound: int | None = None):
        super().__init__(message)
        self.lower_bound = lower_bound
