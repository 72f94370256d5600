"""Error types shared across the package."""
from __future__ import annotations


class DomainError(ValueError):
    """A documented precondition of an operation was violated."""


class PatternViolation(DomainError):
    """Input contains a forbidden pattern; carries one witnessing occurrence."""

    def __init__(self, message: str, pattern, positions):
        super().__init__(message)
        self.pattern = pattern
        self.positions = positions


class BudgetError(DomainError):
    """An enumeration budget (problem size guard) was exceeded."""
