"""Exceptions raised by recursive-mds.

Every exception also derives from the closest builtin, so callers that only
know about `ValueError` or `ArithmeticError` keep working."""

# ~ Type Checking (Pyright and MyPy) - Strict Mode
# ~ Linting - Ruff
# ~ Formatting - Black - max 110 characters / line

from __future__ import annotations

__all__ = [
    "MdsError",
    "FieldMismatchError",
    "DomainError",
    "ParameterError",
    "InvariantViolation",
    "BudgetExceededError",
]


class MdsError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(MdsError, TypeError):
    """Operands do not live in the same field (or the same tower extension)."""


class DomainError(MdsError, ArithmeticError):
    """An operation is undefined for its input, e.g. inverting zero."""


class ParameterError(MdsError, ValueError):
    """A precondition on the parameters of an operation does not hold."""


class InvariantViolation(MdsError, RuntimeError):
    """An internal invariant was broken. This always indicates a bug."""


class BudgetExceededError(MdsError, RuntimeError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, message: str, *, required: int, budget: int) -> None:
        super().__init__(f"{message} (required {required}, budget {budget})")
        self.required = required
        self.budget = budget
