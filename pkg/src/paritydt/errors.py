"""Exception types shared across the package."""

from __future__ import annotations


class ParitydtError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ParitydtError):
    """Mismatched widths or arities between operands."""


class BudgetExceededError(ParitydtError):
    """An exact computation was refused because its input exceeds the
    size up to which the implementation guarantees exhaustive search.
    The message names the binding constraint."""


class DomainError(ParitydtError):
    """A semantic precondition failed (point outside a coset, zero
    function where a 1-input is required, and so on)."""


class FunctionSpecError(ParitydtError):
    """A function specification string failed to parse.

    ``position`` is the 0-based offset into the spec string at which
    the problem was detected, when known.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
