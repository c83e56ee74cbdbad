"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError and its subclasses are
input-syntax problems (exit 2), ComputationError covers resource limits and
geometrically invalid inputs (exit 1), InconsistencyError marks results that
violate a consistency guard (exit 3).
"""


class ParseError(ValueError):
    """Malformed textual input; carries the offending position when known."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(ParseError):
    pass


class ExponentError(ParseError):
    """Negative or non-integer exponent after '^'."""


class RingMismatchError(ValueError):
    """Operands declared over different rings."""


class ComputationError(RuntimeError):
    """Computation could not be completed (budget, bad geometry, ...)."""


class BudgetExceededError(ComputationError):
    """A configured resource budget was exhausted; never silently truncated."""


class InvalidIcisError(ComputationError):
    """Input does not define an isolated complete intersection singularity."""


class InconsistencyError(RuntimeError):
    """A computed quantity violates a consistency guard (e.g. a negative rank)."""
