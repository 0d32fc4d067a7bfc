"""Shared exception types."""


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class PrecisionError(ArithmeticError):
    """A series or iteration cap was reached before the error target."""
