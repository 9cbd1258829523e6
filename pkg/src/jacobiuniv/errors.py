"""Exception hierarchy shared by all modules."""


class JacobiUnivError(Exception):
    """Base class for errors raised by this package."""


class DomainError(JacobiUnivError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SchemaError(JacobiUnivError, ValueError):
    """A measure or interval document violates the schema."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class PreconditionError(JacobiUnivError, ValueError):
    """A documented precondition (sizes, windows, ranges) does not hold."""


class NumericError(JacobiUnivError, ArithmeticError):
    """An iterative numerical procedure failed to converge."""


class UnsupportedRegimeError(DomainError):
    """The requested argument range is not covered by the implementation."""
