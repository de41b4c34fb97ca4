"""Exception hierarchy shared across the package."""

from __future__ import annotations


class QCongError(Exception):
    """Base class for every error raised by qcong."""


class NotDivisible(QCongError, ArithmeticError):
    """Raised when an exact Laurent quotient does not exist.

    The remainder of the failed long division is kept on ``remainder`` so that
    callers can report where the division broke down.
    """

    def __init__(self, remainder, message: str | None = None):
        self.remainder = remainder
        super().__init__(message or f"not exactly divisible; remainder {remainder}")


class ZeroBase(QCongError, ZeroDivisionError):
    """Evaluation at q = 0 of a polynomial with negative exponents."""


class NegativeArgument(QCongError, ValueError):
    pass


class OutOfRange(QCongError, ValueError):
    pass


class NegativeExponent(QCongError, ValueError):
    """A cyclotomic signature with a negative exponent was used where only
    polynomial (non-rational) values make sense."""


class ConstraintViolation(QCongError, ValueError):
    """Parameters fall outside the range in which a family is a theorem."""


class ParityViolation(ConstraintViolation):
    pass


class UnknownFamily(QCongError, KeyError):
    pass
