"""Exception hierarchy shared by every module."""


class CxRadixError(Exception):
    """Base class for all errors raised by cxradix."""


class ParseError(CxRadixError, ValueError):
    """Text input does not match the expected grammar."""


class UnsupportedBaseError(CxRadixError, ValueError):
    """Base parameter n outside the supported range."""


class NotDivisibleError(CxRadixError, ArithmeticError):
    """A Gaussian integer was not divisible by the base."""


class DigitSetError(CxRadixError, ValueError):
    """Digit set is empty, out of range, or violates a precondition."""


class InvariantViolation(CxRadixError, AssertionError):
    """An internal mathematical invariant failed; indicates a bug."""
