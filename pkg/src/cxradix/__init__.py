"""Radix expansions in base -n+i and the fractal machinery built on them."""

from .errors import (
    CxRadixError,
    DigitSetError,
    InvariantViolation,
    NotDivisibleError,
    ParseError,
    UnsupportedBaseError,
)
from .gaussian import Base, DigitSet, GaussianInt, GaussianRational, parse_gaussian

__version__ = "0.1.0"

__all__ = [
    "Base",
    "CxRadixError",
    "DigitSet",
    "DigitSetError",
    "GaussianInt",
    "GaussianRational",
    "InvariantViolation",
    "NotDivisibleError",
    "ParseError",
    "UnsupportedBaseError",
    "parse_gaussian",
]
