"""Exact arithmetic in Z[i] and Q(i), plus bookkeeping for the base b = -n+i.

All values are immutable. Rationals keep a single positive integer
denominator and are always stored reduced, so ``==`` compares values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

from .errors import DigitSetError, NotDivisibleError, ParseError, UnsupportedBaseError

__all__ = [
    "Base",
    "DigitSet",
    "GaussianInt",
    "GaussianRational",
    "digit_residue",
    "exact_div_by_b",
    "parse_gaussian",
    "within_tail_bound",
]


@dataclass(frozen=True, order=True, slots=True)
class GaussianInt:
    """Element of Z[i]. Ordering is lexicographic on (re, im)."""

    re: int = 0
    im: int = 0

    @classmethod
    def coerce(cls, value: Union["GaussianInt", int]) -> "GaussianInt":
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianInt")

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return NotImplemented
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return NotImplemented
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return NotImplemented
        try:
            o = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __pow__(self, k: int) -> "GaussianInt":
        if k < 0:
            raise ValueError("negative exponent; use GaussianRational")
        result, base = GaussianInt(1, 0), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other) -> "GaussianRational":
        return GaussianRational.coerce(self) / other

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        return _format_numerator(self.re, self.im)

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """Element of Q(i) written as ``num / den`` with ``den > 0`` and reduced."""

    num: GaussianInt
    den: int = 1

    def __post_init__(self):
        num = GaussianInt.coerce(self.num)
        den = self.den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(num.re, num.im), den)
        if g > 1:
            num, den = GaussianInt(num.re // g, num.im // g), den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(GaussianInt.coerce(value), 1)

    @classmethod
    def of(cls, re_: int, im: int = 0, den: int = 1) -> "GaussianRational":
        return cls(GaussianInt(re_, im), den)

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def as_gaussian_int(self) -> GaussianInt:
        if self.den != 1:
            raise ValueError(f"{self} is not a Gaussian integer")
        return self.num

    def _binary(self, other):
        if isinstance(other, (GaussianRational, GaussianInt)) or (
            isinstance(other, int) and not isinstance(other, bool)
        ):
            return GaussianRational.coerce(other)
        return None

    def __add__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(i)")
        # (a/d) / (c/e) = a*e*conj(c) / (d*|c|^2)
        return GaussianRational(self.num * o.num.conjugate() * o.den, self.den * o.num.norm())

    def __rtruediv__(self, other):
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.num, self.den)

    def __pow__(self, k: int) -> "GaussianRational":
        if k < 0:
            return GaussianRational.of(1) / (self ** (-k))
        return GaussianRational(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        o = self._binary(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num.re, self.num.im, self.den))

    def __bool__(self) -> bool:
        return bool(self.num)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.num.conjugate(), self.den)

    def norm(self):
        """Squared modulus as a :class:`fractions.Fraction`."""
        return Fraction(self.num.norm(), self.den * self.den)

    def __complex__(self) -> complex:
        return complex(self.num.re / self.den, self.num.im / self.den)

    def __str__(self) -> str:
        body = _format_numerator(self.num.re, self.num.im)
        if self.den == 1:
            return body
        if self.num.im == 0:
            return f"{body}/{self.den}"
        return f"({body})/{self.den}"

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"


def _format_numerator(re_: int, im: int) -> str:
    if im == 0:
        return str(re_)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{im}i"
    if re_ == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{re_}{sign}{imag}"


_NUMERATOR = re.compile(r"^(?P<re>[+-]?\d+)(?:(?P<im>[+-]\d*)i)?$|^(?P<im2>[+-]?\d*)i$")


def _parse_numerator(text: str) -> GaussianInt:
    m = _NUMERATOR.match(text)
    if not m:
        raise ParseError(f"malformed Gaussian numerator: {text!r}")
    imag = m.group("im") if m.group("re") is not None else m.group("im2")
    real = int(m.group("re")) if m.group("re") is not None else 0
    if imag is None:
        im = 0
    elif imag in ("", "+"):
        im = 1
    elif imag == "-":
        im = -1
    else:
        im = int(imag)
    return GaussianInt(real, im)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``(re+imi)/den``, ``re+imi``, ``-7``, ``i`` and similar forms."""
    s = "".join(text.split())
    if not s:
        raise ParseError("empty Gaussian value")
    den = 1
    if "/" in s:
        s, _, den_text = s.rpartition("/")
        if not den_text.isdigit():
            raise ParseError(f"denominator must be a positive integer: {den_text!r}")
        den = int(den_text)
        if den == 0:
            raise ParseError("zero denominator")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return GaussianRational(_parse_numerator(s), den)


@dataclass(frozen=True, slots=True)
class Base:
    """The radix b = -n+i with norm N = n^2 + 1 and digits {0, ..., n^2}."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise UnsupportedBaseError(f"base parameter n must be an integer >= 2, got {self.n!r}")

    @property
    def b(self) -> GaussianInt:
        return GaussianInt(-self.n, 1)

    @property
    def N(self) -> int:
        return self.n * self.n + 1

    @property
    def digit_max(self) -> int:
        return self.n * self.n

    @property
    def digits(self) -> range:
        return range(self.N)

    def __str__(self) -> str:
        return f"-{self.n}+i"


def digit_residue(z: GaussianInt, base: Base) -> int:
    """Digit d in [0, n^2] with z - d divisible by b (uses i = n mod b)."""
    return (z.re + base.n * z.im) % base.N


def exact_div_by_b(z: GaussianInt, base: Base) -> GaussianInt:
    """Return w with w*b == z; raises NotDivisibleError otherwise."""
    w = z * base.b.conjugate()
    N = base.N
    if w.re % N or w.im % N:
        raise NotDivisibleError(f"{z} is not divisible by {base}")
    return GaussianInt(w.re // N, w.im // N)


def within_tail_bound(value: GaussianRational, base: Base) -> bool:
    """Exact test of |value| <= |b| + 1 (the modulus bound on fractional tails).

    With s = |value|^2 and N = n^2 + 1 the condition s <= N + 1 + 2*sqrt(N)
    is decided without floating point.
    """
    s = value.norm()
    N = base.N
    if s <= N + 1:
        return True
    return (s - N - 1) ** 2 <= 4 * N


@dataclass(frozen=True)
class DigitSet:
    """A nonempty set of digits drawn from the base's alphabet."""

    base: Base
    digits: tuple[int, ...]

    def __init__(self, base: Base, digits: Iterable[int]):
        ds = tuple(sorted(set(int(d) for d in digits)))
        if not ds:
            raise DigitSetError("digit set must be nonempty")
        bad = [d for d in ds if not 0 <= d <= base.digit_max]
        if bad:
            raise DigitSetError(f"digits {bad} outside [0, {base.digit_max}] for base {base}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "digits", ds)

    @classmethod
    def full(cls, base: Base) -> "DigitSet":
        return cls(base, base.digits)

    @cached_property
    def separated(self) -> bool:
        return all(b - a >= 2 for a, b in zip(self.digits, self.digits[1:]))

    def __iter__(self):
        return iter(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __contains__(self, d) -> bool:
        return d in self.digits

    def __str__(self) -> str:
        return ",".join(map(str, self.digits))

