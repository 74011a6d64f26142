"""Radix expansions in base b = -n+i.

Text form is ``intdigits;predigits[perioddigits]`` with comma-separated
decimal digits, e.g. ``1,5,5;[0,9,4]``, ``0;2,[7]`` or ``1,6,9;``.
Only eventually periodic expansions are representable; every Gaussian
rational has only such expansions, so enumeration over rationals is complete.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import floor, isqrt, lcm
from typing import Iterator, Sequence

from . import kernels
from .errors import DigitSetError, InvariantViolation, ParseError
from .gaussian import (
    Base,
    DigitSet,
    GaussianInt,
    GaussianRational,
    digit_residue,
    exact_div_by_b,
    within_tail_bound,
)

__all__ = [
    "RadixExpansion",
    "TailValue",
    "enumerate_expansions",
    "evaluate",
    "expand_integer",
    "first_divergence",
    "in_fundamental_set",
    "parse_expansion",
    "shift_Tb",
    "unique_in_digit_set",
]

log = logging.getLogger(__name__)

MAX_EXPANSIONS = 3


def _primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    P = len(word)
    for p in range(1, P + 1):
        if P % p == 0 and word[:p] * (P // p) == word:
            return word[:p]
    return word


def _canonical_tail(pre: tuple[int, ...], period: tuple[int, ...]):
    if period:
        period = _primitive_root(period)
        if all(d == 0 for d in period):
            period = ()
    if period:
        # roll the period back over matching preperiod digits
        pre = list(pre)
        while pre and pre[-1] == period[-1]:
            period = (pre.pop(),) + period[:-1]
        pre = tuple(pre)
    else:
        end = len(pre)
        while end and pre[end - 1] == 0:
            end -= 1
        pre = pre[:end]
    return pre, period


@dataclass(frozen=True)
class RadixExpansion:
    """Digits d_l..d_0 ; d_-1 .. d_-a, then a repeating block.

    Instances are canonical on construction: no leading zeros in the
    integer part, primitive non-zero period, minimal preperiod.
    """

    base: Base
    int_digits: tuple[int, ...] = (0,)
    pre_digits: tuple[int, ...] = ()
    period_digits: tuple[int, ...] = ()

    def __post_init__(self):
        ints = tuple(int(d) for d in self.int_digits) or (0,)
        pre = tuple(int(d) for d in self.pre_digits)
        per = tuple(int(d) for d in self.period_digits)
        top = self.base.digit_max
        for d in ints + pre + per:
            if not 0 <= d <= top:
                raise ParseError(f"digit {d} outside [0, {top}] for base {self.base}")
        k = 0
        while k < len(ints) - 1 and ints[k] == 0:
            k += 1
        pre, per = _canonical_tail(pre, per)
        object.__setattr__(self, "int_digits", ints[k:])
        object.__setattr__(self, "pre_digits", pre)
        object.__setattr__(self, "period_digits", per)

    @property
    def is_finite(self) -> bool:
        return not self.period_digits

    @property
    def is_fractional(self) -> bool:
        return self.int_digits == (0,)

    @property
    def top_index(self) -> int:
        """Index of the leading integer digit (0 for a one-digit integer part)."""
        return len(self.int_digits) - 1

    def digit(self, k: int) -> int:
        """Coefficient of b**k."""
        if k >= 0:
            return self.int_digits[-1 - k] if k < len(self.int_digits) else 0
        j = -k - 1
        if j < len(self.pre_digits):
            return self.pre_digits[j]
        if not self.period_digits:
            return 0
        return self.period_digits[(j - len(self.pre_digits)) % len(self.period_digits)]

    def fractional_digits(self) -> Iterator[int]:
        k = -1
        while True:
            yield self.digit(k)
            k -= 1

    def digits_used(self) -> set[int]:
        used = set(self.pre_digits) | set(self.period_digits)
        if not self.is_fractional:
            used |= set(self.int_digits)
        if self.is_finite:
            used.add(0)
        return used

    def sort_key(self):
        return (len(self.int_digits), self.int_digits, self.pre_digits, self.period_digits)

    def __str__(self) -> str:
        out = ",".join(map(str, self.int_digits)) + ";"
        out += ",".join(map(str, self.pre_digits))
        if self.period_digits:
            if self.pre_digits:
                out += ","
            out += "[" + ",".join(map(str, self.period_digits)) + "]"
        return out


def _digit_list(text: str) -> tuple[int, ...]:
    text = text.strip().strip(",")
    if not text:
        return ()
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ParseError(f"bad digit list {text!r}") from None


def parse_expansion(text: str, base: Base) -> RadixExpansion:
    s = "".join(text.split())
    if s.count(";") != 1:
        raise ParseError(f"expansion needs exactly one ';': {text!r}")
    head, tail = s.split(";")
    period: tuple[int, ...] = ()
    if "[" in tail:
        if not tail.endswith("]") or tail.count("[") != 1:
            raise ParseError(f"malformed period in {text!r}")
        pre_text, _, per_text = tail[:-1].partition("[")
        period = _digit_list(per_text)
        if not period:
            raise ParseError(f"empty period in {text!r}")
    else:
        pre_text = tail
    ints = _digit_list(head)
    if not ints:
        raise ParseError(f"missing integer part in {text!r}")
    return RadixExpansion(base, ints, _digit_list(pre_text), period)


def _horner(digits: Sequence[int], b: GaussianInt) -> GaussianInt:
    v = GaussianInt(0, 0)
    for d in digits:
        v = v * b + d
    return v


def evaluate(e: RadixExpansion) -> GaussianRational:
    """Exact value of an eventually periodic expansion."""
    b = e.base.b
    value = GaussianRational.coerce(_horner(e.int_digits, b))
    a = len(e.pre_digits)
    frac = GaussianRational.coerce(_horner(e.pre_digits, b))
    if e.period_digits:
        P = len(e.period_digits)
        frac = frac + GaussianRational.coerce(_horner(e.period_digits, b)) / (b**P - 1)
    if a or e.period_digits:
        value = value + frac / (b**a)
    return value


def expand_integer(z: GaussianInt, base: Base) -> RadixExpansion:
    """Finite expansion of a Gaussian integer by repeated digit extraction."""
    z = GaussianInt.coerce(z)
    cap = 64 + 4 * max(z.norm().bit_length(), 1)
    digits = []
    w = z
    while w:
        if len(digits) > cap:
            raise InvariantViolation(f"digit extraction for {z} did not terminate")
        d = digit_residue(w, base)
        digits.append(d)
        w = exact_div_by_b(w - d, base)
    return RadixExpansion(base, tuple(reversed(digits)) or (0,))


@dataclass(frozen=True)
class TailValue:
    """Fractional remainder of an expansion; must satisfy |value| <= |b|+1."""

    value: GaussianRational
    base: Base

    def __post_init__(self):
        if not within_tail_bound(self.value, self.base):
            raise InvariantViolation(f"tail {self.value} exceeds |b|+1")


def _integer_candidates(z: GaussianRational, base: Base) -> list[GaussianInt]:
    reach = isqrt(base.N) + 3
    cr = floor(z.num.re / z.den)
    ci = floor(z.num.im / z.den)
    out = []
    for re_ in range(cr - reach, cr + reach + 1):
        for im in range(ci - reach, ci + reach + 1):
            w = GaussianInt(re_, im)
            if within_tail_bound(z - w, base):
                out.append(w)
    return out


def _live_states(count: int, src: list[int], dst: list[int]) -> list[bool]:
    """States from which an infinite path exists (iteratively drop sinks)."""
    outdeg = [0] * count
    preds: list[list[int]] = [[] for _ in range(count)]
    for s, t in zip(src, dst):
        outdeg[s] += 1
        preds[t].append(s)
    alive = [True] * count
    stack = [i for i in range(count) if outdeg[i] == 0]
    while stack:
        i = stack.pop()
        if not alive[i]:
            continue
        alive[i] = False
        for p in preds[i]:
            outdeg[p] -= 1
            if outdeg[p] == 0 and alive[p]:
                stack.append(p)
    return alive


def _fractional_lassos(t0: GaussianRational, base: Base) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (preperiod, period) digit pairs of expansions 0.d1d2... equal to t0."""
    den = t0.den
    xs, ys, src, dst, dig = kernels.explore_remainders(base.n, den, t0.num.re, t0.num.im)
    if not xs:
        return []
    alive = _live_states(len(xs), src, dst)
    if not alive[0]:
        return []
    succ: list[list[tuple[int, int]]] = [[] for _ in xs]
    for s, t, d in zip(src, dst, dig):
        if alive[s] and alive[t]:
            succ[s].append((d, t))
    lassos = []
    # paths in the trimmed automaton: at most three, each a lasso
    stack = [(0, [0], [])]
    while stack:
        state, path, digits = stack.pop()
        for d, t in succ[state]:
            if t in path:
                c = path.index(t)
                lassos.append((tuple(digits[:c]), tuple(digits[c:] + [d])))
            else:
                stack.append((t, path + [t], digits + [d]))
            if len(lassos) > 4 * MAX_EXPANSIONS:
                raise InvariantViolation(f"too many expansions of {t0}")
    return lassos


def enumerate_expansions(z, base: Base) -> list[RadixExpansion]:
    """Every radix expansion of the Gaussian rational ``z``, sorted canonically."""
    z = GaussianRational.coerce(z)
    found = set()
    for w in _integer_candidates(z, base):
        t0 = z - w
        lassos = _fractional_lassos(t0, base)
        if not lassos:
            continue
        TailValue(t0, base)
        ints = expand_integer(w, base).int_digits
        for pre, period in lassos:
            found.add(RadixExpansion(base, ints, pre, period))
    result = sorted(found, key=RadixExpansion.sort_key)
    if not 1 <= len(result) <= MAX_EXPANSIONS:
        raise InvariantViolation(f"{z} has {len(result)} expansions in base {base}")
    return result


def shift_Tb(e: RadixExpansion) -> RadixExpansion:
    """Drop the first fractional digit of a purely fractional expansion."""
    if not e.is_fractional:
        raise ValueError(f"shift needs a zero integer part, got {e}")
    if e.pre_digits:
        return RadixExpansion(e.base, (0,), e.pre_digits[1:], e.period_digits)
    if e.period_digits:
        per = e.period_digits
        return RadixExpansion(e.base, (0,), (), per[1:] + per[:1])
    return e


def unique_in_digit_set(z, digits: DigitSet) -> RadixExpansion | None:
    """The expansion of ``z`` using only digits of a separated set, if any."""
    if not digits.separated:
        raise DigitSetError(f"digit set {{{digits}}} is not separated")
    survivors = [
        e
        for e in enumerate_expansions(z, digits.base)
        if e.is_fractional and e.digits_used() <= set(digits.digits)
    ]
    if len(survivors) > 1:
        raise InvariantViolation(
            f"{z} has {len(survivors)} expansions over separated digits {{{digits}}}"
        )
    return survivors[0] if survivors else None


def first_divergence(x: RadixExpansion, y: RadixExpansion) -> tuple[int, int] | None:
    """Index k and difference x_k - y_k at the first differing digit, top down.

    Returns None when the digit sequences coincide.
    """
    top = max(x.top_index, y.top_index)
    depth = max(len(x.pre_digits), len(y.pre_digits))
    span = lcm(max(len(x.period_digits), 1), max(len(y.period_digits), 1))
    for k in range(top, -depth - span - 1, -1):
        dx, dy = x.digit(k), y.digit(k)
        if dx != dy:
            return k, dx - dy
    return None


def in_fundamental_set(t, base: Base) -> bool:
    """Whether the Gaussian rational ``t`` has an expansion 0.d1d2... (lies in S)."""
    return bool(_fractional_lassos(GaussianRational.coerce(t), base))
