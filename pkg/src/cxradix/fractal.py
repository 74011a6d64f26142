"""Tiles, tile counting and box-counting dimension of digit-restricted sets.

An m-tile with prefix d1..dm is 0.d1...dm + b**-m * S where S is the set of
purely fractional expansions. Two same-depth tiles meet exactly when the
Gaussian integer g = b**m * (anchor1 - anchor2) lies in the difference set
of the state graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import DigitSetError, InvariantViolation
from .gaussian import Base, DigitSet, GaussianInt, GaussianRational
from .radix import in_fundamental_set
from .state_graph import allowed_differences
from .subshift import SFTSpec, count_words, entropy_estimate

__all__ = [
    "DimensionReport",
    "Tile",
    "box_dimension_CD",
    "box_dimension_subshift",
    "count_tiles_language",
    "is_separated",
    "min_cover_bruteforce",
    "sandwich_constant",
    "tiles_intersect",
]

HAUSDORFF_NOTE = (
    "Hausdorff dimension equals box-counting dimension for this set "
    "(separated digits); stated, not computed"
)


def is_separated(D: DigitSet) -> bool:
    return D.separated


def _horner(digits: Sequence[int], b: GaussianInt) -> GaussianInt:
    v = GaussianInt(0, 0)
    for d in digits:
        v = v * b + d
    return v


@dataclass(frozen=True)
class Tile:
    base: Base
    prefix: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(d) for d in self.prefix))
        if not self.prefix:
            raise ValueError("tile depth must be >= 1")
        top = self.base.digit_max
        if any(not 0 <= d <= top for d in self.prefix):
            raise DigitSetError(f"tile prefix {self.prefix} has digits outside [0, {top}]")

    @property
    def depth(self) -> int:
        return len(self.prefix)

    @property
    def scaled_anchor(self) -> GaussianInt:
        """b**m * anchor, a Gaussian integer."""
        return _horner(self.prefix, self.base.b)

    @property
    def anchor(self) -> GaussianRational:
        return self.scaled_anchor / self.base.b**self.depth


def tiles_intersect(t1: Tile, t2: Tile) -> bool:
    if t1.base != t2.base or t1.depth != t2.depth:
        raise ValueError("tiles must share base and depth")
    g = t1.scaled_anchor - t2.scaled_anchor
    return g in allowed_differences(t1.base)


def count_tiles_language(spec: SFTSpec, m: int) -> int:
    return count_words(spec, m)


def sandwich_constant(base: Base) -> int:
    """Constant c in N_m <= count <= c * N_m: 8 for n >= 3, 10 for n = 2.

    Any valid c is at least the number of nonzero differences (6 and 10).
    """
    return 10 if base.n == 2 else 8


MAX_COVER_DEPTH = 2
MAX_COVER_N = 3


def _sample_tails(digits: Sequence[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Constant and two-periodic tails over the digits (points of C_D)."""
    tails = [((), (d,)) for d in digits]
    tails += [((), (d, e)) for d in digits for e in digits if d != e]
    return tails


def _tail_value(period: tuple[int, ...], b: GaussianInt) -> GaussianRational:
    return GaussianRational.coerce(_horner(period, b)) / (b ** len(period) - 1)


def min_cover_bruteforce(points: Iterable[Tile], base: Base) -> int:
    """Fewest unrestricted m-tiles whose union covers Y.

    Y is the part of C_D lying in the given D-tiles, D being the digits used
    by their prefixes. It is sampled by points with constant or two-periodic
    D-tails inside each tile; a point 0.w t lies in the tile with prefix w'
    iff t + g is in S, where g = W - W' must be in the difference set. The
    set cover over those samples is solved exactly.
    """
    tiles = sorted(set(points), key=lambda t: t.prefix)
    if not tiles:
        return 0
    m = tiles[0].depth
    if any(t.base != base or t.depth != m for t in tiles):
        raise ValueError("tiles must share base and depth")
    if m > MAX_COVER_DEPTH or base.n > MAX_COVER_N:
        raise ValueError(
            f"min_cover_bruteforce is limited to m <= {MAX_COVER_DEPTH}, n <= {MAX_COVER_N}"
        )
    b = base.b
    digits = sorted({d for t in tiles for d in t.prefix})
    diffs = sorted(allowed_differences(base))
    by_scaled = {
        _horner(w, b): w for w in product(base.digits, repeat=m)
    }
    member: dict[GaussianRational, bool] = {}

    def in_S(z: GaussianRational) -> bool:
        hit = member.get(z)
        if hit is None:
            hit = member[z] = in_fundamental_set(z, base)
        return hit

    cover_sets: set[frozenset] = set()
    for tile in tiles:
        W = tile.scaled_anchor
        for _, period in _sample_tails(digits):
            t = _tail_value(period, b)
            owners = frozenset(
                by_scaled[W - g] for g in diffs if W - g in by_scaled and in_S(t + g)
            )
            assert tile.prefix in owners
            cover_sets.add(owners)
    return _exact_set_cover(list(cover_sets))


def _exact_set_cover(elements: list[frozenset]) -> int:
    """Minimum number of candidates hitting every element's owner set."""
    # drop elements whose owner set contains another (implied constraints)
    elements = sorted(set(elements), key=len)
    kept: list[frozenset] = []
    for e in elements:
        if not any(k <= e for k in kept):
            kept.append(e)
    best = len(kept)

    def search(remaining: list[frozenset], used: int) -> None:
        nonlocal best
        if not remaining:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        pivot = min(remaining, key=len)
        for c in sorted(pivot):
            search([e for e in remaining if c not in e], used + 1)

    search(kept, 0)
    return best


@dataclass
class DimensionReport:
    """Exact dimension descriptor plus the per-depth tile counts behind it."""

    n: int
    digits: tuple[int, ...]
    num_log: str
    base_log: str
    value: float
    rows: list[tuple[int, int, float]]
    forbid: tuple[tuple[int, ...], ...] = ()
    separated: bool = True
    fekete_bound: float | None = None
    annotation: str | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def base_log_value(self) -> float:
        return 0.5 * math.log(self.n * self.n + 1)

    @property
    def fekete_dimension_bound(self) -> float | None:
        if self.fekete_bound is None:
            return None
        return self.fekete_bound / self.base_log_value

    def to_json(self) -> dict:
        return {
            "kind": "subshift" if self.fekete_bound is not None else "cantor",
            "n": self.n,
            "digits": list(self.digits),
            "forbid": [list(w) for w in self.forbid],
            "exact": {"num_log": self.num_log, "base_log": self.base_log, "value": self.value},
            "rows": [{"m": m, "count": str(c), "estimate": est} for m, c, est in self.rows],
            "fekete_bound": self.fekete_bound,
            "fekete_dimension_bound": self.fekete_dimension_bound,
            "separated": self.separated,
            "sandwich_constant": sandwich_constant(Base(self.n)),
            "annotation": self.annotation,
            "warnings": list(self.warnings),
        }


def _base_log_text(n: int) -> str:
    return f"ln({n * n + 1})/2"


def box_dimension_CD(D: DigitSet, m_max: int) -> DimensionReport:
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    base = D.base
    k = len(D)
    full = SFTSpec.create(base, D.digits)
    blog = 0.5 * math.log(base.N)
    rows = []
    for m in range(1, m_max + 1):
        c = count_tiles_language(full, m)
        if c != k**m:
            raise InvariantViolation(f"tile count {c} != {k}^{m}")
        rows.append((m, c, math.log(c) / (m * blog)))
    if k == base.N:
        value = 2.0  # ln(n^2+1) / (ln(n^2+1)/2)
    else:
        value = math.log(k) / blog
    return DimensionReport(
        n=base.n,
        digits=D.digits,
        num_log=f"ln({k})",
        base_log=_base_log_text(base.n),
        value=value,
        rows=rows,
        separated=D.separated,
        annotation=HAUSDORFF_NOTE if D.separated else None,
    )


def _spectral_radius(spec: SFTSpec) -> float:
    states, succ = spec.higher_block_graph()
    A = np.zeros((len(states), len(states)))
    for i, nxt in enumerate(succ):
        A[i, nxt] = 1.0
    return float(max(abs(np.linalg.eigvals(A))))


def box_dimension_subshift(spec: SFTSpec, m_max: int) -> DimensionReport:
    """Dimension of the image of an SFT in C_D.

    The value is ln(rho)/ln|b| with rho the spectral radius of the block
    graph; rows and the Fekete bound come from exact word counts.
    """
    base = spec.base
    blog = 0.5 * math.log(base.N)
    ent = entropy_estimate(spec, m_max)
    rows = [(m, c, est / blog) for m, c, est in ent.rows]
    rho = _spectral_radius(spec)
    warnings = []
    if not spec.alphabet.separated:
        warnings.append(
            f"alphabet {{{spec.alphabet}}} is not separated: the image need not be "
            "invariant under T_b and the formula is reported without that guarantee"
        )
    return DimensionReport(
        n=base.n,
        digits=spec.alphabet.digits,
        num_log=f"ln({rho:.12g})",
        base_log=_base_log_text(base.n),
        value=max(math.log(rho), 0.0) / blog,
        rows=rows,
        forbid=spec.forbidden,
        separated=spec.alphabet.separated,
        fekete_bound=ent.fekete_bound,
        annotation=HAUSDORFF_NOTE if spec.alphabet.separated else None,
        warnings=warnings,
    )
