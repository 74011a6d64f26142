"""One-sided subshifts of finite type over digit alphabets.

The language L_m is the set of length-m prefixes of infinite sequences that
avoid every forbidden word. Counting runs on the higher-block graph whose
vertices are the allowed (L-1)-grams, L being the longest forbidden word,
restricted to vertices that start an infinite path.

Text form: ``alphabet=0,5;forbid=5|5;0|9|0`` (``forbid=`` may be empty).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import DigitSetError, ParseError
from .gaussian import Base, DigitSet, GaussianRational
from .radix import RadixExpansion, evaluate, shift_Tb

__all__ = [
    "SFTSpec",
    "conjugacy_spot_check",
    "count_words",
    "entropy_estimate",
    "image_is_invariant",
    "parse_sft",
    "word_counts",
]

MAX_FORBIDDEN_TOTAL = 64
MAX_ALPHABET = 37

Word = tuple[int, ...]


def _contains(word: Word, sub: Word) -> bool:
    m = len(sub)
    return any(word[i : i + m] == sub for i in range(len(word) - m + 1))


@dataclass(frozen=True)
class SFTSpec:
    """Alphabet plus a normalised list of forbidden words (each of length >= 2)."""

    alphabet: DigitSet
    forbidden: tuple[Word, ...] = ()
    _graph: tuple = field(default=None, compare=False, repr=False, hash=False)

    @classmethod
    def create(cls, base: Base, alphabet: Iterable[int], forbidden: Iterable[Sequence[int]] = ()):
        letters = set(int(d) for d in alphabet)
        words = {tuple(int(d) for d in w) for w in forbidden}
        if any(len(w) == 0 for w in words):
            raise ParseError("forbidden words must be nonempty")
        if sum(len(w) for w in words) > MAX_FORBIDDEN_TOTAL:
            raise DigitSetError(f"forbidden words exceed total length {MAX_FORBIDDEN_TOTAL}")
        letters -= {w[0] for w in words if len(w) == 1}
        if not letters:
            raise DigitSetError("alphabet is empty after removing forbidden letters")
        alpha = DigitSet(base, letters)
        if len(alpha) > MAX_ALPHABET:
            raise DigitSetError(f"alphabet larger than {MAX_ALPHABET}")
        words = {w for w in words if len(w) >= 2 and set(w) <= letters}
        # drop words that contain another forbidden word
        minimal = sorted(
            (w for w in words if not any(v != w and _contains(w, v) for v in words)),
            key=lambda w: (len(w), w),
        )
        return cls(alpha, tuple(minimal))

    @property
    def base(self) -> Base:
        return self.alphabet.base

    @property
    def window(self) -> int:
        """Longest forbidden word length (2 for a full shift)."""
        return max((len(w) for w in self.forbidden), default=2)

    def allowed(self, word: Word) -> bool:
        return not any(_contains(word, f) for f in self.forbidden)

    def higher_block_graph(self):
        """(states, successor lists) of live (L-1)-grams; cached."""
        if self._graph is not None:
            return self._graph
        L = self.window
        letters = self.alphabet.digits
        states = [w for w in product(letters, repeat=L - 1) if self.allowed(w)]
        index = {w: i for i, w in enumerate(states)}
        succ = []
        for w in states:
            nxt = []
            for a in letters:
                ext = w + (a,)
                if self.allowed(ext):
                    nxt.append(index[ext[1:]])
            succ.append(nxt)
        alive = [True] * len(states)
        changed = True
        while changed:
            changed = False
            for i, nxt in enumerate(succ):
                if alive[i] and not any(alive[j] for j in nxt):
                    alive[i] = False
                    changed = True
        keep = [i for i in range(len(states)) if alive[i]]
        remap = {old: new for new, old in enumerate(keep)}
        live_states = [states[i] for i in keep]
        live_succ = [[remap[j] for j in succ[i] if alive[j]] for i in keep]
        graph = (live_states, live_succ)
        object.__setattr__(self, "_graph", graph)
        return graph

    def __str__(self) -> str:
        forb = ";".join("|".join(map(str, w)) for w in self.forbidden)
        return f"alphabet={self.alphabet};forbid={forb}"


def parse_sft(text: str, base: Base) -> SFTSpec:
    s = "".join(text.split())
    if not s.startswith("alphabet="):
        raise ParseError(f"SFT spec must start with 'alphabet=': {text!r}")
    body = s[len("alphabet=") :]
    alpha_text, sep, forbid_text = body.partition(";forbid=")
    if not sep and ";" in body:
        raise ParseError(f"expected ';forbid=' in {text!r}")
    try:
        alphabet = [int(t) for t in alpha_text.split(",") if t]
        words = [
            tuple(int(d) for d in w.split("|")) for w in forbid_text.split(";") if w
        ]
    except ValueError:
        raise ParseError(f"bad SFT spec {text!r}") from None
    if not alphabet:
        raise ParseError("empty alphabet")
    return SFTSpec.create(base, alphabet, words)


def word_counts(spec: SFTSpec, m_max: int) -> list[int]:
    """Exact |L_m| for m = 1..m_max."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    states, succ = spec.higher_block_graph()
    L1 = spec.window - 1
    # short words: distinct prefixes of live blocks
    counts = [len({w[:m] for w in states}) for m in range(1, min(m_max, L1) + 1)]
    # longer words: paths of m - L1 steps from any live block
    vec = [1] * len(states)
    for _ in range(L1 + 1, m_max + 1):
        vec = [sum(vec[j] for j in nxt) for nxt in succ]
        counts.append(sum(vec))
    return counts


def count_words(spec: SFTSpec, m: int) -> int:
    return word_counts(spec, m)[m - 1]


@dataclass(frozen=True)
class EntropyEstimate:
    rows: tuple[tuple[int, int, float | None], ...]
    fekete_bound: float | None

    def estimates(self) -> list[float | None]:
        return [r[2] for r in self.rows]


def entropy_estimate(spec: SFTSpec, m_max: int) -> EntropyEstimate:
    """ln|L_m|/m for each m; the minimum is an upper bound on the entropy.

    The bound is valid because |L_{m+k}| <= |L_m| |L_k|.
    """
    counts = word_counts(spec, m_max)
    rows = []
    for m, c in enumerate(counts, start=1):
        rows.append((m, c, math.log(c) / m if c else None))
    finite = [r[2] for r in rows if r[2] is not None]
    return EntropyEstimate(tuple(rows), min(finite) if finite else None)


def _require_separated(spec: SFTSpec) -> None:
    if not spec.alphabet.separated:
        raise DigitSetError(f"alphabet {{{spec.alphabet}}} is not separated")


def image_is_invariant(spec: SFTSpec) -> bool:
    """Self-audit that this SFT defines a closed, shift-invariant set.

    Checks the normal form and that the live block graph is closed under
    extension: every live block has a live successor and each successor is
    the shifted block with one new letter appended.
    """
    _require_separated(spec)
    for w in spec.forbidden:
        if len(w) < 2 or any(v != w and _contains(w, v) for v in spec.forbidden):
            return False
    states, succ = spec.higher_block_graph()
    if not states:
        return False
    index = {w: i for i, w in enumerate(states)}
    for i, w in enumerate(states):
        if not succ[i]:
            return False
        for j in succ[i]:
            if states[j][:-1] != w[1:] or not spec.allowed(w + states[j][-1:]):
                return False
        # every allowed one-letter extension that stays live must be an edge
        for a in spec.alphabet:
            nxt = w[1:] + (a,)
            if spec.allowed(w + (a,)) and nxt in index and index[nxt] not in succ[i]:
                return False
    return True


def random_periodic_word(spec: SFTSpec, rng: random.Random) -> tuple[Word, Word]:
    """A random eventually periodic sequence in the subshift, as (pre, period)."""
    states, succ = spec.higher_block_graph()
    s = rng.randrange(len(states))
    letters = list(states[s])
    path = [s]
    while True:
        t = rng.choice(succ[s])
        letters.append(states[t][-1])
        if t in path:
            c = path.index(t)
            # letters[i + L1 - 1] closes block path[i]
            L1 = len(states[0])
            cut = c + L1
            return tuple(letters[:cut]), tuple(letters[cut:])
        path.append(t)
        s = t


def conjugacy_spot_check(spec: SFTSpec, samples: int, seed: int = 0) -> bool:
    """Check evaluate(shift(w)) == b * evaluate(w) - w_1 on random periodic words."""
    _require_separated(spec)
    rng = random.Random(seed)
    b = spec.base.b
    for _ in range(samples):
        pre, period = random_periodic_word(spec, rng)
        e = RadixExpansion(spec.base, (0,), pre, period)
        first = e.digit(-1)
        lhs = evaluate(shift_Tb(e))
        rhs = GaussianRational.coerce(b) * evaluate(e) - first
        if lhs != rhs:
            return False
    return True
