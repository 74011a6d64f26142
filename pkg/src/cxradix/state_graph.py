"""State graph of triples of equivalent radix expansions.

For three expansions p, q, r of one number the state at index k is the
triple (p(k) - q(k), q(k) - r(k), r(k) - p(k)) of differences between the
Gaussian integers carried by the digits at positions >= k. Moving one digit
down, S(k) = (p_k - q_k, q_k - r_k, r_k - p_k) + b * S(k+1).

States are stored with concrete p/q/r roles; quotients by relabelling are
computed on demand.
"""

from __future__ import annotations

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from math import lcm
from typing import NamedTuple, Sequence

from .errors import InvariantViolation, UnsupportedBaseError
from .gaussian import Base, GaussianInt
from .radix import RadixExpansion, evaluate

__all__ = [
    "EdgeLabel",
    "State",
    "StateGraph",
    "allowed_differences",
    "build_graph",
    "canonical_orbit_count",
    "export_graph",
    "pq_class_count",
    "state_path",
    "verify_equivalence",
]

log = logging.getLogger(__name__)

ZERO = GaussianInt(0, 0)


class State(NamedTuple):
    a1: GaussianInt
    a2: GaussianInt
    a3: GaussianInt

    def __str__(self) -> str:
        return f"({self.a1},{self.a2},{self.a3})"


ORIGIN = State(ZERO, ZERO, ZERO)


@dataclass(frozen=True)
class EdgeLabel:
    """Digit differences on an edge plus the realisable digit triples.

    The triples are ``base_triple + (t, t, t)`` for ``0 <= t <= t_max``.
    """

    delta: tuple[int, int, int]
    base_triple: tuple[int, int, int]
    t_max: int

    def triples(self):
        for t in range(self.t_max + 1):
            yield tuple(d + t for d in self.base_triple)


@dataclass(frozen=True)
class Edge:
    src: State
    dst: State
    label: EdgeLabel


@dataclass(frozen=True)
class StateGraph:
    base: Base
    nodes: frozenset[State]
    edges: tuple[Edge, ...]
    start: State = ORIGIN
    _out: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        out: dict[State, dict[State, EdgeLabel]] = {s: {} for s in self.nodes}
        for e in self.edges:
            out[e.src][e.dst] = e.label
        object.__setattr__(self, "_out", out)

    def successors(self, s: State) -> dict[State, EdgeLabel]:
        return self._out.get(s, {})

    def label(self, src: State, dst: State) -> EdgeLabel | None:
        return self._out.get(src, {}).get(dst)

    def sorted_nodes(self) -> list[State]:
        return sorted(self.nodes)


def allowed_differences(base: Base) -> frozenset[GaussianInt]:
    """Possible values of q(k) - r(k) for two equivalent expansions."""
    n = base.n
    if n < 2:
        raise UnsupportedBaseError("state graphs need n >= 2")
    core = [GaussianInt(1, 0), GaussianInt(n, 1), GaussianInt(n - 1, 1)]
    if n == 2:
        core += [GaussianInt(0, 1), GaussianInt(2, 2)]
    return frozenset([ZERO] + core + [-g for g in core])


def _edge_label(src: State, dst: State, base: Base) -> EdgeLabel | None:
    b = base.b
    delta = []
    for s, t in zip(src, dst):
        d = t - b * s
        if d.im:
            return None
        delta.append(d.re)
    d1, d2, d3 = delta
    # digits relative to q: p = d1, q = 0, r = -d2
    rel = (d1, 0, -d2)
    lo, hi = min(rel), max(rel)
    spread = hi - lo
    if spread > base.digit_max:
        return None
    return EdgeLabel((d1, d2, d3), tuple(x - lo for x in rel), base.digit_max - spread)


def _trim_to_cycles(nodes: set[State], out: dict[State, set[State]]) -> set[State]:
    alive = set(nodes)
    changed = True
    while changed:
        changed = False
        for s in list(alive):
            if not out[s] & alive:
                alive.discard(s)
                changed = True
    return alive


def build_graph(base: Base) -> StateGraph:
    """States reachable from (0,0,0) that lie on an infinite path."""
    diffs = allowed_differences(base)
    candidates = [
        State(x, y, -(x + y)) for x in sorted(diffs) for y in sorted(diffs) if -(x + y) in diffs
    ]
    labels: dict[tuple[State, State], EdgeLabel] = {}
    out: dict[State, set[State]] = {}
    seen = {ORIGIN}
    queue = deque([ORIGIN])
    while queue:
        s = queue.popleft()
        out[s] = set()
        for t in candidates:
            lab = _edge_label(s, t, base)
            if lab is None:
                continue
            labels[(s, t)] = lab
            out[s].add(t)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    alive = _trim_to_cycles(seen, out)
    edges = tuple(
        Edge(s, t, lab)
        for (s, t), lab in sorted(labels.items())
        if s in alive and t in alive
    )
    return StateGraph(base, frozenset(alive), edges)


def _relabel(s: State, perm: Sequence[int]) -> State:
    # points relative to q: p = a1, q = 0, r = -a2
    pts = (s.a1, ZERO, -s.a2)
    p, q, r = (pts[i] for i in perm)
    return State(p - q, q - r, r - p)


def canonical_orbit_count(g: StateGraph) -> int:
    """Number of node classes under all relabellings of (p, q, r)."""
    reps = {min(_relabel(s, perm) for perm in permutations(range(3))) for s in g.nodes}
    return len(reps)


def _swap_pq(s: State) -> State:
    return State(-s.a1, -s.a3, -s.a2)


def pq_class_count(g: StateGraph) -> int:
    """Node count of the graph drawn with r leaving the tied pair p = q first.

    Only exits from (0,0,0) that keep p and q equal are followed, and two
    states that differ by swapping p and q are drawn as one node.
    """
    seen = {g.start}
    queue = deque([g.start])
    while queue:
        s = queue.popleft()
        for t in g.successors(s):
            if s == g.start and t.a1 != ZERO:
                continue
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return len({min(s, _swap_pq(s)) for s in seen})


def state_path(expansions: Sequence[RadixExpansion], graph: StateGraph) -> bool:
    """Follow the aligned digits from the top and check every step is an edge.

    Runs through the longest preperiod plus two full common periods and
    requires the state to repeat with the period.
    """
    if len(expansions) == 2:
        trio = (expansions[0], expansions[0], expansions[1])
    else:
        trio = tuple(expansions)
    b = graph.base.b
    top = max(e.top_index for e in trio)
    depth = max(len(e.pre_digits) for e in trio)
    P = lcm(*(max(len(e.period_digits), 1) for e in trio))
    marks = {-depth: None, -depth - P: None, -depth - 2 * P: None}
    state = graph.start
    for k in range(top, -depth - 2 * P - 1, -1):
        p, q, r = (e.digit(k) for e in trio)
        nxt = State(
            GaussianInt(p - q) + b * state.a1,
            GaussianInt(q - r) + b * state.a2,
            GaussianInt(r - p) + b * state.a3,
        )
        if graph.label(state, nxt) is None:
            return False
        state = nxt
        if k in marks:
            marks[k] = state
    # a bounded orbit of the expanding one-period affine map is its fixed point
    return len(set(marks.values())) == 1


def verify_equivalence(expansions: Sequence[RadixExpansion], graph: StateGraph | None = None) -> bool:
    """True iff all expansions denote the same number.

    Exact evaluation decides; the state-graph walk is an independent check
    that must agree for n >= 3 and is only logged for n = 2.
    """
    if len(expansions) not in (2, 3):
        raise ValueError("verify_equivalence takes 2 or 3 expansions")
    bases = {e.base for e in expansions}
    if len(bases) != 1:
        raise ValueError("expansions use different bases")
    (base,) = bases
    values = {evaluate(e) for e in expansions}
    by_value = len(values) == 1
    if graph is None:
        graph = _cached_graph(base)
    by_path = state_path(expansions, graph)
    if by_path != by_value:
        msg = (
            f"state-graph walk ({by_path}) disagrees with evaluation ({by_value}) for "
            + ", ".join(map(str, expansions))
        )
        if base.n >= 3:
            raise InvariantViolation(msg)
        log.warning(msg)
    return by_value


_GRAPHS: dict[int, StateGraph] = {}


def _cached_graph(base: Base) -> StateGraph:
    g = _GRAPHS.get(base.n)
    if g is None:
        g = _GRAPHS[base.n] = build_graph(base)
    return g


def _node_json(s: State) -> list[list[int]]:
    return [[c.re, c.im] for c in s]


def export_graph(g: StateGraph, fmt: str) -> str:
    """Deterministic DOT or JSON text for a state graph."""
    fmt = (fmt or "").lower()
    if fmt not in ("dot", "json"):
        raise ValueError(f"unknown graph format {fmt!r}; use 'dot' or 'json'")
    order = g.sorted_nodes()
    index = {s: i for i, s in enumerate(order)}
    edges = sorted(g.edges, key=lambda e: (index[e.src], index[e.dst]))
    if fmt == "json":
        doc = {
            "n": g.base.n,
            "start": index[g.start],
            "nodes": [_node_json(s) for s in order],
            "edges": [
                {
                    "src": index[e.src],
                    "dst": index[e.dst],
                    "delta": list(e.label.delta),
                    "base_triple": list(e.label.base_triple),
                    "t_max": e.label.t_max,
                }
                for e in edges
            ],
            "orbit_count": canonical_orbit_count(g),
            "pq_class_count": pq_class_count(g),
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [f'digraph "states_n{g.base.n}" {{']
    for s in order:
        lines.append(f'  s{index[s]} [label="{s}"];')
    for e in edges:
        d = ",".join(map(str, e.label.delta))
        lines.append(f'  s{index[e.src]} -> s{index[e.dst]} [label="{d} +{e.label.t_max}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
