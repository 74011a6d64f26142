"""Independent brute-force oracles for the test suite.

Nothing here imports the algorithms under test; values are plain tuples of
ints and Fractions.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from itertools import product


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def cdiv(a, b):
    d = Fraction(b[0] * b[0] + b[1] * b[1])
    num = cmul(a, (b[0], -b[1]))
    return (num[0] / d, num[1] / d)


def cpow(a, k):
    r = (1, 0)
    for _ in range(k):
        r = cmul(r, a)
    return r


def residue_bruteforce(re, im, n):
    """The unique d in 0..n^2 with (re+im i - d) divisible by -n+i."""
    N = n * n + 1
    hits = []
    for d in range(N):
        # (x+iy)/(-n+i) = (x+iy)(-n-i)/N
        x, y = re - d, im
        if (-n * x + y) % N == 0 and (-x - n * y) % N == 0:
            hits.append(d)
    assert len(hits) == 1
    return hits[0]


def evaluate_series(ints, pre, period, n):
    """Exact value from the geometric-series identity, in tuple arithmetic."""
    b = (-n, 1)
    v = (Fraction(0), Fraction(0))
    for d in ints:
        v = cadd(cmul(v, b), (d, 0))
    frac = (Fraction(0), Fraction(0))
    for d in pre:
        frac = cadd(cmul(frac, b), (d, 0))
    if period:
        blk = (0, 0)
        for d in period:
            blk = cadd(cmul(blk, b), (d, 0))
        bp = cpow(b, len(period))
        frac = cadd(frac, cdiv(blk, csub(bp, (1, 0))))
    return cadd(v, cdiv(frac, cpow(b, len(pre))))


def partial_sum(ints, pre, period, n, terms):
    b = complex(-n, 1)
    v = 0j
    for d in ints:
        v = v * b + d
    digits = list(pre)
    while len(digits) < terms:
        digits.extend(period or [0])
    for k, d in enumerate(digits[:terms], start=1):
        v += d * b ** (-k)
    return v


def expansions_bruteforce(re, im, den, n):
    """All expansions as (integer part, pre, period) via a wide-disk automaton.

    Remainders are exact rationals; the modulus bound |t| <= |b| + 1 is
    applied in floating point with a small safety margin.
    """
    N = n * n + 1
    R = math.sqrt(N) + 1 + 1e-9
    z = complex(re / den, im / den)
    b = complex(-n, 1)
    results = set()
    for wr in range(math.floor(z.real - R) - 1, math.ceil(z.real + R) + 2):
        for wi in range(math.floor(z.imag - R) - 1, math.ceil(z.imag + R) + 2):
            t0 = (Fraction(re, den) - wr, Fraction(im, den) - wi)
            if abs(complex(*map(float, t0))) > R:
                continue
            # automaton over remainders t -> b t - d
            edges = {}
            seen = {t0}
            queue = deque([t0])
            while queue:
                t = queue.popleft()
                bt = cmul(t, (-n, 1))
                out = []
                for d in range(N):
                    u = (bt[0] - d, bt[1])
                    if abs(complex(float(u[0]), float(u[1]))) <= R:
                        out.append((d, u))
                        if u not in seen:
                            seen.add(u)
                            queue.append(u)
                edges[t] = out
            live = set(seen)
            changed = True
            while changed:
                changed = False
                for s in list(live):
                    if not any(u in live for _, u in edges[s]):
                        live.discard(s)
                        changed = True
            if t0 not in live:
                continue
            stack = [(t0, [t0], [])]
            while stack:
                s, path, digs = stack.pop()
                for d, u in edges[s]:
                    if u not in live:
                        continue
                    if u in path:
                        c = path.index(u)
                        results.add(((wr, wi), tuple(digs[:c]), tuple(digs[c:] + [d])))
                    else:
                        stack.append((u, path + [u], digs + [d]))
    return results


def tail_disk_radius(n):
    """Radius bound on fractional parts used by the state oracle (centred disk)."""
    return (n * n / 2) / (math.sqrt(n * n + 1) - 1)


def state_graph_bruteforce(n):
    """Trimmed state graph by BFS over digit-difference pairs.

    A state is (a1, a2) with a3 = -a1-a2. Each component is a difference of
    two fractional parts, so its modulus is at most twice the tail radius. Digit triples (p, q, r) realise
    differences d1 = p - q, d2 = q - r whenever max - min <= n^2.
    Returns (nodes, edges) with states as tuples of three (re, im) pairs.
    """
    N = n * n + 1
    bound = 2 * (tail_disk_radius(n)) + 1e-9
    b = (-n, 1)

    def small(g):
        return abs(complex(*g)) <= bound

    def full(a1, a2):
        return (a1, a2, (-a1[0] - a2[0], -a1[1] - a2[1]))

    origin = ((0, 0), (0, 0))
    out = {}
    seen = {origin}
    queue = deque([origin])
    while queue:
        s = queue.popleft()
        a1, a2 = s
        a3 = full(a1, a2)[2]
        targets = set()
        for d1 in range(-(N - 1), N):
            n1 = cadd((d1, 0), cmul(b, a1))
            if not small(n1):
                continue
            for d2 in range(-(N - 1), N):
                pts = (d1, 0, -d2)
                if max(pts) - min(pts) > N - 1:
                    continue
                n2 = cadd((d2, 0), cmul(b, a2))
                if not small(n2):
                    continue
                n3 = cadd((-d1 - d2, 0), cmul(b, a3))
                if not small(n3):
                    continue
                targets.add((n1, n2))
        out[s] = targets
        for t in targets:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    live = set(seen)
    changed = True
    while changed:
        changed = False
        for s in list(live):
            if not out[s] & live:
                live.discard(s)
                changed = True
    nodes = {full(*s) for s in live}
    edges = {(full(*s), full(*t)) for s in live for t in out[s] if t in live}
    return nodes, edges


def orbit_key(state):
    """Canonical key of a state under relabelling p, q, r: the translated point set."""
    a1, a2, _ = state
    pts = [a1, (0, 0), (-a2[0], -a2[1])]
    lo = min(pts)
    return tuple(sorted((p[0] - lo[0], p[1] - lo[1]) for p in pts))


def language_bruteforce(alphabet, forbidden, m):
    """Length-m words that extend to an infinite allowed sequence.

    A word is right-extendable iff it extends by K letters for K at least the
    number of (L-1)-blocks, which forces a repeated block and hence a cycle.
    """
    L = max((len(w) for w in forbidden), default=1)
    horizon = len(alphabet) ** max(L - 1, 1) + 1

    def ok(word):
        for f in forbidden:
            k = len(f)
            for i in range(len(word) - k + 1):
                if tuple(word[i : i + k]) == tuple(f):
                    return False
        return True

    def extends(word, steps):
        if steps == 0:
            return True
        for a in alphabet:
            w2 = word + (a,)
            # only the last L letters can create a new forbidden occurrence
            if ok(w2[-L:]) and extends(w2, steps - 1):
                return True
        return False

    return {w for w in product(alphabet, repeat=m) if ok(w) and extends(w, horizon)}


def fib(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def exact_pixel_counts(digits, n, depth, width, height, window):
    """Pixel histogram of all depth-m anchors using exact rational arithmetic."""
    x0, y0, x1, y1 = (Fraction(c) for c in window)
    b = (-n, 1)
    bm = cpow(b, depth)
    counts = {}
    for word in product(digits, repeat=depth):
        w = (0, 0)
        for d in word:
            w = cadd(cmul(w, b), (d, 0))
        re, im = cdiv(w, bm)
        col = math.floor((re - x0) * width / (x1 - x0))
        row = math.floor((y1 - im) * height / (y1 - y0))
        if 0 <= col < width and 0 <= row < height:
            counts[(row, col)] = counts.get((row, col), 0) + 1
    return counts
