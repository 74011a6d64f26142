"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import random
import timeit
from math import isqrt

import numpy as np

from cxradix import Base, DigitSet
from cxradix import _pure
from cxradix.render import RenderConfig, _digit_weights, default_window

try:
    from cxradix import _core
except ImportError:
    _core = None

def _recorded_calls(n, period, seed):
    """The kernel calls made while enumerating expansions of a long-period value."""
    from cxradix import kernels
    from cxradix.radix import RadixExpansion, enumerate_expansions, evaluate

    rng = random.Random(seed)
    base = Base(n)
    calls = []
    real = kernels.explore_remainders

    def spy(*call):
        calls.append(call)
        return real(*call)

    kernels.explore_remainders = spy
    try:
        for _ in range(20):
            per = tuple(rng.randint(0, n * n) for _ in range(period))
            enumerate_expansions(evaluate(RadixExpansion(base, (0,), (), per)), base)
    finally:
        kernels.explore_remainders = real
    return [c for c in calls if kernels._compiled_ok(*c)]


REMAINDER_CASES = [(3, 3), (3, 5), (5, 4), (7, 3)]


def _histogram_args(n, digits, depth, side):
    D = DigitSet(Base(n), digits)
    x0, y0, x1, y1 = default_window(n)
    dw_re, dw_im = _digit_weights(D, depth)
    return (dw_re, dw_im, side, side, float(x0), float(y1), side / float(x1 - x0), side / float(y1 - y0))


HISTOGRAM_CASES = [
    ("C_{0,5} depth 20", _histogram_args(3, [0, 5], 20, 512)),
    ("{0,2,4,6,8} depth 9", _histogram_args(3, [0, 2, 4, 6, 8], 9, 512)),
]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def row(label, t_pure, t_core):
    if t_core is None:
        print(f"{label:<34} {t_pure * 1e3:10.2f} ms {'n/a':>12}")
    else:
        print(f"{label:<34} {t_pure * 1e3:10.2f} ms {t_core * 1e3:9.2f} ms {t_pure / t_core:8.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"{'kernel / case':<34} {'pure':>13} {'compiled':>12} {'speedup':>8}")
    for n, period in REMAINDER_CASES:
        calls = _recorded_calls(n, period, seed=n * 100 + period)
        ccalls = [c + (isqrt(c[0] * c[0] + 1),) for c in calls]
        if _core is not None:
            for c, cc in zip(calls, ccalls):
                assert _core.explore_remainders(*cc) == _pure.explore_remainders(*c)
        t_pure = best(lambda: [_pure.explore_remainders(*c) for c in calls], args.repeat)
        t_core = best(lambda: [_core.explore_remainders(*c) for c in ccalls], args.repeat) if _core else None
        row(f"explore_remainders n={n} period {period}", t_pure, t_core)

    for label, call in HISTOGRAM_CASES:
        if _core is not None:
            assert np.array_equal(_core.anchor_histogram(*call), _pure.anchor_histogram(*call))
        t_pure = best(lambda: _pure.anchor_histogram(*call), args.repeat)
        t_core = best(lambda: _core.anchor_histogram(*call), args.repeat) if _core else None
        row(f"anchor_histogram {label}", t_pure, t_core)


if __name__ == "__main__":
    main()
