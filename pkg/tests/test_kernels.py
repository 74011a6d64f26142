"""The compiled kernels and the pure fallback must agree exactly."""

import os
import random
from math import isqrt
import subprocess
import sys

import numpy as np
import pytest

from cxradix import _pure, kernels

try:
    from cxradix import _core
except ImportError:  # extension not built
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled extension not built")


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


@needs_core
@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_explore_remainders_identical(n):
    rng = random.Random(n)
    for _ in range(60):
        den = rng.randint(1, 200)
        x0 = rng.randint(-3 * n * den, 3 * n * den)
        y0 = rng.randint(-3 * n * den, 3 * n * den)
        a = _core.explore_remainders(n, den, x0, y0, isqrt(n * n + 1))
        b = _pure.explore_remainders(n, den, x0, y0)
        assert [list(v) for v in a] == [list(v) for v in b]


@needs_core
@pytest.mark.parametrize(
    "n, den, x0, y0",
    [
        (7, 892255, 787369, 240113),  # squared excess used to overflow int128
        (7, 892255, 7033154, 1132368),
        (5, 818929695, 4571547596, 1891546353),  # beyond the gate: pure path
        (20, 1000003, 123456, -654321),
        (64, 60000, 1000, 1000),
    ],
)
def test_explore_remainders_large_values(n, den, x0, y0):
    assert kernels.explore_remainders(n, den, x0, y0) == _pure.explore_remainders(n, den, x0, y0)
    if kernels._compiled_ok(n, den, x0, y0):
        a = _core.explore_remainders(n, den, x0, y0, isqrt(n * n + 1))
        assert [list(v) for v in a] == [list(v) for v in _pure.explore_remainders(n, den, x0, y0)]


def test_compiled_gate_rejects_unsafe_sizes():
    assert kernels._compiled_ok(3, 1000, 0, 0)
    assert not kernels._compiled_ok(3, 1 << 40, 0, 0)
    assert not kernels._compiled_ok(64, 1 << 20, 0, 0)
    assert not kernels._compiled_ok(3, 1000, 1 << 40, 0)


@needs_core
@pytest.mark.parametrize("depth, ndig", [(1, 10), (5, 2), (7, 3), (9, 4)])
def test_anchor_histogram_identical(depth, ndig):
    rng = np.random.default_rng(depth)
    dw_re = np.ascontiguousarray(rng.normal(size=(depth, ndig)) * 0.5**np.arange(depth)[:, None])
    dw_im = np.ascontiguousarray(rng.normal(size=(depth, ndig)) * 0.5**np.arange(depth)[:, None])
    args = (dw_re, dw_im, 40, 30, -2.0, 2.0, 10.0, 7.5)
    a = _core.anchor_histogram(*args)
    b = _pure.anchor_histogram(*args)
    assert a.dtype == b.dtype == np.int64
    assert np.array_equal(a, b)


def test_pure_chunking_matches_small_case():
    # enough anchors to force outer-prefix splitting in the fallback
    dw_re = np.ascontiguousarray(np.tile(np.linspace(0, 1, 4), (10, 1)) * 0.3 ** np.arange(10)[:, None])
    dw_im = np.ascontiguousarray(np.tile(np.linspace(0, 1, 4)[::-1], (10, 1)) * 0.3 ** np.arange(10)[:, None])
    hist = _pure.anchor_histogram(dw_re, dw_im, 50, 50, -0.1, 1.6, 30.0, 30.0)
    assert hist.sum() == 4**10


def test_forced_fallback_gives_same_expansions():
    code = (
        "from cxradix import kernels, Base, parse_gaussian;"
        "from cxradix.radix import enumerate_expansions;"
        "print(kernels.BACKEND);"
        "print([str(e) for e in enumerate_expansions(parse_gaussian('(-23-10i)/17'), Base(3))])"
    )
    env = dict(os.environ, CXRADIX_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, exps = out.stdout.splitlines()
    assert backend == "python"
    assert exps == "['0;[4,0,9]', '1;[9,4,0]', '1,5,5;[0,9,4]']"
