"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``CXRADIX_PURE=1`` to force the fallback.
"""

import os
from math import isqrt

from . import _pure

BACKEND = "python"

if os.environ.get("CXRADIX_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl

        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _pure
else:
    _impl = _pure

_INT128_SAFE = 1 << 126


def _compiled_ok(n: int, den: int, x0: int, y0: int) -> bool:
    """Whether every intermediate of the compiled search fits its C types.

    States are packed as two int32 halves; the disk test runs in int128.
    The bounds are exact worst cases over the disk and one step beyond it.
    """
    N = n * n + 1
    M = (n + 1) * (n + 1) + 1
    K = M * M * den * den
    cap = 2 * K * (isqrt(N) + 1)
    off = den * n * n * (n + 1)
    # any state inside the disk has |u|, |v| <= isqrt(K(N+1) + cap) + 1
    xmax = (isqrt(K * (N + 1) + cap) + 1 + off) // (2 * M) + 1
    if xmax >= 1 << 31 or max(abs(x0), abs(y0)) > xmax:
        return False
    umax = 2 * M * ((n + 1) * xmax + N * den) + off
    return 2 * umax * umax + K * (N + 1) < _INT128_SAFE and cap * cap < _INT128_SAFE and 4 * K * K * N < _INT128_SAFE


def explore_remainders(n: int, den: int, x0: int, y0: int):
    if _impl is not _pure and _compiled_ok(n, den, x0, y0):
        return _impl.explore_remainders(n, den, x0, y0, isqrt(n * n + 1))
    return _pure.explore_remainders(n, den, x0, y0)


def anchor_histogram(dw_re, dw_im, width, height, x0, y1, sx, sy):
    return _impl.anchor_histogram(dw_re, dw_im, width, height, x0, y1, sx, sy)
