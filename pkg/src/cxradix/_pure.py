"""Pure-Python/numpy implementations of the compiled kernels in ``_core.pyx``.

Outputs are identical to the compiled versions, including state order.
"""

from __future__ import annotations

from collections import deque
from itertools import product

import numpy as np

_CHUNK = 1 << 18


def explore_remainders(n: int, den: int, x0: int, y0: int):
    N = n * n + 1
    M = (n + 1) * (n + 1) + 1
    two_m = 2 * M
    off_u = den * n * n * (n + 1)
    off_v = den * n * n
    K = M * M * den * den

    def inside(x: int, y: int) -> bool:
        u = two_m * x + off_u
        v = two_m * y + off_v
        excess = u * u + v * v - K * (N + 1)
        return excess <= 0 or excess * excess <= 4 * K * K * N

    if not inside(x0, y0):
        return [], [], [], [], []
    index = {(x0, y0): 0}
    xs, ys = [x0], [y0]
    src, dst, dig = [], [], []
    queue = deque([0])
    while queue:
        head = queue.popleft()
        x, y = xs[head], ys[head]
        bx, by = -n * x - y, x - n * y
        for d in range(N):
            tx = bx - d * den
            if not inside(tx, by):
                continue
            j = index.get((tx, by))
            if j is None:
                j = len(xs)
                index[(tx, by)] = j
                xs.append(tx)
                ys.append(by)
                queue.append(j)
            src.append(head)
            dst.append(j)
            dig.append(d)
    return xs, ys, src, dst, dig


def anchor_histogram(dw_re, dw_im, width, height, x0, y1, sx, sy):
    dw_re = np.asarray(dw_re, dtype=np.float64)
    dw_im = np.asarray(dw_im, dtype=np.float64)
    depth, ndig = dw_re.shape
    hist = np.zeros((height, width), dtype=np.int64)
    if depth == 0:
        return hist
    # split levels: outer prefixes enumerated in Python, inner levels vectorised
    inner = 0
    while inner < depth and ndig ** (inner + 1) <= _CHUNK:
        inner += 1
    outer = depth - inner
    for prefix in product(range(ndig), repeat=outer):
        re0 = 0.0
        im0 = 0.0
        for k, j in enumerate(prefix):
            re0 = re0 + dw_re[k, j]
            im0 = im0 + dw_im[k, j]
        re = np.array([re0])
        im = np.array([im0])
        for k in range(outer, depth):
            re = (re[:, None] + dw_re[k][None, :]).ravel()
            im = (im[:, None] + dw_im[k][None, :]).ravel()
        fc = np.floor((re - x0) * sx)
        fr = np.floor((y1 - im) * sy)
        ok = (fc >= 0) & (fr >= 0) & (fc < width) & (fr < height)
        np.add.at(hist, (fr[ok].astype(np.int64), fc[ok].astype(np.int64)), 1)
    return hist
