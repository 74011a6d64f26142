"""Raster images of depth-m anchors sum_{k=1..m} d_k b**-k as binary PGM."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import kernels
from .gaussian import DigitSet

__all__ = ["RenderConfig", "default_window", "histogram", "read_pgm", "render", "to_pgm"]

MIN_SIDE, MAX_SIDE = 16, 8192
MIN_DEPTH, MAX_DEPTH = 1, 24
MAX_ANCHORS = 1 << 30

Window = tuple[Fraction, Fraction, Fraction, Fraction]


def default_window(n: int) -> Window:
    """Square [-R, R]^2 with integer R >= |b| + 1."""
    R = Fraction(isqrt(n * n + 1) + 2)
    return (-R, -R, R, R)


@dataclass(frozen=True)
class RenderConfig:
    width: int = 512
    height: int = 512
    depth: int = 8
    window: Window | None = None  # (x0, y0, x1, y1)

    def __post_init__(self):
        for name in ("width", "height"):
            v = getattr(self, name)
            if not MIN_SIDE <= v <= MAX_SIDE:
                raise ValueError(f"{name} must be in [{MIN_SIDE}, {MAX_SIDE}], got {v}")
        if not MIN_DEPTH <= self.depth <= MAX_DEPTH:
            raise ValueError(f"depth must be in [{MIN_DEPTH}, {MAX_DEPTH}], got {self.depth}")
        if self.window is not None:
            x0, y0, x1, y1 = (Fraction(c) for c in self.window)
            if not (x0 < x1 and y0 < y1):
                raise ValueError("window must have x0 < x1 and y0 < y1")
            object.__setattr__(self, "window", (x0, y0, x1, y1))


def _digit_weights(D: DigitSet, depth: int):
    b = complex(-D.base.n, 1)
    inv = 1 / b
    w = np.empty((depth, len(D)), dtype=np.complex128)
    scale = inv
    for k in range(depth):
        w[k] = np.array(D.digits, dtype=np.float64) * scale
        scale *= inv
    return np.ascontiguousarray(w.real), np.ascontiguousarray(w.imag)


def histogram(D: DigitSet, cfg: RenderConfig) -> np.ndarray:
    """Anchor counts per pixel, shape (height, width); row 0 is the top edge."""
    total = len(D) ** cfg.depth
    if total > MAX_ANCHORS:
        raise ValueError(f"{len(D)}^{cfg.depth} anchors exceeds the limit {MAX_ANCHORS}")
    x0, y0, x1, y1 = cfg.window or default_window(D.base.n)
    sx = cfg.width / float(x1 - x0)
    sy = cfg.height / float(y1 - y0)
    dw_re, dw_im = _digit_weights(D, cfg.depth)
    return kernels.anchor_histogram(
        dw_re, dw_im, cfg.width, cfg.height, float(x0), float(y1), sx, sy
    )


def to_pgm(hist: np.ndarray) -> bytes:
    """8-bit P5 image; nonzero counts map to ceil(255 * c / max) >= 1."""
    h, w = hist.shape
    peak = int(hist.max()) if hist.size else 0
    if peak:
        pix = (255 * hist.astype(np.int64) + peak - 1) // peak
    else:
        pix = np.zeros_like(hist)
    return f"P5\n{w} {h}\n255\n".encode("ascii") + pix.astype(np.uint8).tobytes()


def read_pgm(data: bytes) -> np.ndarray:
    # header tokens, then exactly one whitespace byte before the raster
    fields, pos = [], 0
    while len(fields) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos])
    if fields[0] != b"P5" or fields[3] != b"255":
        raise ValueError("not an 8-bit binary PGM")
    w, h = int(fields[1]), int(fields[2])
    body = data[pos + 1 :]
    if len(body) != w * h:
        raise ValueError("truncated PGM body")
    return np.frombuffer(body, dtype=np.uint8).reshape(h, w)


def render(D: DigitSet, cfg: RenderConfig) -> bytes:
    return to_pgm(histogram(D, cfg))
