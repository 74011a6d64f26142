# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels. Semantics mirror :mod:`cxradix._pure` exactly."""

import numpy as np
cimport numpy as cnp
from cython.operator cimport dereference as deref
from libc.math cimport floor
from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

cnp.import_array()

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline int64_t _pack(int64_t x, int64_t y) noexcept nogil:
    return (x << 32) ^ (y & <int64_t>4294967295)


cdef inline bint _inside(int64_t x, int64_t y, int64_t two_m, int64_t off_u,
                         int64_t off_v, int128 K, int128 N, int128 cap) noexcept nogil:
    # magnitudes are bounded by the caller (kernels._compiled_ok)
    cdef int128 u = <int128>two_m * x + off_u
    cdef int128 v = <int128>two_m * y + off_v
    cdef int128 s = u * u + v * v
    cdef int128 excess = s - K * (N + 1)
    if excess <= 0:
        return True
    if excess > cap:  # cap = 2K(isqrt(N)+1) >= 2K sqrt(N); also keeps the square in range
        return False
    return excess * excess <= 4 * K * K * N


def explore_remainders(long n, long long den, long long x0, long long y0, long long isqrt_n):
    """Breadth-first search of the fractional-remainder automaton.

    A state (x, y) stands for (x + iy)/den. Digit d maps it to
    b*(x + iy) - d*den. Only states inside the disk centred on the tile
    centroid, radius (|b|+1)/2, are kept.
    Returns (xs, ys, src, dst, digit) as Python lists.
    """
    cdef int64_t N = n * n + 1
    cdef int64_t M = (n + 1) * (n + 1) + 1
    cdef int64_t two_m = 2 * M
    cdef int64_t off_u = den * n * n * (n + 1)
    cdef int64_t off_v = den * n * n
    cdef int128 K = <int128>M * M * den * den
    cdef int128 NN = N
    cdef int128 cap = 2 * K * (<int128>isqrt_n + 1)

    cdef vector[int64_t] xs
    cdef vector[int64_t] ys
    cdef vector[int64_t] src
    cdef vector[int64_t] dst
    cdef vector[int64_t] dig
    cdef unordered_map[int64_t, int64_t] index
    cdef int64_t head = 0, key, bx, by, tx, ty, d, j
    cdef unordered_map[int64_t, int64_t].iterator it

    if not _inside(x0, y0, two_m, off_u, off_v, K, NN, cap):
        return [], [], [], [], []

    key = _pack(x0, y0)
    index[key] = 0
    xs.push_back(x0)
    ys.push_back(y0)
    with nogil:
        while head < <int64_t>xs.size():
            bx = -n * xs[head] - ys[head]
            by = xs[head] - n * ys[head]
            for d in range(N):
                tx = bx - d * den
                ty = by
                if not _inside(tx, ty, two_m, off_u, off_v, K, NN, cap):
                    continue
                key = _pack(tx, ty)
                it = index.find(key)
                if it == index.end():
                    j = xs.size()
                    index[key] = j
                    xs.push_back(tx)
                    ys.push_back(ty)
                else:
                    j = deref(it).second
                src.push_back(head)
                dst.push_back(j)
                dig.push_back(d)
            head += 1
    return list(xs), list(ys), list(src), list(dst), list(dig)


def anchor_histogram(double[:, ::1] dw_re, double[:, ::1] dw_im, int width, int height,
                     double x0, double y1, double sx, double sy):
    """Histogram of all sums sum_k dw[k, j_k] over every digit choice.

    Pixel column is floor((re - x0) * sx), row is floor((y1 - im) * sy).
    """
    cdef Py_ssize_t depth = dw_re.shape[0]
    cdef Py_ssize_t ndig = dw_re.shape[1]
    out = np.zeros((height, width), dtype=np.int64)
    cdef int64_t[:, ::1] hist = out
    cdef vector[double] ps_re
    cdef vector[double] ps_im
    cdef vector[Py_ssize_t] idx
    cdef Py_ssize_t k, level
    cdef double re, im, fc, fr
    cdef long col, row
    if depth == 0:
        return out
    ps_re.resize(depth + 1, 0.0)
    ps_im.resize(depth + 1, 0.0)
    idx.resize(depth, 0)
    with nogil:
        for k in range(depth):
            ps_re[k + 1] = ps_re[k] + dw_re[k, 0]
            ps_im[k + 1] = ps_im[k] + dw_im[k, 0]
        while True:
            re = ps_re[depth]
            im = ps_im[depth]
            fc = floor((re - x0) * sx)
            fr = floor((y1 - im) * sy)
            if fc >= 0 and fr >= 0 and fc < width and fr < height:
                col = <long>fc
                row = <long>fr
                hist[row, col] += 1
            # odometer increment, last level fastest
            level = depth - 1
            while level >= 0:
                idx[level] += 1
                if idx[level] < ndig:
                    break
                idx[level] = 0
                level -= 1
            if level < 0:
                break
            for k in range(level, depth):
                ps_re[k + 1] = ps_re[k] + dw_re[k, idx[k]]
                ps_im[k + 1] = ps_im[k] + dw_im[k, idx[k]]
    return out
