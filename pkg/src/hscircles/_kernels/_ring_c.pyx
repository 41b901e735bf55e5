# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled ring kernels (Cython twin of ``_ring_py``).

Same walk, same emission order, same results; only faster.  Uses typed
memoryviews exclusively so no numpy headers are needed at build time.
"""

import numpy as np


def ring_points(long xc, long yc, long r):
    """Integer perimeter pixels of the circle (xc, yc, r), unclipped.

    Returns an (n, 2) int64 array of (x, y) coordinates; r must be >= 1.
    """
    if r < 1:
        raise ValueError("ring radius must be >= 1")
    # capacity: 8 pixels per octant step, ~r/sqrt(2) + 2 steps
    cdef long cap = 8 * (r + 2)
    out_arr = np.empty((cap, 2), dtype=np.int64)
    cdef long[:, ::1] out = out_arr
    cdef long n = 0
    cdef long x = 0, y = r, p = 1 - r

    n = _emit(out, n, xc, yc, x, y)
    while x < y:
        x += 1
        if p < 0:
            p += 2 * x + 1
        else:
            y -= 1
            p += 2 * (x - y) + 1
        if x <= y:
            n = _emit(out, n, xc, yc, x, y)
    return out_arr[:n]


cdef inline long _emit(long[:, ::1] out, long n, long xc, long yc, long x, long y):
    if x == 0:
        out[n, 0] = xc;     out[n, 1] = yc + y; n += 1
        out[n, 0] = xc;     out[n, 1] = yc - y; n += 1
        out[n, 0] = xc + y; out[n, 1] = yc;     n += 1
        out[n, 0] = xc - y; out[n, 1] = yc;     n += 1
    elif x == y:
        out[n, 0] = xc + x; out[n, 1] = yc + y; n += 1
        out[n, 0] = xc - x; out[n, 1] = yc + y; n += 1
        out[n, 0] = xc + x; out[n, 1] = yc - y; n += 1
        out[n, 0] = xc - x; out[n, 1] = yc - y; n += 1
    else:
        out[n, 0] = xc + x; out[n, 1] = yc + y; n += 1
        out[n, 0] = xc - x; out[n, 1] = yc + y; n += 1
        out[n, 0] = xc + x; out[n, 1] = yc - y; n += 1
        out[n, 0] = xc - x; out[n, 1] = yc - y; n += 1
        out[n, 0] = xc + y; out[n, 1] = yc + x; n += 1
        out[n, 0] = xc - y; out[n, 1] = yc + x; n += 1
        out[n, 0] = xc + y; out[n, 1] = yc - x; n += 1
        out[n, 0] = xc - y; out[n, 1] = yc - x; n += 1
    return n


def ring_match_count(const unsigned char[:, ::1] grid, long xc, long yc, long r):
    """Count in-bounds perimeter pixels of (xc, yc, r) and edge hits among them.

    Returns (n_inbounds, matches) against the uint8 occupancy ``grid``.
    """
    if r < 1:
        raise ValueError("ring radius must be >= 1")
    cdef long h = grid.shape[0], w = grid.shape[1]
    cdef long ns = 0, hits = 0
    cdef long x = 0, y = r, p = 1 - r

    _probe_step(grid, w, h, &ns, &hits, xc, yc, x, y)
    while x < y:
        x += 1
        if p < 0:
            p += 2 * x + 1
        else:
            y -= 1
            p += 2 * (x - y) + 1
        if x <= y:
            _probe_step(grid, w, h, &ns, &hits, xc, yc, x, y)
    return ns, hits


cdef inline void _probe(const unsigned char[:, ::1] grid, long w, long h,
                        long* ns, long* hits, long px, long py) noexcept:
    if 0 <= px < w and 0 <= py < h:
        ns[0] += 1
        if grid[py, px]:
            hits[0] += 1


cdef inline void _probe_step(const unsigned char[:, ::1] grid, long w, long h,
                             long* ns, long* hits, long xc, long yc,
                             long x, long y) noexcept:
    if x == 0:
        _probe(grid, w, h, ns, hits, xc, yc + y)
        _probe(grid, w, h, ns, hits, xc, yc - y)
        _probe(grid, w, h, ns, hits, xc + y, yc)
        _probe(grid, w, h, ns, hits, xc - y, yc)
    elif x == y:
        _probe(grid, w, h, ns, hits, xc + x, yc + y)
        _probe(grid, w, h, ns, hits, xc - x, yc + y)
        _probe(grid, w, h, ns, hits, xc + x, yc - y)
        _probe(grid, w, h, ns, hits, xc - x, yc - y)
    else:
        _probe(grid, w, h, ns, hits, xc + x, yc + y)
        _probe(grid, w, h, ns, hits, xc - x, yc + y)
        _probe(grid, w, h, ns, hits, xc + x, yc - y)
        _probe(grid, w, h, ns, hits, xc - x, yc - y)
        _probe(grid, w, h, ns, hits, xc + y, yc + x)
        _probe(grid, w, h, ns, hits, xc - y, yc + x)
        _probe(grid, w, h, ns, hits, xc + y, yc - x)
        _probe(grid, w, h, ns, hits, xc - y, yc - x)
