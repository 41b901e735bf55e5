"""Pure-Python ring kernels.

Reference implementation of the midpoint-circle kernels; the compiled
module ``_ring_c`` is a line-for-line translation and must stay
behaviourally identical (the test suite asserts parity).
"""

import numpy as np


def ring_points(xc, yc, r):
    """Integer perimeter pixels of the circle (xc, yc, r), unclipped.

    Walks the first octant with the incremental midpoint rule and mirrors
    each step eight ways.  Seam steps (x == 0, x == y) emit only the four
    distinct mirrors, so the output carries no duplicates.  Emission order
    is fixed, which keeps downstream consumers deterministic.

    Returns an (n, 2) int64 array of (x, y) coordinates; r must be >= 1.
    """
    if r < 1:
        raise ValueError("ring radius must be >= 1")
    out = []
    x, y, p = 0, r, 1 - r
    _emit(out, xc, yc, x, y)
    while x < y:
        x += 1
        if p < 0:
            p += 2 * x + 1
        else:
            y -= 1
            p += 2 * (x - y) + 1
        if x <= y:
            _emit(out, xc, yc, x, y)
    return np.array(out, dtype=np.int64)


def _emit(out, xc, yc, x, y):
    if x == 0:
        out.append((xc, yc + y))
        out.append((xc, yc - y))
        out.append((xc + y, yc))
        out.append((xc - y, yc))
    elif x == y:
        out.append((xc + x, yc + y))
        out.append((xc - x, yc + y))
        out.append((xc + x, yc - y))
        out.append((xc - x, yc - y))
    else:
        out.append((xc + x, yc + y))
        out.append((xc - x, yc + y))
        out.append((xc + x, yc - y))
        out.append((xc - x, yc - y))
        out.append((xc + y, yc + x))
        out.append((xc - y, yc + x))
        out.append((xc + y, yc - x))
        out.append((xc - y, yc - x))


def ring_match_count(grid, xc, yc, r):
    """Count in-bounds perimeter pixels of (xc, yc, r) and edge hits among them.

    ``grid`` is a (height, width) uint8 occupancy array with nonzero cells
    marking edge pixels.  Returns (n_inbounds, matches).  Fused version of
    ``ring_points`` + lookup: same walk, no point array materialized.
    """
    if r < 1:
        raise ValueError("ring radius must be >= 1")
    h, w = grid.shape
    ns = 0
    hits = 0

    def probe(px, py):
        nonlocal ns, hits
        if 0 <= px < w and 0 <= py < h:
            ns += 1
            if grid[py, px]:
                hits += 1

    x, y, p = 0, r, 1 - r
    _probe_step(probe, xc, yc, x, y)
    while x < y:
        x += 1
        if p < 0:
            p += 2 * x + 1
        else:
            y -= 1
            p += 2 * (x - y) + 1
        if x <= y:
            _probe_step(probe, xc, yc, x, y)
    return ns, hits


def _probe_step(probe, xc, yc, x, y):
    if x == 0:
        probe(xc, yc + y)
        probe(xc, yc - y)
        probe(xc + y, yc)
        probe(xc - y, yc)
    elif x == y:
        probe(xc + x, yc + y)
        probe(xc - x, yc + y)
        probe(xc + x, yc - y)
        probe(xc - x, yc - y)
    else:
        probe(xc + x, yc + y)
        probe(xc - x, yc + y)
        probe(xc + x, yc - y)
        probe(xc - x, yc - y)
        probe(xc + y, yc + x)
        probe(xc - y, yc + x)
        probe(xc + y, yc - x)
        probe(xc - y, yc - x)
