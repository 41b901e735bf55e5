"""Circle through three points, and the index-triplet view of it.

A candidate circle is encoded as three indexes into an edge-point vector;
``transform`` resolves the indexes and fits the unique circle through the
three pixels.  Collinear or coincident points have no circumcircle and
yield ``None``, which callers score as worst fitness.
"""

import math
from typing import NamedTuple, Optional

# |denominator| below this is treated as collinear.  The quantity is four
# times the signed parallelogram area spanned by the three points, so for
# integer pixel coordinates any non-degenerate triplet gives >= 4.
EPS_DET = 1e-9


class CircleParams(NamedTuple):
    x0: float
    y0: float
    r: float


class Triplet(NamedTuple):
    i: int
    j: int
    k: int


def circle_from_points(pi, pj, pk) -> Optional[CircleParams]:
    """Circumcircle of three (x, y) points, or None when degenerate.

    Solves the pairwise-expanded circle equation for the center; the radius
    is the distance from the center to the first point.  The returned circle
    passes through all three inputs to within 1e-6 px (guaranteed by the
    caller-visible contract and exercised by the tests).
    """
    xi, yi = float(pi[0]), float(pi[1])
    xj, yj = float(pj[0]), float(pj[1])
    xk, yk = float(pk[0]), float(pk[1])

    den = 4.0 * ((xj - xi) * (yk - yi) - (xk - xi) * (yj - yi))
    if abs(den) < EPS_DET:
        return None

    sj = xj * xj + yj * yj - (xi * xi + yi * yi)
    sk = xk * xk + yk * yk - (xi * xi + yi * yi)
    x0 = 2.0 * (sj * (yk - yi) - sk * (yj - yi)) / den
    y0 = 2.0 * ((xj - xi) * sk - (xk - xi) * sj) / den
    r = math.hypot(x0 - xi, y0 - yi)
    if not (math.isfinite(x0) and math.isfinite(y0) and math.isfinite(r)) or r <= 0.0:
        return None
    return CircleParams(x0, y0, r)


def transform(t: Triplet, edges) -> Optional[CircleParams]:
    """Resolve an index triplet against an edge map and fit the circle.

    Indexes must be in range (caller contract); repeated indexes make the
    triplet degenerate.  Equivalent to ``circle_from_points`` on the three
    looked-up edge pixels.
    """
    if t.i == t.j or t.j == t.k or t.i == t.k:
        return None
    pts = edges.points
    return circle_from_points(pts[t.i], pts[t.j], pts[t.k])
