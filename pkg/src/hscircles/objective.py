"""Matching objective for candidate circles.

A candidate scores by how much of its rasterized perimeter is present in
the edge map: j_value = 1 - matches / n_s, so 0 means the full perimeter
exists and 1 means none of it does.  Degenerate candidates (no perimeter
inside the image) score worst.
"""

from typing import NamedTuple

from . import _kernels
from .geometry import CircleParams
from .imaging import EdgeMap


class Fitness(NamedTuple):
    j_value: float
    matches: int
    n_s: int


#: Score assigned to degenerate candidates: collinear triplets, radii out of
#: range, or perimeters that clip to nothing.
WORST = Fitness(j_value=1.0, matches=0, n_s=0)


def edge_exists(edges: EdgeMap, x: int, y: int) -> int:
    """1 if (x, y) is an in-bounds edge pixel, else 0."""
    if 0 <= x < edges.width and 0 <= y < edges.height:
        return int(edges.grid[y, x])
    return 0


def evaluate(edges: EdgeMap, c: CircleParams) -> Fitness:
    """Score a candidate circle against the edge map.

    The perimeter is the midpoint-circle ring of the rounded candidate,
    clipped to the image; matching is exact pixel identity.  Candidates
    whose radius rounds below 1 or whose ring clips away entirely return
    ``WORST``.
    """
    xc, yc, r = round(float(c.x0)), round(float(c.y0)), round(float(c.r))
    if r < 1:
        return WORST
    n_s, matches = _kernels.ring_match_count(edges.grid, xc, yc, r)
    if n_s == 0:
        return WORST
    return Fitness(j_value=1.0 - matches / n_s, matches=matches, n_s=n_s)
