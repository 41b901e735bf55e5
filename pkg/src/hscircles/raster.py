"""Perimeter test-point generation for candidate circles.

Candidate centers and radii are real-valued (they come from a three-point
fit); the rasterizer rounds them to the pixel lattice and walks the
midpoint circle, mirrored across all eight octants.  Points falling
outside the clip rectangle are dropped.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .geometry import CircleParams


@dataclass(frozen=True)
class PointSet:
    """Deduplicated perimeter pixels, clipped to the image rectangle."""

    points: np.ndarray  # (n, 2) int64, (x, y)

    @property
    def count(self) -> int:
        return len(self.points)


def rasterize_circle(c: CircleParams, width: int, height: int) -> PointSet:
    """Perimeter pixels of ``c`` rounded to the lattice, clipped to bounds.

    Center and radius round half-to-even before the walk.  Raises
    ValueError when the radius rounds below 1 (degenerate candidate) or
    the clip rectangle is empty.
    """
    if width < 1 or height < 1:
        raise ValueError("clip bounds must be at least 1x1")
    xc, yc, r = round(float(c.x0)), round(float(c.y0)), round(float(c.r))
    if r < 1:
        raise ValueError("circle radius rounds below 1 pixel")
    pts = _kernels.ring_points(xc, yc, r)
    keep = (
        (pts[:, 0] >= 0)
        & (pts[:, 0] < width)
        & (pts[:, 1] >= 0)
        & (pts[:, 1] < height)
    )
    return PointSet(points=pts[keep])
