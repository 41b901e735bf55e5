import numpy as np
import pytest

from hscircles import _kernels
from hscircles.imaging import EdgeMap


def render_ring(width, height, xc, yc, r, extra=()):
    """Edge map holding one rasterized circle plus optional extra points."""
    grid = np.zeros((height, width), dtype=np.uint8)
    pts = _kernels.ring_points(xc, yc, r)
    inb = (
        (pts[:, 0] >= 0)
        & (pts[:, 0] < width)
        & (pts[:, 1] >= 0)
        & (pts[:, 1] < height)
    )
    pts = pts[inb]
    grid[pts[:, 1], pts[:, 0]] = 1
    for (x, y) in extra:
        grid[y, x] = 1
    return EdgeMap.from_grid(grid)


@pytest.fixture
def ring_map():
    return render_ring
