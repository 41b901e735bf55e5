"""Parity between the compiled ring kernels and the pure-Python fallback."""

import numpy as np
import pytest

from hscircles import _kernels
from hscircles._kernels import _ring_py

_has_cython = "cython" in _kernels.available_backends()
needs_cython = pytest.mark.skipif(not _has_cython, reason="compiled kernels not built")


def test_pure_backend_always_available():
    assert "python" in _kernels.available_backends()


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        _kernels.use_backend("fortran")


@needs_cython
def test_ring_points_parity():
    from hscircles._kernels import _ring_c

    for r in list(range(1, 64)) + [100, 255]:
        a = _ring_py.ring_points(13, -7, r)
        b = _ring_c.ring_points(13, -7, r)
        assert a.dtype == b.dtype == np.int64
        assert np.array_equal(a, b), f"ring_points mismatch at r={r}"


@needs_cython
def test_ring_match_count_parity():
    from hscircles._kernels import _ring_c

    rng = np.random.default_rng(5150)
    grid = (rng.random((97, 123)) < 0.07).astype(np.uint8)
    for _ in range(200):
        xc = int(rng.integers(-30, 150))
        yc = int(rng.integers(-30, 130))
        r = int(rng.integers(1, 90))
        assert _ring_py.ring_match_count(grid, xc, yc, r) == _ring_c.ring_match_count(
            grid, xc, yc, r
        )


@needs_cython
def test_detection_identical_across_backends(ring_map):
    import hscircles as h

    edges = ring_map(200, 200, 90, 110, 41, extra=[(5, 5), (20, 180)])
    reports = {}
    original = _kernels.BACKEND
    try:
        for backend in ("python", "cython"):
            _kernels.use_backend(backend)
            cfg = h.DetectorConfig(hsa=h.HsaConfig(seed=17))
            reports[backend] = h.detect_single(edges, cfg).to_dict()
    finally:
        _kernels.use_backend(original)
    assert reports["python"] == reports["cython"]


def test_invalid_radius_rejected():
    with pytest.raises(ValueError):
        _ring_py.ring_points(0, 0, 0)
    grid = np.zeros((4, 4), dtype=np.uint8)
    with pytest.raises(ValueError):
        _ring_py.ring_match_count(grid, 1, 1, 0)


def test_match_count_agrees_with_point_lookup():
    rng = np.random.default_rng(99)
    grid = (rng.random((64, 80)) < 0.1).astype(np.uint8)
    for r in (1, 2, 3, 10, 33):
        pts = _ring_py.ring_points(40, 30, r)
        inb = (
            (pts[:, 0] >= 0)
            & (pts[:, 0] < 80)
            & (pts[:, 1] >= 0)
            & (pts[:, 1] < 64)
        )
        kept = pts[inb]
        expect = (int(len(kept)), int(grid[kept[:, 1], kept[:, 0]].sum()))
        assert _ring_py.ring_match_count(grid, 40, 30, r) == expect
