"""Perimeter-matching objective: worked values, range, and a naive oracle."""

import numpy as np
import pytest

from hscircles.geometry import CircleParams
from hscircles.imaging import EdgeMap
from hscircles.objective import WORST, edge_exists, evaluate
from hscircles.raster import rasterize_circle


def test_edge_exists_hit_miss_and_out_of_bounds():
    em = EdgeMap.from_points(10, 10, [(5, 7)])
    assert edge_exists(em, 5, 7) == 1
    assert edge_exists(em, 5, 8) == 0
    assert edge_exists(em, -1, 0) == 0
    assert edge_exists(em, 10, 7) == 0


def test_self_rendered_circle_scores_zero(ring_map):
    em = ring_map(100, 100, 50, 50, 21)
    f = evaluate(em, CircleParams(50, 50, 21))
    assert f.j_value == 0.0
    assert f.matches == f.n_s == em.count


def test_empty_map_scores_one():
    em = EdgeMap.from_grid(np.zeros((64, 64), dtype=np.uint8))
    f = evaluate(em, CircleParams(32, 32, 10))
    assert f.j_value == 1.0
    assert f.matches == 0 and f.n_s > 0


def test_worked_example_56_point_ring_18_matches():
    # radius 10 rasterizes to exactly 56 perimeter pixels; build a map
    # holding 18 of them and score the same candidate
    ring = rasterize_circle(CircleParams(30, 30, 10), 61, 61)
    assert ring.count == 56
    em = EdgeMap.from_points(61, 61, ring.points[:18])
    f = evaluate(em, CircleParams(30, 30, 10))
    assert f.n_s == 56 and f.matches == 18
    assert f.j_value == 1.0 - 18.0 / 56.0
    assert f.j_value == pytest.approx(0.6786, abs=5e-4)


def test_j_in_unit_range_for_random_candidates():
    rng = np.random.default_rng(61)
    grid = (rng.random((128, 128)) < 0.05).astype(np.uint8)
    em = EdgeMap.from_grid(grid)
    for _ in range(200):
        c = CircleParams(rng.uniform(-20, 150), rng.uniform(-20, 150), rng.uniform(1, 90))
        f = evaluate(em, c)
        assert 0.0 <= f.j_value <= 1.0
        assert 0 <= f.matches <= f.n_s


def test_adding_edges_never_increases_j(ring_map):
    em_sparse = ring_map(100, 100, 40, 40, 15)
    extra = [(x, 70) for x in range(10, 90)]
    em_dense = ring_map(100, 100, 40, 40, 15, extra=extra)
    rng = np.random.default_rng(67)
    for _ in range(50):
        c = CircleParams(rng.uniform(5, 95), rng.uniform(5, 95), rng.uniform(2, 50))
        assert evaluate(em_dense, c).j_value <= evaluate(em_sparse, c).j_value


def test_rendered_candidate_scores_zero_even_with_fractional_params():
    c = CircleParams(47.3, 52.8, 19.6)
    ring = rasterize_circle(c, 100, 100)
    em = EdgeMap.from_points(100, 100, ring.points)
    assert evaluate(em, c).j_value == 0.0


def test_degenerate_radius_scores_worst():
    em = EdgeMap.from_points(10, 10, [(5, 7)])
    assert evaluate(em, CircleParams(5, 5, 0.4)) == WORST


def test_fully_clipped_ring_scores_worst():
    em = EdgeMap.from_points(10, 10, [(5, 7)])
    assert evaluate(em, CircleParams(500, 500, 5)) == WORST


def test_matches_naive_linear_scan():
    rng = np.random.default_rng(71)
    grid = (rng.random((90, 110)) < 0.08).astype(np.uint8)
    em = EdgeMap.from_grid(grid)
    population = set(map(tuple, em.points.tolist()))

    def naive(c):
        try:
            ps = rasterize_circle(c, em.width, em.height)
        except ValueError:
            return 1.0, 0, 0
        if ps.count == 0:
            return 1.0, 0, 0
        matches = sum((x, y) in population for x, y in map(tuple, ps.points.tolist()))
        return 1.0 - matches / ps.count, matches, ps.count

    for _ in range(100):
        c = CircleParams(rng.uniform(-10, 120), rng.uniform(-10, 100), rng.uniform(1, 70))
        f = evaluate(em, c)
        assert (f.j_value, f.matches, f.n_s) == naive(c)
