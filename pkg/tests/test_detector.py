"""End-to-end detection: single runs, masking loops, validation."""

import dataclasses

import numpy as np
import pytest

from hscircles.bench import error_score, generate_arc, generate_synthetic, match_detections
from hscircles.detector import (
    DetectorConfig,
    _mask_circle,
    detect_multi,
    detect_single,
    validate_circle,
)
from hscircles.geometry import CircleParams
from hscircles.harmony import HsaConfig
from hscircles.imaging import EdgeMap


def config(seed=0, **kw):
    return DetectorConfig(hsa=HsaConfig(seed=seed), **kw)


# ---------------------------------------------------------------------------
# single detection

def test_detects_rendered_circle(ring_map):
    edges = ring_map(256, 256, 120, 140, 52)
    rep = detect_single(edges, config(seed=4))
    assert rep.status == "found"
    c = rep.circles[0]
    assert error_score(CircleParams(120, 140, 52), c.params) < 1.0
    assert c.j_value <= 0.1
    assert c.rank == 1
    assert rep.evaluations == 300
    assert rep.elapsed >= 0.0


def test_empty_map_reports_none():
    edges = EdgeMap.from_grid(np.zeros((64, 64), dtype=np.uint8))
    rep = detect_single(edges, config())
    assert rep.status == "none"
    assert rep.circles == []
    assert rep.evaluations == 0


def test_two_points_report_none():
    edges = EdgeMap.from_points(64, 64, [(10, 10), (20, 20)])
    assert detect_single(edges, config()).status == "none"


def test_threshold_gates_acceptance(ring_map):
    edges, truth = generate_arc(256, 256, (40, 80), coverage=0.5, seed=140)
    strict = dataclasses.replace(config(seed=8), m_th=0.1)
    relaxed = dataclasses.replace(config(seed=8), m_th=0.6)
    assert detect_single(edges, strict).status == "none"
    rep = detect_single(edges, relaxed)
    assert rep.status == "found"
    assert error_score(truth, rep.circles[0].params) < 1.0


def test_candidate_radii_bounded(ring_map):
    edges = ring_map(200, 200, 100, 100, 60)
    cfg = config(seed=12, r_min=5.0)
    rep = detect_single(edges, cfg)
    diag = (2 * 200**2) ** 0.5
    for c in rep.circles:
        assert cfg.r_min <= c.params.r <= diag


def test_deterministic_given_seed(ring_map):
    edges = ring_map(128, 128, 64, 64, 30, extra=[(3, 4), (120, 9)])
    a = detect_single(edges, config(seed=21)).to_dict()
    b = detect_single(edges, config(seed=21)).to_dict()
    assert a == b


def test_report_dict_schema(ring_map):
    edges = ring_map(128, 128, 64, 64, 30)
    d = detect_single(edges, config(seed=1)).to_dict()
    assert d["schema_version"] == 1
    assert d["status"] == "found"
    assert d["elapsed_s"] is None
    assert set(d["circles"][0]) == {"x0", "y0", "r", "j", "rank"}
    timed = detect_single(edges, config(seed=1)).to_dict(include_timing=True)
    assert timed["elapsed_s"] > 0.0


# ---------------------------------------------------------------------------
# multi detection

def test_three_disjoint_circles_all_found():
    edges, truth = generate_synthetic(256, 256, 3, (20, 45), seed=90)
    rep = detect_multi(edges, config(seed=6))
    assert len(rep.circles) == 3
    assert [c.rank for c in rep.circles] == [1, 2, 3]
    js = [c.j_value for c in rep.circles]
    assert js == sorted(js)
    matched = match_detections(truth, [c.params for c in rep.circles])
    assert all(e < 1.0 for e in matched)


def test_single_circle_single_detection(ring_map):
    edges = ring_map(256, 256, 100, 100, 45)
    rep = detect_multi(edges, config(seed=11))
    assert len(rep.circles) == 1


def test_noise_only_reports_none():
    edges, _ = generate_synthetic(256, 256, 0, (20, 30), noise_density=0.05, seed=880)
    rep = detect_multi(edges, config(seed=13))
    assert rep.status == "none"
    assert rep.circles == []


def test_masking_removes_circumference_band(ring_map):
    edges = ring_map(128, 128, 60, 60, 30, extra=[(5, 5), (100, 100)])
    c = CircleParams(60, 60, 30)
    masked = _mask_circle(edges, c, band=2.0)
    assert masked.count < edges.count
    if masked.count:
        d = np.hypot(masked.points[:, 0] - 60, masked.points[:, 1] - 60)
        assert (np.abs(d - 30) > 2.0).all()


def test_multi_respects_circle_budget():
    edges, _ = generate_synthetic(300, 300, 4, (20, 35), seed=91)
    cfg = dataclasses.replace(config(seed=14), max_circles=2)
    rep = detect_multi(edges, cfg)
    assert len(rep.circles) <= 2


def test_multi_deterministic():
    edges, _ = generate_synthetic(256, 256, 2, (25, 50), seed=92)
    a = detect_multi(edges, config(seed=15)).to_dict()
    b = detect_multi(edges, config(seed=15)).to_dict()
    assert a == b


# ---------------------------------------------------------------------------
# validation

def arc_map(width, height, xc, yc, r, spans):
    """Edge map holding angular spans (degrees) of one circle's perimeter."""
    from hscircles import _kernels

    pts = _kernels.ring_points(xc, yc, r)
    ang = np.degrees(np.arctan2(pts[:, 1] - yc, pts[:, 0] - xc)) % 360.0
    keep = np.zeros(len(pts), dtype=bool)
    for lo, hi in spans:
        keep |= (ang >= lo) & (ang < hi)
    grid = np.zeros((height, width), dtype=np.uint8)
    grid[pts[keep, 1], pts[keep, 0]] = 1
    return EdgeMap.from_grid(grid)


def test_full_circle_validates(ring_map):
    edges = ring_map(100, 100, 50, 50, 20)
    assert validate_circle(edges, CircleParams(50, 50, 20), config())


def test_antipodal_short_arcs_rejected():
    edges = arc_map(200, 200, 100, 100, 40, [(0, 36), (180, 216)])
    assert not validate_circle(edges, CircleParams(100, 100, 40), config())


def test_three_quarter_arc_accepted_with_lower_coverage():
    edges = arc_map(200, 200, 100, 100, 40, [(0, 300)])
    cfg = dataclasses.replace(config(), coverage_min=0.8)
    assert validate_circle(edges, CircleParams(100, 100, 40), cfg)


def test_three_quarter_arc_rejected_at_default_coverage():
    edges = arc_map(200, 200, 100, 100, 40, [(0, 300)])
    assert not validate_circle(edges, CircleParams(100, 100, 40), config())


def test_gap_limit_rejects_wide_hole():
    # 83% coverage but the hole spans 120 degrees
    edges = arc_map(200, 200, 100, 100, 40, [(0, 150), (270, 360)])
    cfg = dataclasses.replace(config(), coverage_min=0.5, max_gap_deg=90.0)
    assert not validate_circle(edges, CircleParams(100, 100, 40), cfg)


def test_absent_circle_rejected():
    edges = EdgeMap.from_points(100, 100, [(5, 5)])
    assert not validate_circle(edges, CircleParams(50, 50, 20), config())


# ---------------------------------------------------------------------------
# configuration

@pytest.mark.parametrize(
    "kw",
    [{"m_th": 0.0}, {"m_th": 1.0}, {"max_circles": 0}, {"mask_band": 0.5}, {"r_min": 0.0}],
)
def test_invalid_detector_config(kw):
    with pytest.raises(ValueError):
        DetectorConfig(**kw)


def test_coverage_defaults_to_threshold_complement():
    cfg = DetectorConfig(m_th=0.25)
    assert cfg.effective_coverage_min == 0.75
    cfg = DetectorConfig(m_th=0.25, coverage_min=0.5)
    assert cfg.effective_coverage_min == 0.5
