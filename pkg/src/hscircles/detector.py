"""Single- and multi-circle detection pipelines.

A detection run optimizes the perimeter-matching objective over edge-point
triplets and accepts the best circle when its j_value clears the ``m_th``
ceiling.  Multi-circle detection repeats the run, masking out the edge
pixels of each accepted circle, until the threshold or the circle budget
stops the loop.  Accepted circles must also pass a continuity check
(coverage plus maximum angular gap) before being reported.
"""

import math
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from . import harmony, objective
from .geometry import CircleParams, Triplet, transform
from .harmony import HsaConfig, InsufficientEdgesError
from .imaging import EdgeMap
from .raster import rasterize_circle

SCHEMA_VERSION = 1


@dataclass
class DetectorConfig:
    hsa: HsaConfig = field(default_factory=HsaConfig)
    m_th: float = 0.1
    max_circles: int = 8
    mask_band: float = 2.0
    r_min: float = 5.0
    coverage_min: Optional[float] = None  # defaults to 1 - m_th
    max_gap_deg: float = 90.0

    def __post_init__(self):
        if not (0.0 < self.m_th < 1.0):
            raise ValueError("m_th must lie in (0, 1)")
        if self.max_circles < 1:
            raise ValueError("max_circles must be >= 1")
        if self.mask_band < 1.0:
            raise ValueError("mask_band must be >= 1")
        if self.r_min < 1.0:
            raise ValueError("r_min must be >= 1")

    @property
    def effective_coverage_min(self) -> float:
        return self.coverage_min if self.coverage_min is not None else 1.0 - self.m_th


@dataclass(frozen=True)
class DetectedCircle:
    params: CircleParams
    j_value: float
    n_s: int
    rank: int


@dataclass
class DetectionReport:
    circles: List[DetectedCircle]
    status: str  # "found" | "none"
    elapsed: float
    evaluations: int

    def to_dict(self, include_timing: bool = False) -> dict:
        """JSON-ready view.  Timing is off by default so that reports from
        identically-seeded runs serialize byte-identically."""
        return {
            "schema_version": SCHEMA_VERSION,
            "status": self.status,
            "circles": [
                {
                    "x0": c.params.x0,
                    "y0": c.params.y0,
                    "r": c.params.r,
                    "j": c.j_value,
                    "rank": c.rank,
                }
                for c in self.circles
            ],
            "evaluations": self.evaluations,
            "elapsed_s": self.elapsed if include_timing else None,
        }


def _make_eval(edges: EdgeMap, r_min: float, r_max: float):
    """Objective callback over triplets: fit the circle, prune radii outside
    [r_min, r_max], then score the perimeter match."""

    def ev(t: Triplet):
        c = transform(t, edges)
        if c is None or not (r_min <= c.r <= r_max):
            return objective.WORST
        return objective.evaluate(edges, c)

    return ev


def detect_single(edges: EdgeMap, cfg: DetectorConfig) -> DetectionReport:
    """One optimization run; report the best circle iff it clears m_th."""
    start = time.perf_counter()
    circles: List[DetectedCircle] = []
    evaluations = 0
    if edges.count >= 3:
        r_max = math.hypot(edges.width, edges.height)
        hsa = replace(cfg.hsa, lower=0, upper=edges.count - 1)
        try:
            t, f, trace = harmony.run(hsa, _make_eval(edges, cfg.r_min, r_max))
        except InsufficientEdgesError:
            t, f, trace = None, None, None
        if trace is not None:
            evaluations = trace.evaluations
            if f.j_value <= cfg.m_th:
                c = transform(t, edges)
                circles = [
                    DetectedCircle(params=c, j_value=f.j_value, n_s=f.n_s, rank=1)
                ]
    return DetectionReport(
        circles=circles,
        status="found" if circles else "none",
        elapsed=time.perf_counter() - start,
        evaluations=evaluations,
    )


def detect_multi(edges: EdgeMap, cfg: DetectorConfig) -> DetectionReport:
    """Detect-mask-repeat until m_th or the circle budget stops the loop.

    Pass ``i`` of the loop runs with seed ``cfg.hsa.seed + i``, so a rerun
    reproduces the full sequence.  Each accepted circle is validated for
    perimeter continuity; circles that fail validation are masked out but
    not reported.  Reported circles are ranked by ascending j_value
    (rank 1 is best).
    """
    start = time.perf_counter()
    work = edges
    r_max = math.hypot(edges.width, edges.height)
    found = []
    evaluations = 0
    for iteration in range(cfg.max_circles):
        if work.count < 3:
            break
        hsa = replace(
            cfg.hsa, seed=cfg.hsa.seed + iteration, lower=0, upper=work.count - 1
        )
        t, f, trace = harmony.run(hsa, _make_eval(work, cfg.r_min, r_max))
        evaluations += trace.evaluations
        if f.j_value > cfg.m_th:
            break
        c = transform(t, work)
        if validate_circle(work, c, cfg):
            found.append((c, f))
        masked = _mask_circle(work, c, cfg.mask_band)
        if masked.count == work.count:  # no support removed; cannot progress
            break
        work = masked

    found.sort(key=lambda cf: cf[1].j_value)
    circles = [
        DetectedCircle(params=c, j_value=f.j_value, n_s=f.n_s, rank=i + 1)
        for i, (c, f) in enumerate(found)
    ]
    return DetectionReport(
        circles=circles,
        status="found" if circles else "none",
        elapsed=time.perf_counter() - start,
        evaluations=evaluations,
    )


def validate_circle(edges: EdgeMap, c: CircleParams, cfg: DetectorConfig) -> bool:
    """Continuity check: enough of the perimeter must exist, without a large
    angular hole.

    Accepts iff the matched fraction reaches ``coverage_min`` and no gap
    between angularly-consecutive matched pixels exceeds ``max_gap_deg``.
    """
    try:
        ps = rasterize_circle(c, edges.width, edges.height)
    except ValueError:
        return False
    if ps.count == 0:
        return False
    on = edges.grid[ps.points[:, 1], ps.points[:, 0]].astype(bool)
    coverage = float(on.sum()) / ps.count
    if coverage < cfg.effective_coverage_min or not on.any():
        return False
    matched = ps.points[on]
    angles = np.degrees(np.arctan2(matched[:, 1] - c.y0, matched[:, 0] - c.x0))
    angles.sort()
    if len(angles) == 1:
        return cfg.max_gap_deg >= 360.0
    gaps = np.diff(angles)
    wrap = 360.0 - (angles[-1] - angles[0])
    return float(max(gaps.max(), wrap)) <= cfg.max_gap_deg


def _mask_circle(edges: EdgeMap, c: CircleParams, band: float) -> EdgeMap:
    """Remove every edge point within ``band`` pixels of the circumference."""
    pts = edges.points
    dist = np.hypot(pts[:, 0] - c.x0, pts[:, 1] - c.y0)
    keep = np.abs(dist - c.r) > band
    return EdgeMap.from_points(edges.width, edges.height, pts[keep])
