"""Circle detection on edge maps by harmony-search optimization.

Candidate circles are encoded as triplets of indexes into the image's
edge-point vector; a seeded harmony search minimizes the fraction of the
candidate's rasterized perimeter missing from the edge map.
"""

from ._kernels import BACKEND as kernel_backend
from .bench import (
    ErrorWeights,
    GroundTruth,
    TrialStats,
    error_score,
    generate_arc,
    generate_synthetic,
    match_detections,
    run_trials,
    success,
    wilcoxon_rank_sum,
)
from .detector import (
    DetectedCircle,
    DetectionReport,
    DetectorConfig,
    detect_multi,
    detect_single,
    validate_circle,
)
from .geometry import CircleParams, Triplet, circle_from_points, transform
from .harmony import HarmonyMemory, HsaConfig, InsufficientEdgesError, RunTrace
from .imaging import (
    EdgeMap,
    FormatError,
    GrayImage,
    canny_edges,
    load_edge_map,
    load_gray,
    render_edge_map,
    save_edge_map,
    save_gray,
)
from .objective import Fitness, edge_exists, evaluate
from .raster import PointSet, rasterize_circle

__version__ = "0.1.0"

__all__ = [
    "CircleParams",
    "DetectedCircle",
    "DetectionReport",
    "DetectorConfig",
    "EdgeMap",
    "ErrorWeights",
    "Fitness",
    "FormatError",
    "GrayImage",
    "GroundTruth",
    "HarmonyMemory",
    "HsaConfig",
    "InsufficientEdgesError",
    "PointSet",
    "RunTrace",
    "TrialStats",
    "Triplet",
    "canny_edges",
    "circle_from_points",
    "detect_multi",
    "detect_single",
    "edge_exists",
    "error_score",
    "evaluate",
    "generate_arc",
    "generate_synthetic",
    "kernel_backend",
    "load_edge_map",
    "load_gray",
    "match_detections",
    "render_edge_map",
    "rasterize_circle",
    "run_trials",
    "save_edge_map",
    "save_gray",
    "success",
    "transform",
    "validate_circle",
    "wilcoxon_rank_sum",
]
