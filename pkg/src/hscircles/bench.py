"""Synthetic ground truth, detection scoring, and trial statistics.

The error score between a ground-truth circle and a detection is a
weighted sum of the center shift and the radius mismatch; a trial succeeds
when the score is strictly below 1.  ``run_trials`` repeats detection over
an image set with derived seeds and aggregates success rate, scores and
wall-clock times the way comparison tables report them.  A self-contained
Wilcoxon rank-sum test supports significance checks between two score
samples.
"""

import math
import time
from dataclasses import dataclass, replace
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from . import _kernels
from .detector import DetectorConfig, detect_multi, detect_single
from .geometry import CircleParams
from .imaging import EdgeMap


class GenerationError(RuntimeError):
    """Raised when the requested circles cannot be placed disjointly."""


class ErrorWeights(NamedTuple):
    eta: float = 0.05  # center-shift weight
    mu: float = 0.1  # radius-mismatch weight


@dataclass(frozen=True)
class GroundTruth:
    circles: Tuple[CircleParams, ...]


def generate_synthetic(
    width: int,
    height: int,
    n_circles: int,
    r_range: Tuple[int, int],
    noise_density: float = 0.0,
    seed: int = 0,
    min_separation: float = 10.0,
    max_tries: int = 10_000,
) -> Tuple[EdgeMap, GroundTruth]:
    """Random disjoint circles rendered as a binary edge map, plus noise.

    Each circle gets an integer radius uniform in ``r_range`` and an integer
    center placed so the full perimeter stays at least 2 px inside the
    image; centers are rejected until every pair of circumferences is
    separated by ``min_separation`` px.  Noise then sets
    ``floor(noise_density * width * height)`` uniformly random pixels (draws
    may collide with each other or with circle pixels, so the final count
    can fall slightly short of the nominal sum).
    """
    if not (0.0 <= noise_density < 1.0):
        raise ValueError("noise_density must lie in [0, 1)")
    r_lo, r_hi = int(r_range[0]), int(r_range[1])
    if r_lo < 1 or r_lo > r_hi:
        raise ValueError("invalid radius range")
    rng = np.random.default_rng(seed)

    placed: List[CircleParams] = []
    tries = 0
    while len(placed) < n_circles:
        if tries >= max_tries:
            raise GenerationError(
                f"could not place {n_circles} disjoint circles after {max_tries} tries"
            )
        tries += 1
        r = int(rng.integers(r_lo, r_hi + 1))
        margin = r + 2
        if width - margin <= margin or height - margin <= margin:
            continue
        x = int(rng.integers(margin, width - margin))
        y = int(rng.integers(margin, height - margin))
        ok = all(
            math.hypot(x - c.x0, y - c.y0) >= r + c.r + min_separation
            for c in placed
        )
        if ok:
            placed.append(CircleParams(float(x), float(y), float(r)))

    grid = np.zeros((height, width), dtype=np.uint8)
    for c in placed:
        pts = _kernels.ring_points(int(c.x0), int(c.y0), int(c.r))
        grid[pts[:, 1], pts[:, 0]] = 1
    n_noise = int(noise_density * width * height)
    if n_noise:
        xs = rng.integers(0, width, size=n_noise)
        ys = rng.integers(0, height, size=n_noise)
        grid[ys, xs] = 1
    return EdgeMap.from_grid(grid), GroundTruth(circles=tuple(placed))


def generate_arc(
    width: int,
    height: int,
    r_range: Tuple[int, int],
    coverage: float = 0.5,
    seed: int = 0,
) -> Tuple[EdgeMap, CircleParams]:
    """A contiguous angular fraction of one random circle's perimeter.

    Returns the arc-only edge map and the generating circle, for
    occluded/arc approximation experiments.
    """
    if not (0.0 < coverage <= 1.0):
        raise ValueError("coverage must lie in (0, 1]")
    rng = np.random.default_rng(seed)
    r_lo, r_hi = int(r_range[0]), int(r_range[1])
    r = int(rng.integers(r_lo, r_hi + 1))
    margin = r + 2
    if width - margin <= margin or height - margin <= margin:
        raise GenerationError("image too small for the requested radius")
    x = int(rng.integers(margin, width - margin))
    y = int(rng.integers(margin, height - margin))
    start = rng.random() * 360.0

    pts = _kernels.ring_points(x, y, r)
    ang = (np.degrees(np.arctan2(pts[:, 1] - y, pts[:, 0] - x)) - start) % 360.0
    keep = ang <= coverage * 360.0
    grid = np.zeros((height, width), dtype=np.uint8)
    grid[pts[keep, 1], pts[keep, 0]] = 1
    return EdgeMap.from_grid(grid), CircleParams(float(x), float(y), float(r))


def error_score(
    truth: CircleParams, detected: CircleParams, w: ErrorWeights = ErrorWeights()
) -> float:
    """Weighted center shift plus radius mismatch between two circles."""
    return w.eta * (abs(truth.x0 - detected.x0) + abs(truth.y0 - detected.y0)) + w.mu * abs(
        truth.r - detected.r
    )


def success(es: float) -> bool:
    """A detection succeeds iff its error score is strictly below 1."""
    return es < 1.0


# ---------------------------------------------------------------------------
# Wilcoxon rank-sum test

def wilcoxon_rank_sum(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided rank-sum test p-value for independent samples.

    Ties share midranks.  For pooled sizes up to 12 the null distribution
    is enumerated exactly and p = min(1, 2 * min(P(W <= w), P(W >= w)));
    larger samples use the normal approximation with tie correction and
    continuity correction.
    """
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    if not a or not b:
        raise ValueError("both samples must be nonempty")
    m, n = len(a), len(a) + len(b)
    pooled = a + b
    ranks = _midranks(pooled)
    w = sum(ranks[:m])
    if n <= 12:
        return _exact_p(ranks, m, w)
    return _normal_p(ranks, m, w)


def _midranks(values):
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mid = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mid
        i = j + 1
    return ranks


def _exact_p(ranks, m, w):
    # doubled ranks are integers even with midrank ties
    items = [int(round(2.0 * r)) for r in ranks]
    total_sum = sum(items)
    # dp[k][s]: number of size-k subsets of items with doubled-rank sum s
    dp = [[0] * (total_sum + 1) for _ in range(m + 1)]
    dp[0][0] = 1
    for it in items:
        for k in range(min(m, len(items)) - 1, -1, -1):
            row, nxt = dp[k], dp[k + 1]
            for s in range(total_sum - it, -1, -1):
                if row[s]:
                    nxt[s + it] += row[s]
    counts = dp[m]
    total = sum(counts)
    w2 = int(round(2.0 * w))
    p_le = sum(counts[: w2 + 1]) / total
    p_ge = sum(counts[w2:]) / total
    return min(1.0, 2.0 * min(p_le, p_ge))


def _normal_p(ranks, m, w):
    n = len(ranks)
    mu = m * (n + 1) / 2.0
    tie_sum = 0.0
    seen = {}
    for r in ranks:
        seen[r] = seen.get(r, 0) + 1
    for t in seen.values():
        tie_sum += t**3 - t
    var = m * (n - m) / 12.0 * ((n + 1) - tie_sum / (n * (n - 1)))
    if var <= 0.0:
        return 1.0
    delta = w - mu
    if delta > 0.5:
        delta -= 0.5  # continuity correction
    elif delta < -0.5:
        delta += 0.5
    else:
        delta = 0.0
    z = delta / math.sqrt(var)
    return math.erfc(abs(z) / math.sqrt(2.0))


# ---------------------------------------------------------------------------
# Trial harness

@dataclass
class TrialStats:
    es_values: List[float]
    times: List[float]
    successes: int
    trials: int

    @classmethod
    def from_results(cls, es_values, times):
        return cls(
            es_values=list(es_values),
            times=list(times),
            successes=sum(1 for e in es_values if success(e)),
            trials=len(es_values),
        )

    @property
    def success_rate(self) -> float:
        return 100.0 * self.successes / self.trials if self.trials else 0.0

    def summarize(self) -> dict:
        ok = [e for e in self.es_values if success(e)]
        return {
            "trials": self.trials,
            "successes": self.successes,
            "success_rate_percent": self.success_rate,
            "time_mean_s": float(np.mean(self.times)) if self.times else 0.0,
            "time_std_s": float(np.std(self.times)) if self.times else 0.0,
            "es_mean": float(np.mean(ok)) if ok else None,
            "es_std": float(np.std(ok)) if ok else None,
        }


def format_stats_table(rows: Sequence[Tuple[str, TrialStats]]) -> str:
    """Aligned text table: time ± std, success rate, Es ± std per row."""
    header = f"{'Image':<12} {'Time (s)':>18} {'SR (%)':>8} {'Es':>18}"
    lines = [header, "-" * len(header)]
    for label, st in rows:
        s = st.summarize()
        t = f"{s['time_mean_s']:.3f} ± {s['time_std_s']:.3f}"
        if s["es_mean"] is None:
            e = "-"
        else:
            e = f"{s['es_mean']:.3f} ± {s['es_std']:.3f}"
        lines.append(
            f"{label:<12} {t:>18} {s['success_rate_percent']:>8.1f} {e:>18}"
        )
    return "\n".join(lines)


def match_detections(
    truth: GroundTruth, detected: Sequence[CircleParams], w: ErrorWeights = ErrorWeights()
) -> List[float]:
    """Greedy one-to-one matching of detections to ground-truth circles.

    Pairs are taken in order of ascending error score; each truth circle and
    each detection is used at most once.  Returns one score per truth circle,
    ``inf`` where no detection was assigned.
    """
    pairs = sorted(
        (error_score(t, d, w), ti, di)
        for ti, t in enumerate(truth.circles)
        for di, d in enumerate(detected)
    )
    es = [math.inf] * len(truth.circles)
    assigned = [False] * len(truth.circles)
    used = set()
    for score, ti, di in pairs:
        if assigned[ti] or di in used:
            continue
        es[ti] = score
        assigned[ti] = True
        used.add(di)
    return es


def run_trials(
    images: Sequence[Tuple[EdgeMap, GroundTruth]],
    cfg: DetectorConfig,
    repeats: int,
    multi: bool = False,
    weights: ErrorWeights = ErrorWeights(),
) -> TrialStats:
    """Run detection ``repeats`` times per image and aggregate the outcomes.

    Trial (i, k) uses the derived seed ``cfg.hsa.seed + i * repeats + k``,
    so a rerun with the same inputs reproduces identical statistics.  A
    trial's score is the worst matched error score over the image's ground
    truth circles (``inf`` when a truth circle went undetected); timing
    covers the detect call only.  Trials are ordered image-major, so
    slicing ``es_values`` by ``repeats`` recovers per-image results.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    es_values: List[float] = []
    times: List[float] = []
    detect = detect_multi if multi else detect_single
    for i, (edges, truth) in enumerate(images):
        for k in range(repeats):
            dcfg = replace(
                cfg, hsa=replace(cfg.hsa, seed=cfg.hsa.seed + i * repeats + k)
            )
            t0 = time.perf_counter()
            report = detect(edges, dcfg)
            times.append(time.perf_counter() - t0)
            if truth.circles:
                matched = match_detections(
                    truth, [c.params for c in report.circles], weights
                )
                es_values.append(max(matched))
            else:
                es_values.append(0.0 if not report.circles else math.inf)
    return TrialStats.from_results(es_values, times)
