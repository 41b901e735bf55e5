"""Discrete harmony search over triplets of edge-vector indexes.

The decision vector has three integer components, each an index into the
edge-point vector.  Improvisation follows the classic scheme: per
component, copy from a random memory row with probability ``hmcr`` (then
pitch-adjust with probability ``par`` by up to ``bw`` index steps), or
redraw uniformly.  The worst memory row is replaced whenever a new harmony
strictly improves on it.

All randomness comes from a single seeded generator in a fixed draw order
(see ``improvise``), so runs are bit-reproducible for a given seed.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np

from .geometry import Triplet
from .objective import Fitness

EvalFn = Callable[[Triplet], Fitness]


class InsufficientEdgesError(ValueError):
    """Raised when fewer than three candidate indexes exist."""


@dataclass
class HsaConfig:
    """Optimizer parameters; the defaults are the tuned detector setup."""

    hms: int = 100
    hmcr: float = 0.7
    par: float = 0.3
    bw: float = 2.0
    ni: int = 200
    seed: int = 0
    lower: int = 0
    upper: int = 0

    def __post_init__(self):
        if self.hms < 2:
            raise ValueError("hms must be >= 2")
        if not (0.0 <= self.hmcr <= 1.0 and 0.0 <= self.par <= 1.0):
            raise ValueError("hmcr and par must lie in [0, 1]")
        if self.bw <= 0.0:
            raise ValueError("bw must be positive")
        if self.ni < 1:
            raise ValueError("ni must be >= 1")
        if self.lower > self.upper:
            raise ValueError("lower must not exceed upper")


@dataclass
class HarmonyMemory:
    entries: List[Tuple[Triplet, Fitness]]
    best: int = 0
    worst: int = 0

    def rescan(self):
        js = [f.j_value for _, f in self.entries]
        self.best = min(range(len(js)), key=lambda i: (js[i], i))
        self.worst = max(range(len(js)), key=lambda i: (js[i], -i))

    @property
    def best_entry(self) -> Tuple[Triplet, Fitness]:
        return self.entries[self.best]


@dataclass
class RunTrace:
    best_j_per_iteration: List[float] = field(default_factory=list)
    evaluations: int = 0


def _uniform_index(rng, lower, upper):
    # discrete uniform via round(r * span); round() ties-to-even, which is
    # immaterial for a continuous draw
    span = upper - lower
    return lower + min(round(rng.random() * span), span)


def init_memory(cfg: HsaConfig, evaluate: EvalFn, rng=None) -> HarmonyMemory:
    """Fill the memory with ``hms`` random distinct-component triplets.

    Each component is uniform over [lower, upper]; triplets with repeated
    components are redrawn whole.  Raises InsufficientEdgesError when the
    domain holds fewer than three distinct indexes.
    """
    if cfg.upper - cfg.lower < 2:
        raise InsufficientEdgesError(
            "need at least 3 edge points to form circle candidates"
        )
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    entries = []
    for _ in range(cfg.hms):
        while True:
            t = Triplet(
                _uniform_index(rng, cfg.lower, cfg.upper),
                _uniform_index(rng, cfg.lower, cfg.upper),
                _uniform_index(rng, cfg.lower, cfg.upper),
            )
            if t.i != t.j and t.j != t.k and t.i != t.k:
                break
        entries.append((t, evaluate(t)))
    hm = HarmonyMemory(entries=entries)
    hm.rescan()
    return hm


def improvise(hm: HarmonyMemory, cfg: HsaConfig, rng) -> Triplet:
    """Build one new triplet from the memory.

    Fixed draw order per component: r1 (memory vs random); on the memory
    branch a row index, then r2 (pitch?), then r3 (step size) and a sign
    coin (< 0.5 means +); on the random branch one uniform.  Components
    that duplicate an earlier one are redrawn uniformly, at most 10
    repair passes, after which the duplicate stands and the objective
    scores it worst.
    """
    comps = [0, 0, 0]
    for j in range(3):
        if rng.random() < cfg.hmcr:
            row = int(rng.integers(0, cfg.hms))
            v = hm.entries[row][0][j]
            if rng.random() < cfg.par:
                step = round(rng.random() * cfg.bw)
                if rng.random() < 0.5:
                    v = v + step
                else:
                    v = v - step
                v = min(max(v, cfg.lower), cfg.upper)
        else:
            v = _uniform_index(rng, cfg.lower, cfg.upper)
        comps[j] = v

    for _ in range(10):
        dup = _first_duplicate(comps)
        if dup is None:
            break
        comps[dup] = _uniform_index(rng, cfg.lower, cfg.upper)
    return Triplet(*comps)


def _first_duplicate(comps):
    if comps[1] == comps[0]:
        return 1
    if comps[2] == comps[0] or comps[2] == comps[1]:
        return 2
    return None


def update_memory(hm: HarmonyMemory, t: Triplet, f: Fitness) -> HarmonyMemory:
    """Replace the worst row when the new harmony strictly improves on it."""
    if f.j_value < hm.entries[hm.worst][1].j_value:
        hm.entries[hm.worst] = (t, f)
        hm.rescan()
    return hm


def run(cfg: HsaConfig, evaluate: EvalFn) -> Tuple[Triplet, Fitness, RunTrace]:
    """Full optimization: init the memory, then ``ni`` improvisation cycles.

    Returns the best memory entry and a trace of the running best j_value
    (one entry per cycle, nonincreasing).
    """
    rng = np.random.default_rng(cfg.seed)
    hm = init_memory(cfg, evaluate, rng)
    trace = RunTrace(evaluations=cfg.hms)
    for _ in range(cfg.ni):
        t = improvise(hm, cfg, rng)
        f = evaluate(t)
        trace.evaluations += 1
        update_memory(hm, t, f)
        trace.best_j_per_iteration.append(hm.entries[hm.best][1].j_value)
    t_best, f_best = hm.best_entry
    return t_best, f_best, trace
