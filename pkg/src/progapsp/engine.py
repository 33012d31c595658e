"""Progressive sampling driver.

Roots are drawn uniformly with replacement on a geometric schedule. After
each batch the Rademacher stopping bound ``eta`` is evaluated at confidence
``delta / 2**i``; sampling stops once ``eta <= epsilon`` or once the sample
reaches the VC-based cap (epsilon-net size for distances, epsilon-sample
size for centralities).
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

import numpy as np

from progapsp.accumulate import PairTable, TreeStore, ValueHistogram, accumulate_trees, reconstruct_path
from progapsp.bounds import (
    DEFAULT_C_UNIV,
    EXACT_DIAMETER_LIMIT,
    epsilon_net_size,
    epsilon_sample_size,
    initial_sample_size,
    vc_dimension_bound,
    vertex_diameter_bound,
)
from progapsp.graph import Graph, validate_connected
from progapsp.rademacher import evaluate_stop
from progapsp.sssp import dijkstra_canonical

log = logging.getLogger(__name__)

MODES = ("distances", "centrality")
ETA_MET = "eta-met"
CAP_REACHED = "cap-reached"

# pair incidences buffered before merging into the table
_MERGE_CHUNK = 4_000_000


class DisconnectedGraphError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    epsilon: float
    delta: float
    mode: str = "distances"
    seed: int = 0
    schedule_multiplier: float = 1.5
    c_univ: float = DEFAULT_C_UNIV
    diam_mode: str = "auto"
    diam_value: Optional[int] = None
    include_zero: bool = True
    max_iterations: int = 64
    diam_limit: int = EXACT_DIAMETER_LIMIT

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.schedule_multiplier > 1:
            raise ValueError("schedule_multiplier must exceed 1")
        if not self.c_univ > 0:
            raise ValueError("c_univ must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class SampleSchedule:
    s1: int
    multiplier: float
    cap: Optional[int] = None

    def sizes(self):
        """Yield ``|S_1|, |S_2|, ...``; strictly increasing until the cap."""
        prev = 0
        i = 1
        while True:
            size = max(math.ceil(self.multiplier ** (i - 1) * self.s1), prev + 1)
            if self.cap is not None:
                size = min(size, self.cap)
            yield size
            prev = size
            i += 1


def next_sample_size(i: int, sched: SampleSchedule) -> int:
    if i < 1:
        raise ValueError("iterations start at 1")
    for j, size in enumerate(sched.sizes(), start=1):
        if j == i:
            return size
    raise AssertionError("unreachable")


@dataclass
class IterationRecord:
    i: int
    sample_size: int
    w_s: float
    s_star: float
    delta_i: float
    eta: float
    elapsed: float


@dataclass
class RunReport:
    config: dict
    n: int
    m: int
    diam_v: int
    vc_k: int
    s1: int
    cap: int
    iterations: List[IterationRecord] = field(default_factory=list)
    stop_reason: str = ""
    sample_size: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class EstimationResult:
    mode: str
    pairs: PairTable
    hist: ValueHistogram
    store: TreeStore
    report: RunReport

    @property
    def r(self) -> int:
        return self.report.sample_size

    @property
    def centrality(self) -> np.ndarray:
        """``t / r`` aligned with ``pairs.keys``."""
        return self.pairs.t / self.r

    def path(self, u: int, v: int) -> List[int]:
        return reconstruct_path(self.pairs, self.store, u, v)

    def check_invariants(self) -> None:
        table, hist = self.pairs, self.hist
        if len(self.store) != self.r:
            raise InvariantError("tree store size differs from sample size")
        if hist.total() != len(table):
            raise InvariantError("histogram mass differs from table size")
        if len(table) and (table.t.min() < 1 or table.t.max() > self.r):
            raise InvariantError("tree count outside [1, r]")
        if hist.mass() != int(table.t.sum()):
            raise InvariantError("histogram incidence total differs from table")
        if hist.distinct != set(np.flatnonzero(hist.count).tolist()):
            raise InvariantError("distinct value set out of sync with counts")
        if len(table) > 1 and not np.all(np.diff(table.keys) > 0):
            raise InvariantError("pair keys not strictly sorted")


def run(g: Graph, cfg: RunConfig) -> EstimationResult:
    if not validate_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    n = g.n
    diam_v = vertex_diameter_bound(g, cfg.diam_mode, cfg.diam_value, cfg.diam_limit)
    k = vc_dimension_bound(n, diam_v)
    if cfg.mode == "distances":
        cap = epsilon_net_size(cfg.epsilon, cfg.delta, k, cfg.c_univ)
    else:
        cap = epsilon_sample_size(cfg.epsilon, cfg.delta, k, cfg.c_univ)
    s1 = initial_sample_size(cfg.epsilon, cfg.delta)
    sched = SampleSchedule(s1, cfg.schedule_multiplier, cap)
    report = RunReport(config=asdict(cfg), n=n, m=g.m, diam_v=diam_v, vc_k=k, s1=s1, cap=cap)
    log.info("n=%d m=%d diam_v=%d vc_k=%d s1=%d cap=%d", n, g.m, diam_v, k, s1, cap)

    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    table = PairTable(n)
    hist = ValueHistogram(n)
    store = TreeStore()
    start = time.perf_counter()

    for i, target in enumerate(sched.sizes(), start=1):
        roots = rng.integers(0, n, size=target - len(store))
        pending = []
        pending_size = 0
        first = len(store)
        for x in roots.tolist():
            tree = dijkstra_canonical(g, x)
            store.append(tree)
            pending.append(tree)
            pending_size += int(tree.hop.sum())
            if pending_size >= _MERGE_CHUNK:
                accumulate_trees(pending, first, table, hist)
                first += len(pending)
                pending, pending_size = [], 0
        accumulate_trees(pending, first, table, hist)

        r = len(store)
        ev = evaluate_stop(hist.values(), r, cfg.delta, i, cfg.include_zero)
        report.iterations.append(
            IterationRecord(i, r, ev.w_s, ev.s_star, ev.delta_i, ev.eta, time.perf_counter() - start)
        )
        log.info("iteration %d: r=%d w_s=%.6g eta=%.6g pairs=%d", i, r, ev.w_s, ev.eta, len(table))
        if ev.eta <= cfg.epsilon:
            report.stop_reason = ETA_MET
            break
        if r >= cap:
            report.stop_reason = CAP_REACHED
            break
        if i >= cfg.max_iterations:
            raise RuntimeError(f"no stop after {cfg.max_iterations} iterations (cap {cap})")

    report.sample_size = len(store)
    return EstimationResult(mode=cfg.mode, pairs=table, hist=hist, store=store, report=report)
