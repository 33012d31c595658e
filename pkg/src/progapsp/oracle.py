"""Exact ground truth at desk scale.

Builds all ``n`` canonical trees to get exact distances and exact
shortest path centralities ``c(u, v) = t_uv / n``, and compares an estimate
against them. Dense ``n x n`` matrices; refused above ``ORACLE_MAX_N``.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from progapsp.accumulate import tree_pairs
from progapsp.graph import Graph
from progapsp.records import PairRecords, from_result
from progapsp.sssp import dijkstra_canonical

DEFAULT_ORACLE_MAX_N = 2000


class OracleLimitError(ValueError):
    pass


def oracle_limit() -> int:
    return int(os.environ.get("ORACLE_MAX_N", DEFAULT_ORACLE_MAX_N))


def _check_size(g: Graph, limit: Optional[int]) -> None:
    limit = oracle_limit() if limit is None else limit
    if g.n > limit:
        raise OracleLimitError(f"graph has n={g.n} vertices; oracle limit is {limit}")


@dataclass
class ExactTables:
    dist: np.ndarray
    t: np.ndarray
    c: np.ndarray

    @property
    def n(self) -> int:
        return len(self.dist)


def exact_apsp(g: Graph, limit: Optional[int] = None) -> np.ndarray:
    _check_size(g, limit)
    out = np.empty((g.n, g.n), dtype=np.float64)
    for x in range(g.n):
        out[x] = dijkstra_canonical(g, x).dist
    return out


def exact_centrality(g: Graph, limit: Optional[int] = None) -> ExactTables:
    _check_size(g, limit)
    n = g.n
    dist = np.empty((n, n), dtype=np.float64)
    t = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        tree = dijkstra_canonical(g, x)
        dist[x] = tree.dist
        anc, desc = tree_pairs(tree)
        # each unordered pair appears at most once per tree
        t[anc, desc] += 1
    t = t + t.T
    return ExactTables(dist=dist, t=t, c=t / n)


@dataclass
class ComparisonReport:
    n: int
    epsilon: float
    emitted: int
    distance_mismatches: List[Tuple[int, int, float, float]] = field(default_factory=list)
    net_violations: List[Tuple[int, int, float]] = field(default_factory=list)
    sup_error: Optional[float] = None
    sup_error_pair: Optional[Tuple[int, int]] = None

    @property
    def distances_ok(self) -> bool:
        return not self.distance_mismatches

    @property
    def net_ok(self) -> bool:
        return not self.net_violations

    @property
    def representative_ok(self) -> Optional[bool]:
        if self.sup_error is None:
            return None
        return self.sup_error <= self.epsilon

    def to_dict(self) -> dict:
        out = asdict(self)
        out["distance_mismatch_count"] = len(self.distance_mismatches)
        out["net_violation_count"] = len(self.net_violations)
        out["distances_ok"] = self.distances_ok
        out["net_ok"] = self.net_ok
        out["representative_ok"] = self.representative_ok
        return out


def compare(est, exact: ExactTables, epsilon: float, rel_tol: float = 1e-9) -> ComparisonReport:
    """Check an estimate (``EstimationResult`` or ``PairRecords``) against exact tables.

    Unemitted pairs count as estimated centrality 0.
    """
    rec: PairRecords = est if isinstance(est, PairRecords) else from_result(est)
    n = exact.n
    if rec.n is not None and rec.n != n:
        raise ValueError(f"vertex counts differ: estimate n={rec.n}, exact n={n}")
    if len(rec) and (int(rec.v.max()) >= n or int(rec.u.min()) < 0):
        raise ValueError(f"estimate mentions vertex ids outside 0..{n - 1}")

    report = ComparisonReport(n=n, epsilon=epsilon, emitted=len(rec))
    true_d = exact.dist[rec.u, rec.v]
    bad = np.abs(rec.d - true_d) > rel_tol * np.maximum(1.0, np.abs(true_d))
    for idx in np.flatnonzero(bad).tolist():
        report.distance_mismatches.append(
            (int(rec.u[idx]), int(rec.v[idx]), float(rec.d[idx]), float(true_d[idx]))
        )

    emitted = np.zeros((n, n), dtype=bool)
    emitted[rec.u, rec.v] = True
    emitted |= emitted.T
    iu, iv = np.triu_indices(n, k=1)
    missing = (exact.c[iu, iv] >= epsilon) & ~emitted[iu, iv]
    for idx in np.flatnonzero(missing).tolist():
        report.net_violations.append((int(iu[idx]), int(iv[idx]), float(exact.c[iu[idx], iv[idx]])))

    if rec.c is not None:
        c_est = np.zeros((n, n), dtype=np.float64)
        c_est[rec.u, rec.v] = rec.c
        c_est[rec.v, rec.u] = rec.c
        err = np.abs(c_est[iu, iv] - exact.c[iu, iv])
        if len(err):
            at = int(np.argmax(err))
            report.sup_error = float(err[at])
            report.sup_error_pair = (int(iu[at]), int(iv[at]))
        else:
            report.sup_error = 0.0
    return report
