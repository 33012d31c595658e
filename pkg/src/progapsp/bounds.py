"""Closed-form sample-size bounds.

All sizes are driven by the VC-dimension bound of the range space whose
points are canonical trees and whose ranges are the tree sets covering a
vertex pair: ``floor(lg diam_v + lg n + 2)``.
"""

from __future__ import annotations

import math

import numpy as np

from progapsp.graph import Graph
from progapsp.sssp import max_hop_levels

EXACT_DIAMETER_LIMIT = 2000
DEFAULT_C_UNIV = 0.5


def _check_unit(name: str, x: float) -> None:
    if not 0.0 < x < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {x}")


def vertex_diameter_bound(
    g: Graph, mode: str = "exact", value: int | None = None, limit: int = EXACT_DIAMETER_LIMIT
) -> int:
    """Upper bound on the number of vertices of any shortest path.

    ``exact`` scans every root with :func:`max_hop_levels` (refused above
    ``limit`` vertices), ``trivial`` returns ``n``, ``provided`` validates
    ``value``, and ``auto`` picks ``exact`` up to ``limit`` else ``trivial``.
    """
    if mode == "auto":
        mode = "exact" if g.n <= limit else "trivial"
    if mode == "trivial":
        return g.n
    if mode == "provided":
        if value is None or not 1 <= value <= g.n:
            raise ValueError(f"provided vertex diameter must lie in [1, {g.n}], got {value}")
        return int(value)
    if mode != "exact":
        raise ValueError(f"unknown diameter mode {mode!r}")
    if g.n > limit:
        raise ValueError(f"exact vertex diameter is limited to n <= {limit} (n={g.n}); use trivial or provided")
    best = 0
    for s in range(g.n):
        best = max(best, int(max_hop_levels(g, s).max()))
    return best + 1


def vc_dimension_bound(n: int, diam_v: int) -> int:
    if n < 1 or not 1 <= diam_v <= n:
        raise ValueError(f"need n >= 1 and 1 <= diam_v <= n, got n={n}, diam_v={diam_v}")
    return math.floor(math.log2(diam_v) + math.log2(n) + 2)


def epsilon_net_size(epsilon: float, delta: float, k: int, c_univ: float = DEFAULT_C_UNIV) -> int:
    """Sample size making the sample an epsilon-net with probability ``1 - delta``."""
    _check_unit("epsilon", epsilon)
    _check_unit("delta", delta)
    return math.ceil(c_univ / epsilon * (k * math.log(1 / epsilon) + math.log(1 / delta)))


def epsilon_sample_size(epsilon: float, delta: float, k: int, c_univ: float = DEFAULT_C_UNIV) -> int:
    """Sample size making the sample epsilon-representative with probability ``1 - delta``."""
    _check_unit("epsilon", epsilon)
    _check_unit("delta", delta)
    return math.ceil(c_univ / epsilon**2 * (k + math.log(1 / delta)))


def hoeffding_union_size(n: int, epsilon: float, delta: float) -> int:
    """Fixed sample size from a per-pair Hoeffding bound plus a union bound over n^2 pairs."""
    if n < 2:
        raise ValueError("n must be at least 2")
    _check_unit("epsilon", epsilon)
    _check_unit("delta", delta)
    return math.ceil((math.log(2) + 2 * math.log(n) + math.log(1 / delta)) / (2 * epsilon**2))


def initial_sample_size(epsilon: float, delta: float) -> int:
    """Smallest first sample for which the stopping bound can already reach epsilon.

    With a zero Rademacher bound and confidence ``delta / 2`` the stopping
    condition becomes ``2 r^2 eps^2 - r ln(6/delta) - 8 ln^2(6/delta) >= 0``.
    """
    _check_unit("epsilon", epsilon)
    _check_unit("delta", delta)
    a = math.log(6 / delta)
    return math.ceil(a * (1 + math.sqrt(1 + 64 * epsilon**2)) / (4 * epsilon**2))


def compare_bounds(n: int, diam_v: int, epsilon: float, delta: float, c_univ: float = DEFAULT_C_UNIV) -> dict:
    """VC-based sizes next to the Hoeffding/union size, as a plain dict."""
    k = vc_dimension_bound(n, diam_v)
    return {
        "n": n,
        "diam_v": diam_v,
        "epsilon": epsilon,
        "delta": delta,
        "c_univ": c_univ,
        "vc_k": k,
        "eps_net_size": epsilon_net_size(epsilon, delta, k, c_univ),
        "eps_sample_size": epsilon_sample_size(epsilon, delta, k, c_univ),
        "hoeffding_size": hoeffding_union_size(max(n, 2), epsilon, delta),
        "initial_size": initial_sample_size(epsilon, delta),
    }
