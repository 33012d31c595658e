"""Small fixture graphs: path, cycle, grid, star, complete, random sparse."""

from __future__ import annotations

import numpy as np

from progapsp.graph import Graph


def path_graph(n: int, weight: float = 1.0) -> Graph:
    return Graph.from_edges(n, [(i, i + 1, weight) for i in range(n - 1)])


def cycle_graph(n: int, weight: float = 1.0) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n, weight) for i in range(n)])


def grid_graph(rows: int, cols: int, weight: float = 1.0) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, weight))
            if r + 1 < rows:
                edges.append((v, v + cols, weight))
    return Graph.from_edges(rows * cols, edges)


def star_graph(leaves: int, weight: float = 1.0) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i, weight) for i in range(1, leaves + 1)])


def complete_graph(n: int, weight: float = 1.0) -> Graph:
    return Graph.from_edges(n, [(u, v, weight) for u in range(n) for v in range(u + 1, n)])


def random_sparse_graph(n: int, m: int, seed: int, wmin: int = 1, wmax: int = 10) -> Graph:
    """Connected random graph with ``m`` edges and integer weights in ``[wmin, wmax]``.

    A random spanning tree guarantees connectivity; the remaining ``m - n + 1``
    edges are drawn uniformly among absent vertex pairs.
    """
    max_m = n * (n - 1) // 2
    if not (n - 1 <= m <= max_m):
        raise ValueError(f"m must lie in [{n - 1}, {max_m}] for n={n}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    seen = set()
    edges = []
    for i in range(1, n):
        u = int(order[i])
        v = int(order[rng.integers(0, i)])
        seen.add((min(u, v), max(u, v)))
        edges.append((u, v))
    while len(edges) < m:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        edges.append(key)
    weights = rng.integers(wmin, wmax + 1, size=len(edges))
    return Graph.from_edges(n, [(u, v, float(w)) for (u, v), w in zip(edges, weights)])
