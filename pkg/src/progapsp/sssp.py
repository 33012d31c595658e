"""Canonical Dijkstra trees.

The tree rooted at ``x`` is made unique by two rules: the heap pops the
minimum tentative distance with ties going to the smaller vertex id, and a
vertex's parent changes only on a strictly smaller tentative distance.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Tuple

import numpy as np

from progapsp.graph import Graph

NO_PARENT = -1


@dataclass(frozen=True, eq=False)
class ShortestPathTree:
    """One canonical shortest-path tree.

    ``parent[root] == NO_PARENT``; vertices unreachable from the root (only
    possible on disconnected input) also carry ``NO_PARENT``, ``dist = inf``
    and ``hop = -1``.
    """

    root: int
    parent: np.ndarray
    dist: np.ndarray
    hop: np.ndarray

    @property
    def n(self) -> int:
        return len(self.parent)

    @cached_property
    def children(self) -> List[List[int]]:
        kids: List[List[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent.tolist()):
            if p != NO_PARENT:
                kids[p].append(v)
        return kids

    def depth(self) -> int:
        """Largest hop count from the root."""
        return int(self.hop.max()) if self.n else 0

    def path_to_root(self, v: int) -> List[int]:
        out = [v]
        parent = self.parent
        while v != self.root:
            v = int(parent[v])
            if v == NO_PARENT:
                raise ValueError("vertex is not reachable from the root")
            out.append(v)
        return out


def _settle(g: Graph, root: int) -> Tuple[List[float], List[int], List[int]]:
    n = g.n
    if not 0 <= root < n:
        raise IndexError(f"root {root} out of range for n={n}")
    adjacency = g.adjacency
    dist = [math.inf] * n
    parent = [NO_PARENT] * n
    done = bytearray(n)
    order = []
    dist[root] = 0.0
    heap = [(0.0, root)]
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        d, u = pop(heap)
        if done[u]:
            continue
        done[u] = 1
        order.append(u)
        for v, w in adjacency[u]:
            if done[v]:
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                push(heap, (nd, v))
    return dist, parent, order


def dijkstra_canonical(g: Graph, root: int) -> ShortestPathTree:
    dist, parent, order = _settle(g, root)
    hop = [-1] * g.n
    hop[root] = 0
    for v in order[1:]:
        hop[v] = hop[parent[v]] + 1
    return ShortestPathTree(
        root=root,
        parent=np.asarray(parent, dtype=np.int64),
        dist=np.asarray(dist, dtype=np.float64),
        hop=np.asarray(hop, dtype=np.int64),
    )


def max_hop_levels(g: Graph, root: int) -> np.ndarray:
    """Maximum edge count over all shortest root paths, per vertex.

    Ties are detected with tolerance ``1e-9 * max(1, dist[v])``. Only
    predecessors settled earlier are considered, so along zero-weight edges
    the value is a lower bound.
    """
    dist, _, order = _settle(g, root)
    pos = [-1] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    h = [-1] * g.n
    h[root] = 0
    adjacency = g.adjacency
    for v in order[1:]:
        dv = dist[v]
        tol = 1e-9 * max(1.0, dv)
        pv = pos[v]
        best = -1
        for u, w in adjacency[v]:
            if pos[u] < pv and pos[u] >= 0 and abs(dist[u] + w - dv) <= tol and h[u] + 1 > best:
                best = h[u] + 1
        h[v] = best
    return np.asarray(h, dtype=np.int64)
