"""Undirected weighted graphs and the edge-list text format.

Vertices are dense integer ids ``0..n-1``; ascending id order is the fixed
vertex ordering that makes Dijkstra trees canonical.

Edge-list format::

    # comment
    p 4 3          (optional header: vertex count, edge count)
    0 1 1.0
    1 2 2.5
    2 3 1

Lines are whitespace separated; LF and CRLF line endings are accepted.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple


class GraphFormatError(ValueError):
    """Raised for malformed or invalid edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph with non-negative edge weights.

    ``adjacency[u]`` lists ``(v, w)`` tuples sorted by neighbor id.
    """

    n: int
    adjacency: Tuple[Tuple[Tuple[int, float], ...], ...]
    _edges: Tuple[Tuple[int, int, float], ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int, float]]) -> "Graph":
        adj: List[List[Tuple[int, float]]] = [[] for _ in range(n)]
        seen = set()
        canon = []
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id out of range in edge ({u}, {v}) for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop on vertex {u}")
            if not math.isfinite(w):
                raise GraphFormatError(f"non-finite weight {w!r} on edge ({u}, {v})")
            if w < 0:
                raise GraphFormatError(f"negative weight {w!r} on edge ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge {key}")
            seen.add(key)
            canon.append((key[0], key[1], w))
            adj[u].append((v, w))
            adj[v].append((u, w))
        canon.sort()
        return cls(
            n=n,
            adjacency=tuple(tuple(sorted(a)) for a in adj),
            _edges=tuple(canon),
        )

    @property
    def m(self) -> int:
        return len(self._edges)

    def edges(self) -> Tuple[Tuple[int, int, float], ...]:
        """Edges as ``(u, v, w)`` with ``u < v``, sorted."""
        return self._edges

    def weight(self, u: int, v: int) -> float:
        for x, w in self.adjacency[u]:
            if x == v:
                return w
        raise KeyError((u, v))

    def has_integer_weights(self) -> bool:
        return all(w.is_integer() for _, _, w in self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))


def parse_edge_list(text: bytes | str) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"input is not UTF-8: {exc}") from None
    declared_n = declared_m = None
    edges = []
    lineno_of = {}
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if declared_n is not None:
                raise GraphFormatError("repeated 'p' header", lineno)
            if edges:
                raise GraphFormatError("'p' header must precede edges", lineno)
            if len(parts) != 3:
                raise GraphFormatError("header must be 'p n m'", lineno)
            try:
                declared_n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"bad header {line!r}", lineno) from None
            if declared_n < 1 or declared_m < 0:
                raise GraphFormatError(f"bad header {line!r}", lineno)
            continue
        if len(parts) != 3:
            raise GraphFormatError(f"expected 'u v w', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise GraphFormatError(f"expected 'u v w', got {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"negative vertex id in {line!r}", lineno)
        if not math.isfinite(w):
            raise GraphFormatError(f"non-finite weight in {line!r}", lineno)
        if w < 0:
            raise GraphFormatError(f"negative weight in {line!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop on vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in lineno_of:
            raise GraphFormatError(f"duplicate edge {key} (first on line {lineno_of[key]})", lineno)
        lineno_of[key] = lineno
        edges.append((u, v, w))
        max_id = max(max_id, u, v)

    if declared_n is not None:
        if max_id >= declared_n:
            raise GraphFormatError(f"vertex id {max_id} exceeds declared n={declared_n}")
        if declared_m != len(edges):
            raise GraphFormatError(f"header declares m={declared_m} but file has {len(edges)} edges")
        n = declared_n
    else:
        if max_id < 0:
            raise GraphFormatError("empty edge list without 'p n m' header")
        n = max_id + 1
        present = bytearray(n)
        for u, v, _ in edges:
            present[u] = present[v] = 1
        if not all(present):
            missing = present.index(0)
            raise GraphFormatError(
                f"vertex id {missing} never appears; ids must be dense unless a 'p n m' header is given"
            )
    return Graph.from_edges(n, edges)


def _format_weight(w: float) -> str:
    if w.is_integer() and abs(w) < 2**53:
        return str(int(w))
    return repr(w)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{u} {v} {_format_weight(w)}" for u, v, w in g.edges())
    return "\n".join(lines) + "\n"


def validate_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    queue = deque([0])
    reached = 1
    while queue:
        u = queue.popleft()
        for v, _ in g.adjacency[u]:
            if not seen[v]:
                seen[v] = 1
                reached += 1
                queue.append(v)
    return reached == g.n
