"""Accumulating sampled trees into the sparse pair table.

Every ancestor/descendant pair ``(j, i)`` of a sampled tree is covered by a
shortest path of that tree, with exact distance ``dist[i] - dist[j]``.
Pairs are keyed unordered as ``u * n + v`` with ``u < v`` and stored in
sorted numpy arrays, so the table never grows beyond the covered pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from progapsp.sssp import NO_PARENT, ShortestPathTree


class PairNotFound(KeyError):
    """No sampled tree covers the pair; its centrality may be below epsilon."""


def tree_pairs(tree: ShortestPathTree) -> Tuple[np.ndarray, np.ndarray]:
    """Return ``(ancestors, descendants)`` for every ancestor/descendant pair.

    Iterative depth-first traversal from the root keeping the list ``L`` of
    predecessors of the visited vertex; each visit emits ``(j, i)`` for all
    ``j`` in ``L``.
    """
    n = tree.n
    kids: List[List[int]] = [[] for _ in range(n)]
    for v, p in enumerate(tree.parent.tolist()):
        if p != NO_PARENT:
            kids[p].append(v)

    anc: List[int] = []
    desc: List[int] = []
    preds: List[int] = []
    stack = [~tree.root, tree.root]  # ~v marks the exit of v
    while stack:
        i = stack.pop()
        if i < 0:
            preds.pop()
            continue
        if preds:
            anc.extend(preds)
            desc.extend([i] * len(preds))
        preds.append(i)
        for k in reversed(kids[i]):
            stack.append(~k)
            stack.append(k)
    return np.asarray(anc, dtype=np.int64), np.asarray(desc, dtype=np.int64)


class ValueHistogram:
    """``count[p]`` = number of stored pairs with tree count ``p``.

    ``distinct`` is the set of ``p >= 1`` with ``count[p] > 0``. The count
    array grows with the sample size, since sampling is with replacement.
    """

    def __init__(self, size: int = 1):
        self.count = np.zeros(max(size, 1) + 1, dtype=np.int64)
        self.distinct: set[int] = set()

    def _grow(self, top: int) -> None:
        if top >= len(self.count):
            bigger = np.zeros(max(top + 1, 2 * len(self.count)), dtype=np.int64)
            bigger[: len(self.count)] = self.count
            self.count = bigger

    def shift(self, old: np.ndarray, new: np.ndarray) -> None:
        """Move one unit of mass per pair from ``count[old]`` to ``count[new]``."""
        if len(new) == 0:
            return
        self._grow(int(new.max()))
        was = old[old > 0]
        np.subtract.at(self.count, was, 1)
        np.add.at(self.count, new, 1)
        for p in np.unique(np.concatenate([was, new])).tolist():
            if self.count[p] > 0:
                self.distinct.add(p)
            else:
                self.distinct.discard(p)

    def values(self) -> np.ndarray:
        """Sorted snapshot of the distinct tree counts."""
        return np.asarray(sorted(self.distinct), dtype=np.int64)

    def total(self) -> int:
        return int(self.count[1:].sum())

    def mass(self) -> int:
        """Sum of ``p * count[p]``: total (tree, covered pair) incidences."""
        return int((np.arange(len(self.count)) * self.count).sum())

    @classmethod
    def from_counts(cls, t: np.ndarray) -> "ValueHistogram":
        hist = cls(int(t.max()) if len(t) else 1)
        counts = np.bincount(t, minlength=len(hist.count))
        counts[0] = 0
        hist.count = counts.astype(np.int64)
        hist.distinct = set(np.flatnonzero(counts).tolist())
        return hist


class PairTable:
    """Sparse table over unordered pairs: distance, tree count, witness.

    The witness is the smallest sample index whose tree covers the pair;
    the stored distance comes from that tree.
    """

    def __init__(self, n: int):
        self.n = n
        self.keys = np.empty(0, dtype=np.int64)
        self.t = np.empty(0, dtype=np.int64)
        self.d = np.empty(0, dtype=np.float64)
        self.witness = np.empty(0, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.keys)

    def key(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return u * self.n + v

    def find(self, u: int, v: int) -> int:
        k = self.key(u, v)
        idx = int(np.searchsorted(self.keys, k))
        if idx < len(self.keys) and self.keys[idx] == k:
            return idx
        return -1

    def __contains__(self, pair: Tuple[int, int]) -> bool:
        u, v = pair
        return u != v and self.find(u, v) >= 0

    def entry(self, u: int, v: int) -> Tuple[float, int, int]:
        """``(d, t, witness)`` of the pair."""
        idx = self.find(u, v) if u != v else -1
        if idx < 0:
            raise PairNotFound((u, v))
        return float(self.d[idx]), int(self.t[idx]), int(self.witness[idx])

    def pairs(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.keys // self.n, self.keys % self.n

    def add_incidences(
        self, keys: np.ndarray, d: np.ndarray, witness: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Merge covered-pair incidences; returns old and new counts per touched pair.

        Incidences must be listed in non-decreasing witness order so the first
        occurrence of a key carries its smallest sample index.
        """
        if len(keys) == 0:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty
        ukeys, first, counts = np.unique(keys, return_index=True, return_counts=True)
        pos = np.searchsorted(self.keys, ukeys)
        found = np.zeros(len(ukeys), dtype=bool)
        inside = pos < len(self.keys)
        found[inside] = self.keys[pos[inside]] == ukeys[inside]

        old = np.zeros(len(ukeys), dtype=np.int64)
        hit = pos[found]
        old[found] = self.t[hit]
        self.t[hit] += counts[found]

        fresh = ~found
        if fresh.any():
            at = pos[fresh]
            src = first[fresh]
            self.keys = np.insert(self.keys, at, ukeys[fresh])
            self.t = np.insert(self.t, at, counts[fresh])
            self.d = np.insert(self.d, at, d[src])
            self.witness = np.insert(self.witness, at, witness[src])
        return old, old + counts


@dataclass
class TreeStore:
    """Sampled trees in sample order; sample index ``i`` is ``trees[i]``."""

    trees: List[ShortestPathTree] = field(default_factory=list)

    def append(self, tree: ShortestPathTree) -> int:
        self.trees.append(tree)
        return len(self.trees) - 1

    def __len__(self) -> int:
        return len(self.trees)

    def __getitem__(self, idx: int) -> ShortestPathTree:
        return self.trees[idx]


def _incidences(tree: ShortestPathTree, n: int) -> Tuple[np.ndarray, np.ndarray]:
    anc, desc = tree_pairs(tree)
    d = tree.dist[desc] - tree.dist[anc]
    keys = np.minimum(anc, desc) * n + np.maximum(anc, desc)
    return keys, d


def accumulate_trees(
    trees: Sequence[ShortestPathTree], first_index: int, table: PairTable, hist: ValueHistogram
) -> None:
    """Accumulate consecutive sampled trees, the first carrying ``first_index``.

    Equivalent to calling :func:`accumulate_tree` on each tree in turn.
    """
    parts_k, parts_d, parts_w = [], [], []
    for offset, tree in enumerate(trees):
        keys, d = _incidences(tree, table.n)
        parts_k.append(keys)
        parts_d.append(d)
        parts_w.append(np.full(len(keys), first_index + offset, dtype=np.int64))
    if not parts_k:
        return
    old, new = table.add_incidences(
        np.concatenate(parts_k), np.concatenate(parts_d), np.concatenate(parts_w)
    )
    hist.shift(old, new)


def accumulate_tree(tree: ShortestPathTree, sample_index: int, table: PairTable, hist: ValueHistogram) -> None:
    accumulate_trees([tree], sample_index, table, hist)


def reconstruct_path(table: PairTable, store: TreeStore, u: int, v: int) -> List[int]:
    """Vertex sequence from ``u`` to ``v`` read off the pair's witness tree."""
    if u == v:
        raise ValueError("self-pairs are never stored")
    _, _, w = table.entry(u, v)
    tree = store[w]
    lo, hi = (u, v) if tree.hop[u] <= tree.hop[v] else (v, u)
    walk = [hi]
    x = hi
    parent = tree.parent
    while x != lo:
        x = int(parent[x])
        if x == NO_PARENT:
            raise RuntimeError(f"witness tree {w} does not relate {u} and {v}")
        walk.append(x)
    # walk runs hi -> lo
    return walk if hi == u else walk[::-1]


def iter_records(table: PairTable) -> Iterable[Tuple[int, int, float, int, int]]:
    us, vs = table.pairs()
    yield from zip(us.tolist(), vs.tolist(), table.d.tolist(), table.t.tolist(), table.witness.tolist())
