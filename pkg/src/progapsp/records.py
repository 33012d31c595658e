"""Pair records and their TSV form.

Columns are ``u v d t [c] [path]`` with ``u < v``, rows sorted by
``(u, v)``, reals printed with 6 decimals and paths as comma-joined ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, TextIO

import numpy as np

COLUMNS = ("u", "v", "d", "t", "c", "path")


@dataclass
class PairRecords:
    u: np.ndarray
    v: np.ndarray
    d: np.ndarray
    t: np.ndarray
    c: Optional[np.ndarray] = None
    paths: Optional[List[List[int]]] = None
    n: Optional[int] = None

    def __len__(self) -> int:
        return len(self.u)


def from_result(result, with_paths: bool = False) -> PairRecords:
    table = result.pairs
    u, v = table.pairs()
    paths = None
    if with_paths:
        paths = [result.path(a, b) for a, b in zip(u.tolist(), v.tolist())]
    c = result.centrality if result.mode == "centrality" else None
    return PairRecords(u=u, v=v, d=table.d.copy(), t=table.t.copy(), c=c, paths=paths, n=table.n)


def from_exact(exact) -> PairRecords:
    n = exact.n
    u, v = np.triu_indices(n, k=1)
    return PairRecords(
        u=u.astype(np.int64), v=v.astype(np.int64), d=exact.dist[u, v], t=exact.t[u, v], c=exact.c[u, v], n=n
    )


def write_tsv(records: PairRecords, fh: TextIO) -> None:
    cols = ["u", "v", "d", "t"]
    if records.c is not None:
        cols.append("c")
    if records.paths is not None:
        cols.append("path")
    fh.write("\t".join(cols) + "\n")
    c = records.c.tolist() if records.c is not None else None
    for idx, (u, v, d, t) in enumerate(
        zip(records.u.tolist(), records.v.tolist(), records.d.tolist(), records.t.tolist())
    ):
        row = [str(u), str(v), f"{d:.6f}", str(t)]
        if c is not None:
            row.append(f"{c[idx]:.6f}")
        if records.paths is not None:
            row.append(",".join(map(str, records.paths[idx])))
        fh.write("\t".join(row) + "\n")


def read_tsv(fh: TextIO) -> PairRecords:
    header = fh.readline().rstrip("\r\n").split("\t")
    if header[:4] != ["u", "v", "d", "t"] or any(h not in COLUMNS for h in header):
        raise ValueError(f"unexpected TSV header {header}")
    has_c = "c" in header
    has_path = "path" in header
    us, vs, ds, ts, cs, paths = [], [], [], [], [], []
    for lineno, line in enumerate(fh, start=2):
        line = line.rstrip("\r\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} fields, got {len(parts)}")
        row = dict(zip(header, parts))
        try:
            us.append(int(row["u"]))
            vs.append(int(row["v"]))
            ds.append(float(row["d"]))
            ts.append(int(row["t"]))
            if has_c:
                cs.append(float(row["c"]))
            if has_path:
                paths.append([int(x) for x in row["path"].split(",")])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return PairRecords(
        u=np.asarray(us, dtype=np.int64),
        v=np.asarray(vs, dtype=np.int64),
        d=np.asarray(ds, dtype=np.float64),
        t=np.asarray(ts, dtype=np.int64),
        c=np.asarray(cs, dtype=np.float64) if has_c else None,
        paths=paths if has_path else None,
    )
