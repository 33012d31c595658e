import numpy as np
import pytest
from hypothesis import strategies as st

from progapsp.generators import random_sparse_graph
from progapsp.graph import Graph

ACCEPTANCE_LINES = []


def record_criterion(name, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def connected_graphs(draw, max_n=9, max_w=5, allow_zero=False):
    """Random connected graphs with small integer weights."""
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = None
    extra = draw(st.integers(0, n * (n - 1) // 2 - (n - 1)))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(pairs)
    for p in pairs[:extra]:
        edges[tuple(p)] = None
    lo = 0 if allow_zero else 1
    return Graph.from_edges(n, [(u, v, float(rng.integers(lo, max_w + 1))) for u, v in edges])


@pytest.fixture
def small_random_graphs():
    out = []
    for seed in range(30):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 11))
        m = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
        out.append(random_sparse_graph(n, m, seed, 1, 4))
    return out
