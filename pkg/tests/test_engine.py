import numpy as np
import pytest

from oracles import floyd_warshall
from progapsp.engine import (
    CAP_REACHED,
    ETA_MET,
    DisconnectedGraphError,
    RunConfig,
    SampleSchedule,
    next_sample_size,
    run,
)
from progapsp.generators import grid_graph, path_graph, random_sparse_graph
from progapsp.graph import Graph


def test_next_sample_size():
    sched = SampleSchedule(s1=100, multiplier=1.5)
    assert next_sample_size(1, sched) == 100
    assert next_sample_size(3, sched) == 225
    capped = SampleSchedule(s1=100, multiplier=1.5, cap=180)
    assert [next_sample_size(i, capped) for i in (1, 2, 3, 4)] == [100, 150, 180, 180]


def test_schedule_strictly_increasing_with_small_steps():
    sched = SampleSchedule(s1=5, multiplier=1.05)
    sizes = [next_sample_size(i, sched) for i in range(1, 12)]
    assert all(b > a for a, b in zip(sizes, sizes[1:]))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(epsilon=0.0, delta=0.1),
        dict(epsilon=1.0, delta=0.1),
        dict(epsilon=0.1, delta=1.2),
        dict(epsilon=0.1, delta=0.1, mode="both"),
        dict(epsilon=0.1, delta=0.1, schedule_multiplier=1.0),
        dict(epsilon=0.1, delta=0.1, c_univ=0.0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_disconnected_rejected():
    g = Graph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(DisconnectedGraphError):
        run(g, RunConfig(0.2, 0.2))


def test_path_distances_exact_every_run():
    g = path_graph(3)
    truth = {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 2.0}
    full = 0
    for seed in range(60):
        res = run(g, RunConfig(0.5, 0.5, seed=seed))
        us, vs = res.pairs.pairs()
        got = dict(zip(zip(us.tolist(), vs.tolist()), res.pairs.d.tolist()))
        assert all(truth[p] == d for p, d in got.items())
        full += len(got) == 3
    # every pair has centrality >= 0.5; guarantee is >= 1 - delta of runs
    assert full / 60 >= 0.5


def test_eta_met_stop():
    res = run(path_graph(3), RunConfig(0.3, 0.1, mode="centrality", c_univ=20, seed=0))
    assert res.report.stop_reason == ETA_MET
    assert res.report.iterations[-1].eta <= 0.3
    assert all(it.eta > 0.3 for it in res.report.iterations[:-1])
    assert res.r <= res.report.cap


def test_cap_reached_and_report_shape():
    g = grid_graph(4, 4)
    res = run(g, RunConfig(0.2, 0.2, seed=5))
    rep = res.report
    assert rep.stop_reason == CAP_REACHED
    assert res.r == rep.cap == rep.iterations[-1].sample_size
    sizes = [it.sample_size for it in rep.iterations]
    assert sizes == sorted(set(sizes))
    for i, it in enumerate(rep.iterations, start=1):
        assert it.delta_i == pytest.approx(0.2 / 2**i)
    res.check_invariants()


def test_centrality_estimates_and_invariants():
    g = random_sparse_graph(40, 80, seed=2)
    res = run(g, RunConfig(0.2, 0.2, mode="centrality", seed=9))
    res.check_invariants()
    c = res.centrality
    assert np.all((c > 0) & (c <= 1))
    assert np.array_equal(c, res.pairs.t / res.r)
    fw = floyd_warshall(g)
    us, vs = res.pairs.pairs()
    assert np.array_equal(res.pairs.d, fw[us, vs])


def test_reproducible():
    g = random_sparse_graph(60, 150, seed=4)
    cfg = RunConfig(0.2, 0.2, mode="centrality", seed=77)
    a, b = run(g, cfg), run(g, cfg)
    for name in ("keys", "t", "d", "witness"):
        assert getattr(a.pairs, name).tobytes() == getattr(b.pairs, name).tobytes()
    c = run(g, RunConfig(0.2, 0.2, mode="centrality", seed=78))
    assert not np.array_equal(a.pairs.t, c.pairs.t) or not np.array_equal(a.pairs.keys, c.pairs.keys)


def test_merge_chunking_does_not_change_result(monkeypatch):
    import progapsp.engine as engine

    g = random_sparse_graph(50, 120, seed=8)
    cfg = RunConfig(0.2, 0.2, mode="centrality", seed=3)
    whole = run(g, cfg)
    monkeypatch.setattr(engine, "_MERGE_CHUNK", 10)
    chunked = run(g, cfg)
    for name in ("keys", "t", "d", "witness"):
        assert np.array_equal(getattr(whole.pairs, name), getattr(chunked.pairs, name))
    assert whole.hist.distinct == chunked.hist.distinct


def test_single_vertex_graph():
    g = Graph.from_edges(1, [])
    res = run(g, RunConfig(0.2, 0.2))
    assert len(res.pairs) == 0
    assert res.report.stop_reason in (ETA_MET, CAP_REACHED)


def test_paths_from_result():
    g = grid_graph(3, 3)
    res = run(g, RunConfig(0.2, 0.2, seed=1))
    path = res.path(0, 8)
    assert path[0] == 0 and path[-1] == 8 and len(path) == 5
