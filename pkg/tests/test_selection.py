import numpy as np
import pytest
from hypothesis import given, settings

from seedengage import (
    CandidateQueue,
    CombinationCapError,
    Graph,
    brute_force_opt,
    compute_seg,
    generate_synthetic,
    select_ba,
    select_baseline,
    select_era,
)
from seedengage.selection import alpha_centrality, clustering_coefficient, r_neighbor_sizes

from conftest import build, load_fixture, small_graphs


def test_ba_bridge(bridge):
    res = select_ba(bridge, 2, 1, 2)
    assert res.seeds == [3, 0]
    assert res.marginal_gains == [4, 3]
    assert res.total_engaged == 7
    assert res.engaged_per_iteration() == [4, 7]
    assert sorted(res.engaged_set.tolist()) == list(range(7))


def test_ba_stops_on_zero_gain(bridge):
    res = select_ba(bridge, 2, 1, 5)
    assert len(res.seeds) == 2


def test_ba_single_triangle(triangle):
    res = select_ba(triangle, 2, 1, 1)
    assert res.seeds == [0] and res.total_engaged == 3


def test_empty_core(star):
    for sel in (select_ba, select_era):
        res = sel(star, 2, 1, 3)
        assert res.seeds == [] and res.total_engaged == 0


@pytest.mark.parametrize("sel", [select_ba, select_era, brute_force_opt])
def test_rejects_bad_params(sel, triangle):
    for k, r, b in [(0, 1, 1), (1, 0, 1), (1, 1, 0)]:
        with pytest.raises(ValueError):
            sel(triangle, k, r, b)


def test_era_bridge(bridge):
    ba = select_ba(bridge, 2, 1, 2)
    era = select_era(bridge, 2, 1, 2)
    assert era.seeds == ba.seeds and era.marginal_gains == ba.marginal_gains
    assert era.seg_evaluations <= ba.seg_evaluations


@settings(max_examples=120)
@given(small_graphs(11))
def test_era_matches_ba(ne):
    g = build(*ne)
    for k in (1, 2, 3):
        for r in (1, 2):
            ba = select_ba(g, k, r, 3)
            era = select_era(g, k, r, 3)
            assert era.seeds == ba.seeds
            assert era.marginal_gains == ba.marginal_gains
            assert era.seg_evaluations <= ba.seg_evaluations


def test_era_prunes_on_larger_graph():
    g = generate_synthetic(3000, 3, 5)
    ba = select_ba(g, 2, 1, 10)
    era = select_era(g, 2, 1, 10)
    assert era.seeds == ba.seeds
    assert era.seg_evaluations < ba.seg_evaluations


def test_ba_threads_agree():
    g = generate_synthetic(800, 3, 2)
    assert select_ba(g, 3, 2, 5, threads=4).seeds == select_ba(g, 3, 2, 5).seeds


@settings(max_examples=60)
@given(small_graphs(10))
def test_gains_non_increasing(ne):
    g = build(*ne)
    for k in (1, 2):
        res = select_ba(g, k, 2, 4)
        assert all(a >= b for a, b in zip(res.marginal_gains, res.marginal_gains[1:]))
        assert all(x > 0 for x in res.marginal_gains)


def test_queue_order_and_update():
    q = CandidateQueue(np.array([4, 1, 3, 2]), np.array([5, 7, 5, 1]))
    assert list(q) == [(1, 7), (3, 5), (4, 5), (2, 1)]
    q.update(4, 9)
    assert q.evaluated(4) and not q.evaluated(3)
    assert next(iter(q)) == (4, 9) and q.bound(4) == 9
    q.remove(1)
    assert len(q) == 3 and q.is_ordered()


def test_r_neighbor_sizes(bridge):
    nodes = np.arange(7)
    assert r_neighbor_sizes(bridge, nodes, 1).tolist() == (bridge.degrees() + 1).tolist()
    assert r_neighbor_sizes(bridge, nodes, 2).tolist() == [4, 4, 7, 7, 5, 5, 5]


def test_clustering_values(bridge, star):
    cc = clustering_coefficient(bridge)
    assert cc[0] == pytest.approx(1.0)
    assert cc[4] == pytest.approx(1.0)
    assert cc[3] == pytest.approx(3 / 6)
    assert clustering_coefficient(star).tolist() == [0.0] * 6


def test_alpha_centrality_regular():
    # on a d-regular graph every node scores 1 / (1 - alpha * d)
    n = 8
    g = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    x = alpha_centrality(g, 0.3)
    assert np.allclose(x, 1 / (1 - 0.6))
    with pytest.raises(ValueError):
        alpha_centrality(g, 0.6)


def test_alpha_centrality_linear_solve():
    g = generate_synthetic(60, 2, 9)
    a = g.to_scipy().toarray()
    alpha = 0.5 / g.degrees().max()
    want = np.linalg.solve(np.eye(60) - alpha * a.T, np.ones(60))
    assert np.allclose(alpha_centrality(g, alpha), want, atol=1e-8)


def test_degree_baseline_skips_null_seg():
    g = load_fixture("star_triangle.txt")
    res = select_baseline(g, 2, 1, 1, "degree")
    hub = int(np.argmax(g.degrees()))
    assert res.seeds != [hub]
    assert int(g.labels[res.seeds[0]]) in {7, 8, 9}
    assert res.total_engaged == 3


@pytest.mark.parametrize("measure", ["degree", "cc", "ac"])
@settings(max_examples=30, deadline=None)
@given(ne=small_graphs(10))
def test_baselines_never_pick_null(measure, ne):
    g = build(*ne)
    res = select_baseline(g, 2, 1, 3, measure)
    for s in res.seeds:
        assert compute_seg(g, s, 2, 1) is not None
    assert len(set(res.seeds)) == len(res.seeds)


def test_baseline_bad_measure(triangle):
    with pytest.raises(ValueError):
        select_baseline(triangle, 1, 1, 1, "pagerank")


def test_oracle_bridge(bridge):
    res = brute_force_opt(bridge, 2, 1, 2)
    assert res.total_engaged == 7
    assert res.seeds == [0, 3]


def test_oracle_cap():
    g = generate_synthetic(200, 3, 1)
    with pytest.raises(CombinationCapError):
        brute_force_opt(g, 1, 1, 5, cap=1000)


@settings(max_examples=60)
@given(small_graphs(9))
def test_oracle_dominates_greedy(ne):
    g = build(*ne)
    for k in (1, 2):
        for b in (1, 2):
            opt = brute_force_opt(g, k, 1, b)
            ba = select_ba(g, k, 1, b)
            assert opt.total_engaged >= ba.total_engaged
            if b == 1:
                assert opt.total_engaged == ba.total_engaged
