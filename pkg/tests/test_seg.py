import numpy as np
import pytest
from hypothesis import given, settings

from seedengage import (
    EngagementState,
    Graph,
    compute_seg,
    connected_component,
    engagement,
    engagement_gain,
    induced_subgraph,
    k_core,
    r_neighbors,
)

from conftest import build, small_graphs
from oracles import brute_seg, brute_seg_strict, mask_to_set


def test_triangle(triangle):
    assert compute_seg(triangle, 0, 2, 1).members.tolist() == [0, 1, 2]


def test_path_is_null():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert compute_seg(g, 1, 2, 2) is None


def test_bridge_graph(bridge):
    assert compute_seg(bridge, 5, 2, 1).members.tolist() == [3, 4, 5, 6]
    # c's one-hop ball holds d, which has a single edge back into it
    assert compute_seg(bridge, 2, 2, 1).members.tolist() == [0, 1, 2]
    with pytest.raises(IndexError):
        compute_seg(bridge, 7, 2, 1)
    with pytest.raises(ValueError):
        compute_seg(bridge, 0, 0, 1)


def test_engagement_examples(bridge):
    state = EngagementState(bridge, 2, 1)
    assert engagement(state) == 0
    assert engagement_gain(bridge, 5, state, 2, 1) == 4
    state.add(5)
    assert engagement(state) == 4
    assert engagement_gain(bridge, 0, state, 2, 1) == 3
    assert engagement_gain(bridge, 4, state, 2, 1) == 0
    with pytest.raises(ValueError):
        engagement_gain(bridge, 0, state, 3, 1)
    with pytest.raises(ValueError):
        state.add(5)


def test_overlapping_union():
    # SEG(0) = {0,1,2}; SEG(4) = {2,3,4} at k=2, r=1: two triangles sharing node 2
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    state = EngagementState(g, 2, 1)
    assert state.add(0) == 3
    assert state.add(4) == 2
    assert engagement(state) == 5


def test_gain_caches_and_null_gain(star):
    state = EngagementState(star, 2, 1)
    assert state.gain(0) == 0
    assert 0 in state.cache
    assert state.cache.evaluations == 1
    state.gain(0)
    assert state.cache.evaluations == 1


@settings(max_examples=80)
@given(small_graphs(10))
def test_invariants(ne):
    g = build(*ne)
    for k in (1, 2, 3):
        core = set(k_core(g, k).tolist())
        for r in (1, 2):
            union = set()
            for s in range(g.node_count):
                seg = compute_seg(g, s, k, r)
                if seg is None:
                    continue
                members = seg.as_set()
                union |= members
                assert s in members
                assert members <= core
                assert members <= r_neighbors(g, s, r).reached()
                sub = induced_subgraph(g, seg.members)
                assert sub.degrees().min() >= k
                root = int(np.searchsorted(sub.labels, s))
                assert len(connected_component(sub, root)) == sub.node_count
                again = compute_seg(g, s, k, r)
                assert np.array_equal(again.members, seg.members)
            assert union <= core


@settings(max_examples=40)
@given(small_graphs(9))
def test_union_is_core_at_large_radius(ne):
    g = build(*ne)
    r = max(1, g.node_count)  # at least the diameter of every component
    for k in (1, 2, 3):
        union = set()
        for s in range(g.node_count):
            seg = compute_seg(g, s, k, r)
            if seg is not None:
                union |= seg.as_set()
        assert union == set(k_core(g, k).tolist())


@settings(max_examples=40)
@given(small_graphs(9))
def test_matches_exhaustive_search(ne):
    n, edges = ne
    g = build(n, edges)
    for k in (1, 2, 3):
        for r in (1, 2):
            for s in range(n):
                best, feasible = brute_seg(n, edges, s, k, r)
                seg = compute_seg(g, s, k, r)
                got = set() if seg is None else seg.as_set()
                assert got == mask_to_set(best)
                for h in feasible:
                    assert h | best == best


def test_distance_measured_in_parent_graph():
    # x (8) is two hops from s (0) only through y (4), which has degree 2
    # and is peeled at k=3; inside the SEG, x sits three hops from s.
    s, a, b, c, y, x, w, z, q = range(9)
    edges = [
        (s, a), (s, b), (s, c), (s, y), (y, x), (a, b), (a, c),
        (a, w), (b, z), (c, q), (w, z), (w, q), (x, w), (x, z), (x, q),
    ]
    g = Graph.from_edges(9, edges)
    seg = compute_seg(g, s, 3, 2)
    assert seg.as_set() == {s, a, b, c, w, z, q, x}
    assert mask_to_set(brute_seg(9, edges, s, 3, 2)[0]) == seg.as_set()
    # the stricter reading (distance inside the group) gives a smaller set
    strict = mask_to_set(brute_seg_strict(9, edges, s, 3, 2))
    assert x not in strict and strict < seg.as_set()
