import pytest

from kplane import dcel, graphs
from kplane.enumeration import (BudgetExceeded, SearchStats, edge_order, enumerate_drawings,
                                insertion_plans, is_k_planar)
from kplane.graphs import Edge, InvalidInput, LabeledGraph

from oracles import brute_force_drawings, drawing_key, orbit_count, small_connected_graphs


def _graph(n, edges):
    return LabeledGraph([str(i) for i in range(n)], [Edge(u, v) for u, v in edges])


def _is_valid_order(g, order):
    seen = {g.edges[order[0]].u, g.edges[order[0]].v}
    for i in order[1:]:
        e = g.edges[i]
        if e.u not in seen and e.v not in seen:
            return False
        seen |= {e.u, e.v}
    return sorted(order) == list(range(g.m))


@pytest.mark.parametrize("seed", range(10))
def test_edge_order_cycle(seed):
    g = graphs.gen_cycle(10)
    assert _is_valid_order(g, edge_order(g, seed))


def test_edge_order_gadget():
    g = graphs.gen_gadget_x()
    assert _is_valid_order(g, edge_order(g))


def test_edge_order_disconnected():
    with pytest.raises(InvalidInput):
        edge_order(_graph(4, [(0, 1), (2, 3)]))


def test_plans_for_pendant_edge():
    g = _graph(3, [(0, 1), (0, 2)])
    d = dcel.init_drawing(g, (0, 1))
    plans = insertion_plans(d, 1)
    assert len(plans) == 1 and plans[0].landing == -1 and plans[0].crossings == ()


def test_plans_in_plane_triangle_stay_in_faces():
    base = _graph(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    for d in enumerate_drawings(base, 0):
        probe = d.deep_copy()
        e = probe.add_edge(1, 3)
        plans = insertion_plans(probe, e)
        # vertex 3 sits in one of the two triangle faces; only that face works
        assert len(plans) == 1
        assert plans[0].crossings == ()


def test_plans_respect_uncrossable_cycle():
    g = graphs.gen_cycle(10).with_uncrossable(range(10)).with_edge(0, 5)
    d = enumerate_drawings(graphs.gen_cycle(10).with_uncrossable(range(10)), 2)[0]
    probe = d.deep_copy()
    e = probe.add_edge(0, 5)
    plans = insertion_plans(probe, e)
    assert len(plans) == 2
    assert all(p.crossings == () for p in plans)
    assert g.m == 11


def test_k5_counts():
    k5 = graphs.gen_complete(5)
    assert enumerate_drawings(k5, 0) == []
    assert len(enumerate_drawings(k5, 1)) == 30
    assert len(enumerate_drawings(k5, 2)) == 294


@pytest.mark.parametrize("n,frozen", [(4, 2), (5, 8)])
def test_canonical_classes_match_oracle_orbits(n, frozen):
    edges = [(i, (i + 1) % n) if i < n - 1 else (0, n - 1) for i in range(n)]
    canon = enumerate_drawings(_graph(n, edges), 2, dedup="canonical")
    assert len(canon) == orbit_count(n, edges, brute_force_drawings(n, edges, 2)) == frozen


def test_complete_graphs():
    assert is_k_planar(graphs.gen_complete(6), 2)
    assert is_k_planar(graphs.gen_complete(7), 2)
    assert not is_k_planar(graphs.gen_complete(8), 2)
    assert not is_k_planar(graphs.gen_complete(9), 2)


def test_k9_rejected_by_prefilter():
    st = SearchStats()
    assert not is_k_planar(graphs.gen_k9_minus(), 2, stats=st)
    assert st.nodes == 0


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        enumerate_drawings(graphs.gen_complete(6), 2, budget=10)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("KPLANE_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        is_k_planar(graphs.gen_complete(6), 2)


def test_limit_stops_early():
    assert len(enumerate_drawings(graphs.gen_complete(5), 2, limit=3)) == 3


def test_rejects_bad_k_and_disconnected():
    with pytest.raises(InvalidInput):
        enumerate_drawings(graphs.gen_cycle(4), 4)
    with pytest.raises(InvalidInput):
        enumerate_drawings(_graph(4, [(0, 1), (2, 3)]), 2)


def test_disconnected_planarity_by_components():
    assert is_k_planar(_graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)]), 0)


@pytest.mark.parametrize("n,edges", [
    (4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    (4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
    (5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
    (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
])
@pytest.mark.parametrize("k", [0, 1, 2])
def test_matches_brute_force(n, edges, k):
    got = [drawing_key(d) for d in enumerate_drawings(_graph(n, edges), k)]
    assert len(got) == len(set(got))
    assert set(got) == brute_force_drawings(n, edges, k)


def test_small_atlas_subset():
    for n, edges in list(small_connected_graphs(4))[:8]:
        got = {drawing_key(d) for d in enumerate_drawings(_graph(n, edges), 2)}
        assert got == brute_force_drawings(n, edges, 2)
