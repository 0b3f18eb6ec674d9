from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kplane import graphs
from kplane.graphs import Edge, InvalidInput, LabeledGraph


def test_cycle_sizes():
    g = graphs.gen_cycle(10)
    assert (g.n, g.m) == (10, 10)
    assert all(e.tag.kind == "cycle" and not e.uncrossable for e in g.edges)
    assert graphs.gen_cycle(3).m == 3
    with pytest.raises(InvalidInput):
        graphs.gen_cycle(2)


def test_gadget_degrees_and_non_neighbors():
    g = graphs.gen_gadget_x()
    assert g.m == 32
    deg = g.degrees()
    assert sorted(deg, reverse=True) == [8, 8, 7, 7, 7, 7, 7, 7, 6]
    assert deg[0] == deg[1] == 8 and deg[8] == 6
    adj = g.adjacency()
    assert set(range(8)) - adj[8] == {6, 7}


def test_gadget_automorphisms():
    gx = graphs.gen_gadget_x().to_networkx()
    autos = list(nx.algorithms.isomorphism.GraphMatcher(gx, gx).isomorphisms_iter())
    assert len(autos) == 32
    # transitive within each degree class {x0,x1}, {x8}, {x6,x7}, {x2..x5}
    for cls in ({0, 1}, {8}, {6, 7}, {2, 3, 4, 5}):
        v = min(cls)
        assert {a[v] for a in autos} == cls


@pytest.mark.parametrize("k", range(2, 11))
def test_gk_counts(k):
    g = graphs.gen_gk(k)
    assert g.n == 10 * k + 140
    assert g.m == 20 * k + 630
    assert not any(e.uncrossable for e in g.edges)


def test_gk_rejects_k1():
    with pytest.raises(InvalidInput):
        graphs.gen_gk(1)


def test_gk_braided_matching():
    g = graphs.gen_gk(3)
    have = {frozenset((e.u, e.v)) for e in g.edges if e.tag.kind == "matching"}
    want = set()
    for i in (1, 2):
        for j in range(10):
            jp = (j + 8) % 10 if j % 2 == 0 else (j + 2) % 10
            want.add(frozenset((graphs.cycle_vertex(i, j), graphs.cycle_vertex(i + 1, jp))))
    assert have == want


def test_gk_gadget_copies_are_gadgets():
    g = graphs.gen_gk(2)
    gx = graphs.gen_gadget_x().to_networkx()
    full = g.to_networkx()
    for copy_id in (0, 9, 10, 19):
        vmap = graphs.gadget_copy_vertices(2, copy_id)
        sub = full.subgraph(vmap.values())
        assert nx.is_isomorphic(sub, gx)
        assert sub.has_edge(vmap[6], vmap[7])


def test_gk_minus():
    g = graphs.gen_gk_minus(1)
    assert g.m == 10 and all(e.uncrossable for e in g.edges)
    g = graphs.gen_gk_minus(3)
    assert (g.n, g.m) == (30, 50)
    g = graphs.gen_gk_minus(2, last_uncrossable=True)
    unc = [e for e in g.edges if e.uncrossable]
    assert len(unc) == 20 and all(e.tag.kind == "cycle" for e in unc)
    assert sum(1 for e in g.edges if e.tag.kind == "matching" and not e.uncrossable) == 10


def test_k9_minus():
    assert graphs.gen_k9_minus().m == 36
    assert graphs.gen_k9_minus([(0, 1)]).m == 35
    pattern = graphs.gen_k9_minus([(0, 1), (2, 3), (4, 5), (5, 6)])
    assert nx.is_isomorphic(pattern.to_networkx(), graphs.gen_gadget_x().to_networkx())
    with pytest.raises(InvalidInput):
        graphs.gen_k9_minus([(0, 9)])


def test_x_plus():
    g = graphs.gen_x_plus()
    assert (g.n, g.m) == (10, 35)
    assert g.adjacency()[9] == {3, 4, 6}


def test_generators_deterministic():
    assert graphs.dumps(graphs.gen_gk(2)) == graphs.dumps(graphs.gen_gk(2))
    assert graphs.gen_gk(2).labels == graphs.gen_gk(2).labels


def test_rejects_loops_and_multi_edges():
    with pytest.raises(InvalidInput):
        LabeledGraph(["a", "b"], [Edge(0, 0)])
    with pytest.raises(InvalidInput):
        LabeledGraph(["a", "b"], [Edge(0, 1), Edge(1, 0)])


def test_malformed_edge_list():
    with pytest.raises(InvalidInput):
        graphs.loads("0 1\n")
    with pytest.raises(InvalidInput):
        graphs.loads("n 3\n0 1 ?\n")


@st.composite
def edge_lists(draw):
    n = draw(st.integers(2, 9))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    flags = draw(st.lists(st.booleans(), min_size=len(chosen), max_size=len(chosen)))
    return n, [(u, v, f) for (u, v), f in zip(chosen, flags)]


@settings(max_examples=200, deadline=None)
@given(edge_lists())
def test_edge_list_round_trip(data):
    n, edges = data
    text = "n %d\n" % n + "".join(f"{u} {v} !\n" if f else f"{u} {v}\n" for u, v, f in edges)
    g = graphs.loads(text)
    assert graphs.dumps(g) == text
    assert g.n == n and [e.uncrossable for e in g.edges] == [f for _, _, f in edges]
