import networkx as nx
import pytest

from kplane import dcel, geometry, graphs
from kplane.constructions import canonical_gk_drawing, mirror, nested_drawing
from kplane.graphs import Edge, LabeledGraph


def _drawn_graph(d):
    g = nx.Graph()
    g.add_nodes_from(range(d.n_graph))
    g.add_edges_from((d.eu[e], d.ev[e]) for e in range(len(d.eu)) if not d.epseudo[e] and d.eu[e] >= 0)
    return g


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_nested_drawing(k):
    d = nested_drawing(k)
    assert dcel.validate(d) == []
    assert d.total_crossings() == 10 * (k - 1)
    for e in range(len(d.eu)):
        want = 2 if d.etag[e].kind == "matching" else 0
        assert d.crossing_count(e) == want


def test_straight_square_with_diagonals():
    g = LabeledGraph(list("abcd"), [Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 0), Edge(0, 2), Edge(1, 3)])
    pts = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
    d = geometry.planarize(g, pts, {}, 1)
    assert d.total_crossings() == 1
    assert dcel.validate(d) == []
    assert len(dcel.faces(d)) == 2 - 5 + 8


def test_canonical_g2(g2_drawing):
    d = g2_drawing
    assert dcel.validate(d) == []
    assert nx.utils.graphs_equal(_drawn_graph(d), graphs.gen_gk(2).to_networkx())
    assert max(d.crossing_count(e) for e in d.drawn_edges()) == 2


def test_canonical_g3(gadget_drawing):
    d = canonical_gk_drawing(3, gadget_drawing)
    assert dcel.validate(d) == []
    assert d.n_graph == 170


def test_mirror_is_involution(gadget_drawing):
    m = mirror(gadget_drawing)
    assert dcel.validate(m) == []
    assert dcel.labeled_key(mirror(m)) == dcel.labeled_key(gadget_drawing)
    assert dcel.labeled_key(m) == dcel.labeled_key(gadget_drawing, mirror=True)
