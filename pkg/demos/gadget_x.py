"""Enumerate every simple 2-plane drawing of the gadget X and show that they
are one drawing up to relabeling.

    python3 demos/gadget_x.py
"""

from kplane import dcel, graphs
from kplane.enumeration import SearchStats, enumerate_drawings
from kplane.saturation import drawing_saturated

g = graphs.gen_gadget_x()
print(f"X: n={g.n} m={g.m} degrees={g.degrees()}")

stats = SearchStats()
drawings = enumerate_drawings(g, 2, stats=stats)
print(f"{len(drawings)} labeled drawings, {stats.nodes} search nodes, {stats.seconds:.1f}s")

forms = {dcel.canonical_form(d) for d in drawings}
print(f"canonical classes: {len(forms)}")
print(f"all saturated: {all(drawing_saturated(d) for d in drawings)}")

d = drawings[0]
doubly = [e for e in d.drawn_edges() if d.crossing_count(e) == 2]
print(f"crossings in one drawing: {d.total_crossings()}, doubly crossed edges: {len(doubly)}")
