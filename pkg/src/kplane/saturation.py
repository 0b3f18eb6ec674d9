"""Saturation of drawings and maximality of small graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import dcel
from .dcel import REAL, Drawing
from .enumeration import BudgetExceeded, SearchStats, explore_routes, is_k_planar
from .graphs import InvalidInput, LabeledGraph


def reachable_partners(d: Drawing, u: int, k: int | None = None) -> set[int]:
    """Vertices ``w`` such that an edge ``uw`` could be added to ``d``.

    Routes leave ``u`` through any corner, cross at most ``k`` segments of
    edges that are not incident to ``u`` and still have budget, never the same
    edge twice, and end at a corner of ``w``; the crossed edges must also avoid
    ``w``.
    """
    k = d.k if k is None else k
    probe = d.deep_copy()
    e = probe.add_edge(u, -1)
    probe.efake[e] = max(0, probe.k - k)
    eu, ev, dedge, org, kind, nlabel = probe.eu, probe.ev, probe.dedge, probe.org, probe.kind, probe.nlabel
    twin, nxt = probe.twin, probe.nxt
    xu = probe.vnode[u]
    found: set[int] = set()

    def visit(before, start, crossed):
        ends = set()
        for z in crossed:
            f = dedge[z]
            ends.add(eu[f])
            ends.add(ev[f])
        z = before
        while True:
            x = org[z]
            if kind[x] == REAL and x != xu:
                w = nlabel[x]
                if w not in ends:
                    found.add(w)
            z = nxt[twin[z]]
            if z == before:
                break

    explore_routes(probe, e, u, visit, ends=(u,), maxc=k)
    return found


def addable_edges(d: Drawing, k: int | None = None, graph_edges=None) -> list[tuple[int, int]]:
    """All non-adjacent drawn pairs ``(u, v)``, ``u < v``, whose edge can be added."""
    adjacent = set()
    for e in range(len(d.eu)):
        if d.epseudo[e]:
            continue
        adjacent.add((d.eu[e], d.ev[e]))
        adjacent.add((d.ev[e], d.eu[e]))
    out = set()
    for u in d.placed_vertices():
        if d.ndart[d.vnode[u]] < 0:
            continue
        for w in reachable_partners(d, u, k):
            if (u, w) not in adjacent:
                out.add((min(u, w), max(u, w)))
    return sorted(out)


def drawing_saturated(d: Drawing, k: int | None = None) -> bool:
    return not addable_edges(d, k)


def doubly_crossed_separation(d: Drawing, u: int, v: int) -> bool:
    """True iff every dual path from a face at ``u`` to a face at ``v`` has to
    cross a segment whose edge has no budget left."""
    if d.vnode[u] < 0 or d.vnode[v] < 0:
        raise InvalidInput("both vertices must be drawn")
    fid, walks = dcel.face_index(d)
    start = {fid[z] for z in d.rotation(d.vnode[u])}
    goal = {fid[z] for z in d.rotation(d.vnode[v])}
    seen = set(start)
    queue = deque(start)
    while queue:
        f = queue.popleft()
        if f in goal:
            return False
        for z in walks[f]:
            if d.budget(d.dedge[z]) <= 0:
                continue
            g = fid[d.twin[z]]
            if g not in seen:
                seen.add(g)
                queue.append(g)
    return True


@dataclass
class MaximalityResult:
    maximal: bool | None  # None means inconclusive
    witness: tuple[int, int] | None = None
    inconclusive_pairs: tuple = ()
    reason: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.maximal is None


def graph_maximal(g: LabeledGraph, k: int = 2, budget: int | None = None, check_planar: bool = True,
                  stats: SearchStats | None = None) -> MaximalityResult:
    """Whether no non-edge can be added to ``g`` keeping it k-planar.

    Each supergraph ``g + uv`` is enumerated from scratch.  A budget overrun on
    any candidate makes the whole answer inconclusive unless another candidate
    already refutes maximality.
    """
    if check_planar:
        try:
            if not is_k_planar(g, k, budget, stats):
                raise InvalidInput("graph is not k-planar")
        except BudgetExceeded:
            return MaximalityResult(None, reason="budget exceeded on the graph itself")
    pending = []
    for u, v in g.non_edges():
        try:
            if is_k_planar(g.with_edge(u, v), k, budget, stats):
                return MaximalityResult(False, (u, v))
        except BudgetExceeded:
            pending.append((u, v))
    if pending:
        return MaximalityResult(None, inconclusive_pairs=tuple(pending), reason="budget exceeded")
    return MaximalityResult(True)
