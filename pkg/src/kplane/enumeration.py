"""Exhaustive backtracking enumeration of simple k-plane drawings.

Edges are inserted one at a time.  An edge is routed from a corner at its
source vertex through at most ``k`` segments, never crossing an adjacent edge,
an edge it already crossed, or an edge without remaining budget.  Routes are
explored by mutating the drawing in place (split, recurse, undo), so a face
that is revisited after a crossing is seen in its already-split form.

The next edge to insert is the remaining edge with both endpoints drawn that
has the fewest insertion plans (a dead end is detected as soon as one such edge
has none); when no such edge exists the first edge of the static order with one
drawn endpoint is used.  The choice depends only on the current partial
drawing, so every drawing is still produced exactly once.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import dcel
from .dcel import REAL, Drawing
from .graphs import InvalidInput, LabeledGraph


class BudgetExceeded(RuntimeError):
    """The node-expansion cap was hit before the search space was exhausted."""


@dataclass(frozen=True)
class InsertionPlan:
    source: int
    start: int  # the new dart goes into the corner in front of this dart
    crossings: tuple[int, ...]
    landing: int  # dart in front of which the edge lands, -1 for a new vertex

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)


@dataclass
class SearchStats:
    nodes: int = 0
    drawings: int = 0
    duplicates: int = 0
    seconds: float = 0.0
    complete: bool = True

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "drawings": self.drawings, "duplicates": self.duplicates,
                "seconds": round(self.seconds, 3), "complete": self.complete}


def default_budget() -> int | None:
    raw = os.environ.get("KPLANE_BUDGET")
    return int(raw) if raw else None


# ---------------------------------------------------------------------------
# edge order

def edge_order(g: LabeledGraph, seed: int | tuple[int, int] | None = None) -> list[int]:
    """Static insertion order: BFS from the seed edge, preferring edges whose
    endpoints are both drawn, then endpoints with many drawn neighbours."""
    if g.m == 0:
        return []
    if not g.is_connected() or any(deg == 0 for deg in g.degrees()):
        raise InvalidInput("edge_order needs a connected graph without isolated vertices")
    if seed is None:
        seed = default_seed(g)
    elif isinstance(seed, tuple):
        seed = g.edge_index()[seed]
    adj_e: list[list[int]] = [[] for _ in range(g.n)]
    for i, e in enumerate(g.edges):
        adj_e[e.u].append(i)
        adj_e[e.v].append(i)
    placed = [False] * g.n
    order = [seed]
    used = {seed}
    placed[g.edges[seed].u] = placed[g.edges[seed].v] = True
    frontier = deque([g.edges[seed].u, g.edges[seed].v])
    while len(order) < g.m:
        closing = [i for i in range(g.m) if i not in used and placed[g.edges[i].u] and placed[g.edges[i].v]]
        if closing:
            for i in closing:
                order.append(i)
                used.add(i)
            continue
        # open the next vertex in BFS order
        while frontier:
            x = frontier[0]
            cand = [i for i in adj_e[x] if i not in used]
            if cand:
                break
            frontier.popleft()
        x = frontier[0]
        best = None
        for i in adj_e[x]:
            if i in used:
                continue
            e = g.edges[i]
            y = e.v if e.u == x else e.u
            score = sum(1 for j in adj_e[y] if placed[g.edges[j].u if g.edges[j].v == y else g.edges[j].v])
            if best is None or score > best[0]:
                best = (score, i, y)
        _, i, y = best
        order.append(i)
        used.add(i)
        placed[y] = True
        frontier.append(y)
    return order


def default_seed(g: LabeledGraph) -> int:
    unc = [i for i, e in enumerate(g.edges) if e.uncrossable]
    pool = unc or range(g.m)
    return min(pool, key=lambda i: (min(g.edges[i].u, g.edges[i].v), max(g.edges[i].u, g.edges[i].v)))


# ---------------------------------------------------------------------------
# insertion plans

def _choose_source(d: Drawing, e: int) -> tuple[int, int]:
    u, v = d.eu[e], d.ev[e]
    pu, pv = d.vnode[u] >= 0, d.vnode[v] >= 0
    if pu and pv:
        du = len(d.rotation(d.vnode[u]))
        dv = len(d.rotation(d.vnode[v]))
        return (u, v) if du <= dv else (v, u)
    if pu:
        return u, v
    if pv:
        return v, u
    raise InvalidInput(f"edge {u}-{v} has no drawn endpoint")


class _Stop(Exception):
    pass


def explore_routes(d: Drawing, e: int, src: int, visit: Callable, ends: tuple = (), maxc: int | None = None,
                   exclude_adjacent: bool = True) -> None:
    """Depth-first exploration of every way to route edge ``e`` out of ``src``.

    ``visit(before, start, crossed)`` is called for every reachable state: the
    partial edge ends at the node of ``before`` in the corner in front of it,
    left ``src`` in front of ``start`` and crossed the darts ``crossed``.  The
    drawing is split and restored on the fly (also if ``visit`` raises), so a
    face that the route re-enters is seen with the partial edge already in it.
    """
    xs = d.vnode[src]
    if maxc is None:
        maxc = d.budget(e)
    forward = 0 if src == d.eu[e] else 1
    twin, nxt, dedge = d.twin, d.nxt, d.dedge
    eu, ev, ecross, efake, k = d.eu, d.ev, d.ecross, d.efake, d.k
    zone = d.zone

    def dfs(cur, before, start, crossed, cedges):
        visit(before, start, crossed)
        if len(crossed) >= maxc:
            return
        z = before
        w = [z]
        y = nxt[twin[z]]
        while y != z:
            w.append(y)
            y = nxt[twin[y]]
        for z in w:
            f = dedge[z]
            if f in cedges or k - ecross[f] - efake[f] <= 0:
                continue
            if exclude_adjacent and (eu[f] in ends or ev[f] in ends):
                continue
            c = dcel.split_segment(d, z, e)
            d1 = twin[z]
            a = d.new_pair(e, cur, c, forward, zone[before], zone[before])
            d.attach(a, before)
            d.attach(a + 1, d1 + 1)
            ecross[e] += 1
            try:
                dfs(c, d1, start, crossed + [z], cedges | {f})
            finally:
                ecross[e] -= 1
                d.detach(a + 1)
                d.detach(a)
                for arr in (d.org, d.twin, d.nxt, d.prv, d.dedge, d.ddir, d.zone):
                    del arr[a:]
                dcel.unsplit_segment(d, z)

    for s in d.rotation(xs):
        dfs(xs, s, s, [], frozenset())


def _route_search(d: Drawing, e: int, emit: Callable, allowed_zones=None) -> None:
    src, tgt = _choose_source(d, e)
    xt = d.vnode[tgt]
    org, zone = d.org, d.zone
    twin, nxt = d.twin, d.nxt

    def visit(before, start, crossed):
        if xt < 0:
            if allowed_zones is None or zone[before] in allowed_zones:
                emit(InsertionPlan(src, start, tuple(crossed), -1))
            return
        z = before
        while True:
            if org[z] == xt:
                emit(InsertionPlan(src, start, tuple(crossed), z))
            z = nxt[twin[z]]
            if z == before:
                break

    explore_routes(d, e, src, visit, ends=(src, tgt))


def insertion_plans(d: Drawing, e: int | tuple[int, int], k: int | None = None,
                    allowed_zones=None) -> list[InsertionPlan]:
    """All legal ways to draw edge ``e`` into ``d`` (``d`` is left unchanged)."""
    if isinstance(e, tuple):
        e = d.edge_id(*e)
    if k is not None and k != d.k:
        raise InvalidInput("drawing was built for a different k")
    out: list[InsertionPlan] = []
    _route_search(d, e, out.append, allowed_zones)
    return out


def count_plans(d: Drawing, e: int, cap: int, allowed_zones=None) -> int:
    """Number of plans for ``e``, stopping early once it exceeds ``cap``."""
    n = 0

    def emit(_):
        nonlocal n
        n += 1
        if n > cap:
            raise _Stop

    try:
        _route_search(d, e, emit, allowed_zones)
    except _Stop:
        pass
    return n


def apply_plan(d: Drawing, e: int, plan: InsertionPlan) -> None:
    """Draw edge ``e`` along ``plan`` (mutates ``d``)."""
    src = plan.source
    tgt = d.ev[e] if src == d.eu[e] else d.eu[e]
    forward = 0 if src == d.eu[e] else 1
    cur = d.vnode[src]
    before = plan.start
    for z in plan.crossings:
        c = dcel.split_segment(d, z, e)
        d1 = d.twin[z]
        zc = d.zone[before]
        a = d.new_pair(e, cur, c, forward, zc, zc)
        d.attach(a, before)
        d.attach(a + 1, d1 + 1)
        d.ecross[e] += 1
        cur, before = c, d1
    zc = d.zone[before]
    if plan.landing >= 0:
        xt = d.org[plan.landing]
        a = d.new_pair(e, cur, xt, forward, zc, zc)
        d.attach(a, before)
        d.attach(a + 1, plan.landing)
    else:
        xt = d.new_node(REAL, tgt)
        a = d.new_pair(e, cur, xt, forward, zc, zc)
        d.attach(a, before)
        d.attach(a + 1, None)


# ---------------------------------------------------------------------------
# search

@dataclass
class SearchOptions:
    k: int = 2
    budget: int | None = None
    max_crossings: int | None = None  # prune partial drawings above this total
    allowed_zones: frozenset | None = None
    prune: Callable[[Drawing, int], bool] | None = None  # (partial, edges left) -> True = no completion


def _search(d: Drawing, remaining: list[int], opts: SearchOptions, stats: SearchStats,
            sink: Callable[[Drawing], bool], total_cross: int) -> bool:
    """Returns True when the sink asked to stop."""
    stats.nodes += 1
    if opts.budget is not None and stats.nodes > opts.budget:
        raise BudgetExceeded(f"node budget {opts.budget} exhausted")
    if opts.prune is not None and opts.prune(d, len(remaining)):
        return False
    if not remaining:
        return sink(d)
    vnode = d.vnode
    eu, ev = d.eu, d.ev
    best_e, best_n = -1, None
    for e in remaining:
        if vnode[eu[e]] >= 0 and vnode[ev[e]] >= 0:
            cap = best_n - 1 if best_n is not None else 1 << 30
            n = count_plans(d, e, cap, opts.allowed_zones)
            if n == 0:
                return False
            if best_n is None or n < best_n:
                best_e, best_n = e, n
                if n == 1:
                    break
    if best_e < 0:
        for e in remaining:
            if vnode[eu[e]] >= 0 or vnode[ev[e]] >= 0:
                best_e = e
                break
        else:
            raise InvalidInput("remaining edges are disconnected from the drawing")
    plans = insertion_plans(d, best_e, allowed_zones=opts.allowed_zones)
    rest = [e for e in remaining if e != best_e]
    for p in plans:
        tc = total_cross + len(p.crossings)
        if opts.max_crossings is not None and tc > opts.max_crossings:
            continue
        child = d.copy()
        apply_plan(child, best_e, p)
        if _search(child, rest, opts, stats, sink, tc):
            return True
    return False


def _start(g: LabeledGraph, k: int) -> tuple[Drawing, list[int]]:
    if k not in (0, 1, 2, 3):
        raise InvalidInput("k must be in 0..3")
    if not g.is_connected() or any(x == 0 for x in g.degrees()):
        raise InvalidInput("graph must be connected without isolated vertices")
    order = edge_order(g)
    d = dcel.init_drawing(g, order[0], k)
    return d, order[1:]


def iter_drawings(g: LabeledGraph, k: int = 2, budget: int | None = None,
                  max_crossings: int | None = None, stats: SearchStats | None = None) -> Iterator[Drawing]:
    """Generate every simple k-plane drawing of ``g`` (labeled, oriented)."""
    out: list[Drawing] = []
    drawings = enumerate_drawings(g, k, budget=budget, max_crossings=max_crossings, stats=stats)
    out.extend(drawings)
    return iter(out)


def enumerate_drawings(g: LabeledGraph, k: int = 2, dedup: str = "labeled", fixed_cycle=None,
                       parity: bool = True, budget: int | None = None, max_crossings: int | None = None,
                       stats: SearchStats | None = None, limit: int | None = None) -> list[Drawing]:
    """All simple k-plane drawings of ``g`` on the sphere, one per class.

    ``dedup="labeled"`` keeps drawings distinct up to orientation-preserving
    homeomorphisms fixing every label; ``dedup="canonical"`` quotients by graph
    automorphisms and mirroring (restricted to rotations of ``fixed_cycle`` when
    given).
    """
    stats = stats if stats is not None else SearchStats()
    if budget is None:
        budget = default_budget()
    t0 = time.perf_counter()
    if g.m == 0:
        stats.seconds = 0.0
        return []
    d, rest = _start(g, k)
    seen: set = set()
    found: list[Drawing] = []

    def sink(dr: Drawing) -> bool:
        key = dcel.labeled_key(dr) if dedup == "labeled" else dcel.canonical_form(dr, fixed_cycle, parity)
        if key in seen:
            stats.duplicates += 1
            return False
        seen.add(key)
        found.append(dr)
        stats.drawings += 1
        return limit is not None and len(found) >= limit

    opts = SearchOptions(k=k, budget=budget, max_crossings=max_crossings)
    try:
        _search(d, rest, opts, stats, sink, 0)
    except BudgetExceeded:
        stats.complete = False
        raise
    finally:
        stats.seconds = time.perf_counter() - t0
    return found


def edge_count_bound(n: int, k: int) -> int | None:
    """Maximum edge count of a k-planar graph on n >= 3 vertices (k <= 2)."""
    if n < 3:
        return None
    return {0: 3 * n - 6, 1: 4 * n - 8, 2: 5 * n - 10}.get(k)


def is_k_planar(g: LabeledGraph, k: int = 2, budget: int | None = None,
                stats: SearchStats | None = None) -> bool:
    """True iff ``g`` has a simple k-plane drawing.

    Raises :class:`BudgetExceeded` if the node cap is hit first, so a capped
    run never answers ``False`` by accident.
    """
    stats = stats if stats is not None else SearchStats()
    bound = edge_count_bound(g.n, k)
    if bound is not None and g.m > bound:
        return False
    if g.m == 0:
        return True
    if budget is None:
        budget = default_budget()
    if not g.is_connected():
        comps = _components(g)
        return all(is_k_planar(c, k, budget, stats) for c in comps)
    t0 = time.perf_counter()
    d, rest = _start(g, k)
    hit = []

    def sink(dr):
        hit.append(dr)
        return True

    try:
        _search(d, rest, SearchOptions(k=k, budget=budget), stats, sink, 0)
    except BudgetExceeded:
        stats.complete = False
        raise
    finally:
        stats.seconds = time.perf_counter() - t0
    stats.drawings = len(hit)
    return bool(hit)


def find_drawing(g: LabeledGraph, k: int = 2, budget: int | None = None) -> Drawing | None:
    found = enumerate_drawings(g, k, budget=budget, limit=1)
    return found[0] if found else None


def _components(g: LabeledGraph) -> list[LabeledGraph]:
    adj = g.adjacency()
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s] or not adj[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comp.sort()
        ren = {x: i for i, x in enumerate(comp)}
        edges = [e._replace(u=ren[e.u], v=ren[e.v]) for e in g.edges if e.u in ren]
        comps.append(LabeledGraph([g.labels[x] for x in comp], edges))
    return comps


def drawing_is_simple(d: Drawing) -> bool:
    errs = dcel.validate(d)
    return not any(s.startswith("simple") for s in errs)
