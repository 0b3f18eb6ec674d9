"""Lower-bound audit of concrete 2-plane drawings.

Runs the degree-counting argument on actual inputs: admissible drawings,
vertex types, which halfedges low-degree vertices claim, the greedy resolution
of contested claims, and the degree inequalities behind the 2n edge bound.

A halfedge is written ``(a, b)``: the incidence of edge ``ab`` at ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import dcel
from .dcel import CROSSING, REAL, Drawing
from .enumeration import BudgetExceeded, enumerate_drawings, is_k_planar
from .graphs import InvalidInput, LabeledGraph

HERMIT = "Hermit"
T3_1 = "T3_1"
T3_2 = "T3_2"
T3_3_HERMIT = "T3_3Hermit"
T3_3_MINGLER = "T3_3Mingler"
T3_0 = "T3_0"  # degree three, every edge crossed; impossible in admissible drawings
T4H = "T4H"
PLAIN4 = "Plain4"
HIGH = "High"
DEGENERATE = "Degenerate"  # degree below two

T3_KINDS = (T3_0, T3_1, T3_2, T3_3_HERMIT, T3_3_MINGLER)
LOW_KINDS = (HERMIT,) + T3_KINDS


# ---------------------------------------------------------------------------
# admissible drawings

def admissible_drawings(g: LabeledGraph, budget: int | None = None) -> list[Drawing]:
    """Crossing-minimal simple 2-plane drawings of ``g`` that, among those,
    have the fewest doubly crossed edges.

    Crossings are deepened one at a time, so only drawings with the minimum
    total are ever enumerated.  Raises :class:`BudgetExceeded` when the node
    cap is hit and :class:`InvalidInput` if ``g`` is not 2-planar.
    """
    if g.m == 0:
        return []
    if not is_k_planar(g, 2, budget):
        raise InvalidInput("graph has no simple 2-plane drawing")
    cap = g.m  # 2-plane: at most m*k/2 crossings
    for c in range(cap + 1):
        found = enumerate_drawings(g, 2, budget=budget, max_crossings=c)
        found = [d for d in found if d.total_crossings() == c]
        if found:
            best = min(doubly_crossed(d) for d in found)
            return [d for d in found if doubly_crossed(d) == best]
    raise InvalidInput("graph has no simple 2-plane drawing")


def doubly_crossed(d: Drawing) -> int:
    return sum(1 for e in range(len(d.eu)) if not d.epseudo[e] and d.ecross[e] == 2)


# ---------------------------------------------------------------------------
# graph view of a drawing

class _View:
    """Adjacency, degrees and edge lookup of the graph underlying a drawing."""

    def __init__(self, d: Drawing):
        self.d = d
        self.eid: dict[frozenset, int] = {}
        self.adj: dict[int, set[int]] = {v: set() for v in range(d.n_graph)}
        for e in range(len(d.eu)):
            if d.epseudo[e]:
                continue
            a, b = d.eu[e], d.ev[e]
            self.eid[frozenset((a, b))] = e
            self.adj[a].add(b)
            self.adj[b].add(a)
        self.deg = {v: len(s) for v, s in self.adj.items()}

    def edge(self, a: int, b: int) -> int:
        return self.eid.get(frozenset((a, b)), -1)

    def crossings(self, a: int, b: int) -> int:
        e = self.edge(a, b)
        return -1 if e < 0 else self.d.ecross[e]

    def dart(self, a: int, b: int, d: Drawing | None = None) -> int:
        """Dart leaving ``a`` along edge ``ab``."""
        d = d or self.d
        e = self.edge(a, b)
        for z in d.rotation(d.vnode[a]):
            if d.dedge[z] == e:
                return z
        raise InvalidInput(f"edge {a}-{b} is not drawn at {a}")


def _other(d: Drawing, e: int, v: int) -> int:
    return d.ev[e] if d.eu[e] == v else d.eu[e]


# ---------------------------------------------------------------------------
# classification

@dataclass
class VertexClass:
    vertex: int
    kind: str
    degree: int
    crossed: dict[int, int] = field(default_factory=dict)  # neighbor -> crossings of the edge
    host: tuple[int, int] | None = None  # hermit base, or the hermit's other neighbor for T4-H
    partner: int | None = None  # other vertex of an inefficient hermit; hermit neighbor of T4-H
    claims: list[tuple[int, int]] = field(default_factory=list)

    @property
    def low(self) -> bool:
        return self.kind in LOW_KINDS


def classify_vertex(d: Drawing, v: int, view: _View | None = None) -> VertexClass:
    view = view or _View(d)
    nb = sorted(view.adj[v])
    deg = len(nb)
    crossed = {w: view.crossings(v, w) for w in nb}
    if deg < 2:
        return VertexClass(v, DEGENERATE, deg, crossed)
    if deg == 2:
        x, y = nb
        return VertexClass(v, HERMIT, deg, crossed, host=(x, y))
    if deg == 3:
        unc = sum(1 for w in nb if crossed[w] == 0)
        if unc == 3:
            for w in nb:
                if view.deg[w] == 3 and all(c == 0 for c in (view.crossings(w, y) for y in view.adj[w])):
                    return VertexClass(v, T3_3_HERMIT, deg, crossed, partner=w)
            return VertexClass(v, T3_3_MINGLER, deg, crossed)
        return VertexClass(v, (T3_0, T3_1, T3_2)[unc], deg, crossed)
    if deg == 4:
        hermits = [w for w in nb if view.deg[w] == 2]
        if hermits:
            h = hermits[0]
            other = next(iter(view.adj[h] - {v}))
            return VertexClass(v, T4H, deg, crossed, host=(v, other), partner=h)
        return VertexClass(v, PLAIN4, deg, crossed)
    return VertexClass(v, HIGH, deg, crossed)


def classify_all(d: Drawing) -> dict[int, VertexClass]:
    view = _View(d)
    return {v: classify_vertex(d, v, view) for v in d.placed_vertices()}


# ---------------------------------------------------------------------------
# local geometry helpers

def _without_vertex(d: Drawing, h: int) -> Drawing:
    """Copy of ``d`` with vertex ``h`` and its (uncrossed) edges removed."""
    c = d.copy()
    for z in c.rotation(c.vnode[h]):
        if c.kind[c.org[c.twin[z]]] != REAL:
            raise InvalidInput("vertex has a crossed edge")
        c.detach(c.twin[z])
    for z in c.rotation(c.vnode[h]):
        c.detach(z)
    return c


def _flank_triangles(d: Drawing, view: _View, u: int, v: int):
    """Inspect the two faces beside the uncrossed edge ``uv``.

    Returns ``(ok, halfedges)``: ``ok`` says both faces are triangles closed by
    an edge at ``u`` and a doubly crossed edge at ``v``; ``halfedges`` are the
    halfedges at ``v`` next to ``uv`` in the rotation at ``v``.
    """
    z = view.dart(u, v, d)
    t = d.twin[z]
    ok = True
    for start in (z, t):
        walk = d.face_walk(start)
        if len(walk) != 3:
            ok = False
            continue
        for y in walk[1:]:
            e = d.dedge[y]
            at_u = u in (d.eu[e], d.ev[e])
            at_v = v in (d.eu[e], d.ev[e])
            if not (at_u or (at_v and d.ecross[e] == 2)):
                ok = False
    halves = []
    for y in (d.nxt[t], d.prv[t]):
        e = d.dedge[y]
        halves.append((_other(d, e, v), v))
    return ok, sorted(set(halves))


def _crossing_partner(d: Drawing, view: _View, u: int, v: int):
    """For the singly crossed edge ``uv``: the crossing edge and the crossing node."""
    z = view.dart(u, v)
    x = d.org[d.twin[z]]
    if d.kind[x] != CROSSING:
        return -1, -1
    a, b = d.ncross[x]
    e = view.edge(u, v)
    return (b if a == e else a), x


def _uncrossed_to(d: Drawing, f: int, node: int, w: int) -> bool:
    """Whether the part of edge ``f`` between its endpoint ``w`` and crossing ``node`` is uncrossed."""
    for z in d.rotation(d.vnode[w]):
        if d.dedge[z] == f:
            return d.org[d.twin[z]] == node
    return False


# ---------------------------------------------------------------------------
# structural predicates

PREDICATES = {
    "a": "vertices on a common face are adjacent by an uncrossed edge",
    "b": "every vertex has an uncrossed incident edge",
    "c": "the graph is 2-connected",
    "d": "hermit triangle is uncrossed",
    "e": "every edge hosts at most one hermit",
    "f": "hermit neighbors have degree at least four",
    "g": "a degree-i vertex has at most floor(i/3) hermit neighbors",
    "h": "T4-H edges and degrees",
    "i": "T3-1 flank triangles and neighbor degree at least five",
    "j": "T3-2 crossing structure",
    "k": "T3-2 neighbor degrees",
    "l": "inefficient hermit base is uncrossed with degrees at least five",
    "m": "mingler neighbor degrees",
}


@dataclass
class PredicateResult:
    key: str
    passed: bool
    applicable: int = 0
    witnesses: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"predicate": self.key, "name": PREDICATES[self.key], "passed": self.passed,
                "applicable": self.applicable, "witnesses": [list(map(_jsonable, w)) if isinstance(w, tuple)
                                                             else _jsonable(w) for w in self.witnesses[:10]]}


def _jsonable(x):
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(y) for y in sorted(x, key=repr)] if isinstance(x, (set, frozenset)) else \
            [_jsonable(y) for y in x]
    return x


@dataclass
class StructuralReport:
    results: dict[str, PredicateResult]
    admissible: bool | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> list[str]:
        return [k for k, r in self.results.items() if not r.passed]

    def as_dict(self) -> dict:
        return {"admissible": self.admissible, "passed": self.passed,
                "predicates": [self.results[k].as_dict() for k in sorted(self.results)]}


def _biconnected(view: _View, vertices: list[int]) -> bool:
    if len(vertices) < 3:
        return False

    def connected(skip: int) -> bool:
        rest = [v for v in vertices if v != skip]
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            x = stack.pop()
            for y in view.adj[x]:
                if y != skip and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(rest)

    return connected(-1) and all(connected(v) for v in vertices)


def structural_report(d: Drawing, admissible: bool | None = None) -> StructuralReport:
    """Check the structural consequences of admissibility and maximality.

    Every predicate is evaluated; on a drawing that is not admissible (or a
    graph that is not maximal) failures are expected and only informative.
    """
    view = _View(d)
    cls = classify_all(d)
    verts = sorted(cls)
    deg = view.deg
    res = {k: PredicateResult(k, True) for k in PREDICATES}

    def fail(key, w):
        res[key].passed = False
        res[key].witnesses.append(w)

    # (a)
    fid, walks = dcel.face_index(d)
    for w in walks:
        on = sorted({d.nlabel[d.org[z]] for z in w if d.kind[d.org[z]] == REAL})
        for a, b in combinations(on, 2):
            res["a"].applicable += 1
            if view.crossings(a, b) != 0:
                fail("a", (a, b))
    # (b)
    for v in verts:
        res["b"].applicable += 1
        if not any(c == 0 for c in cls[v].crossed.values()):
            fail("b", v)
    # (c)
    res["c"].applicable = 1
    if not _biconnected(view, verts):
        fail("c", "graph")
    hermits = [v for v in verts if cls[v].kind == HERMIT]
    hosted: dict[frozenset, list[int]] = {}
    for h in hermits:
        x, y = cls[h].host
        res["d"].applicable += 1
        if view.edge(x, y) < 0 or any(view.crossings(*p) != 0 for p in ((h, x), (h, y), (x, y))):
            fail("d", h)
        hosted.setdefault(frozenset((x, y)), []).append(h)
        res["f"].applicable += 1
        if deg[x] < 4 or deg[y] < 4:
            fail("f", h)
    for base, hs in hosted.items():
        res["e"].applicable += 1
        if len(hs) > 1:
            fail("e", tuple(sorted(base)))
    for v in verts:
        nh = sum(1 for w in view.adj[v] if deg[w] == 2)
        if nh:
            res["g"].applicable += 1
            if nh > deg[v] // 3:
                fail("g", v)
    for v in verts:
        c = cls[v]
        if c.kind == T4H:
            res["h"].applicable += 1
            h = c.partner
            hv = c.host[1]
            others = [w for w in view.adj[v] if w not in (h, hv)]
            ok = all(view.crossings(v, w) == 2 for w in others) and deg[hv] >= 6
            if deg[hv] == 6 and sum(1 for w in view.adj[hv] if deg[w] == 2) != 1:
                ok = False
            if ok and view.crossings(h, v) == 0 and view.crossings(h, hv) == 0 and view.crossings(v, hv) == 0:
                tri, _ = _flank_triangles(_without_vertex(d, h), view, v, hv)
                ok = tri
            elif ok:
                ok = False
            if not ok:
                fail("h", v)
        elif c.kind == T3_1:
            res["i"].applicable += 1
            w = next(x for x, k in c.crossed.items() if k == 0)
            tri, _ = _flank_triangles(d, view, v, w)
            if not tri or deg[w] < 5:
                fail("i", v)
        elif c.kind == T3_2:
            res["j"].applicable += 1
            res["k"].applicable += 1
            info = _t32_info(d, view, v)
            if info is None:
                fail("j", v)
                fail("k", v)
                continue
            vv, w, b, x, f, node = info
            if d.ecross[view.edge(v, vv)] != 1 or d.ecross[f] != 2 or not _uncrossed_to(d, f, node, w):
                fail("j", v)
            if deg[w] < 5 or min(deg[vv], deg[x]) < 4:
                fail("k", v)
        elif c.kind == T3_3_HERMIT:
            res["l"].applicable += 1
            z2 = c.partner
            common = sorted((view.adj[v] & view.adj[z2]) - {v, z2})
            if len(common) != 2 or cls[z2].kind != T3_3_HERMIT:
                fail("l", v)
                continue
            x, y = common
            if view.crossings(x, y) != 0 or deg[x] < 5 or deg[y] < 5:
                fail("l", v)
        elif c.kind == T3_3_MINGLER:
            res["m"].applicable += 1
            ds = sorted((deg[w] for w in view.adj[v]), reverse=True)
            if min(ds) < 4 or not (ds[0] >= 6 or ds[1] >= 5):
                fail("m", v)
    return StructuralReport(res, admissible)


def _t32_info(d: Drawing, view: _View, u: int):
    """Roles around a T3-2 vertex ``u``: ``(v, w, b, x, f, node)`` where ``uv`` is
    the crossed edge, ``f = wb`` crosses it at ``node`` and ``x`` is the third
    neighbor.  None if the crossing edge is not incident to a neighbor of ``u``."""
    nb = sorted(view.adj[u])
    v = next(w for w in nb if view.crossings(u, w) > 0)
    f, node = _crossing_partner(d, view, u, v)
    if f < 0:
        return None
    cands = [w for w in (d.eu[f], d.ev[f]) if w in nb and w != v]
    if not cands:
        return None
    # prefer the endpoint whose part up to the crossing is uncrossed
    cands.sort(key=lambda w: (not _uncrossed_to(d, f, node, w), w))
    w = cands[0]
    b = _other(d, f, w)
    x = next(y for y in nb if y not in (v, w))
    return v, w, b, x, f, node


# ---------------------------------------------------------------------------
# claims

RULES = ("C1", "C2", "C3", "T3-2", "T3-3")


@dataclass
class ClaimLedger:
    """Claims and assessments of halfedges.

    ``claims`` maps a halfedge to ``(claimant, rule)``; a second claim on the
    same halfedge is recorded in ``conflicts`` and never overwrites the first.
    ``options`` lists, for each vertex still to choose, what it may claim:
    single halfedges for T3-2 vertices, ``center -> triple`` for minglers.
    """
    degrees: dict[int, int]
    kinds: dict[int, str] = field(default_factory=dict)
    claims: dict[tuple[int, int], tuple[int, str]] = field(default_factory=dict)
    conflicts: list[tuple] = field(default_factory=list)
    assessed: dict[int, set] = field(default_factory=dict)
    options: dict[int, object] = field(default_factory=dict)
    quota: dict[int, dict[int, int]] = field(default_factory=dict)  # vertex -> center -> halfedges needed
    resolved: set = field(default_factory=set)
    unresolved: list[int] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    trace: list[tuple] = field(default_factory=list)

    def claim(self, h: tuple[int, int], who: int, rule: str) -> None:
        if rule not in RULES:
            raise InvalidInput(f"unknown rule {rule}")
        cur = self.claims.get(h)
        if cur is not None:
            if cur[0] != who:
                self.conflicts.append((h, cur[0], who))
            return
        self.claims[h] = (who, rule)

    def free(self, h) -> bool:
        return h not in self.claims

    def claimed_by(self, who: int) -> list[tuple[int, int]]:
        return sorted(h for h, (c, _) in self.claims.items() if c == who)

    def assessors(self, h, among=None) -> list[int]:
        out = [u for u, hs in self.assessed.items() if h in hs and (among is None or u in among)]
        return sorted(out)

    def edge_assessors(self) -> dict[frozenset, set[int]]:
        out: dict[frozenset, set[int]] = {}
        for u, hs in self.assessed.items():
            for a, b in hs:
                out.setdefault(frozenset((a, b)), set()).add(u)
        return out

    # -- checks ------------------------------------------------------------

    def doubly_claimed(self) -> list[tuple]:
        return list(self.conflicts)

    def quota_failures(self) -> list[int]:
        bad = []
        for u, need in self.quota.items():
            mine = self.claimed_by(u)
            if not need:
                # needs three halfedges at one (any) neighbor
                centers = {}
                for a, b in mine:
                    centers[b] = centers.get(b, 0) + 1
                if not centers or max(centers.values()) < 3:
                    bad.append(u)
                continue
            for center, count in need.items():
                if sum(1 for _, b in mine if b == center) < count:
                    bad.append(u)
                    break
        return sorted(set(bad))

    def over_assessed_edges(self) -> list[tuple]:
        return sorted(tuple(sorted(e)) for e, who in self.edge_assessors().items() if len(who) > 2)

    def degree_five_violations(self) -> list[int]:
        by_center: dict[int, set[int]] = {}
        for (a, b), (who, _) in self.claims.items():
            if self.kinds.get(who) in LOW_KINDS:
                by_center.setdefault(b, set()).add(who)
        return sorted(v for v, who in by_center.items() if self.degrees.get(v) == 5 and len(who) > 1)

    def as_dict(self) -> dict:
        return {
            "claims": [[a, b, who, rule] for (a, b), (who, rule) in sorted(self.claims.items())],
            "conflicts": [[list(h), x, y] for h, x, y in self.conflicts],
            "assessed": {str(u): sorted(map(list, hs)) for u, hs in sorted(self.assessed.items())},
            "unresolved": self.unresolved,
            "quota_failures": self.quota_failures(),
            "over_assessed_edges": [list(e) for e in self.over_assessed_edges()],
            "degree_five_violations": self.degree_five_violations(),
            "violations": self.violations,
        }


def peripheral(adj: dict[int, set[int]], deg: dict[int, int], u: int) -> set[tuple[int, int]]:
    """Halfedges ``(a, b)`` with ``a, b`` neighbors of ``u``, ``ab`` an edge,
    ``deg(b) >= 5`` and ``deg(a) >= 4``."""
    out = set()
    for a in adj[u]:
        for b in adj[u]:
            if a != b and b in adj[a] and deg[b] >= 5 and deg[a] >= 4:
                out.add((a, b))
    return out


def _mingler_options(adj, deg, u, assessed) -> dict[int, tuple]:
    """center -> (own halfedge, the two peripheral halfedges of the K4 at center)."""
    out = {}
    nb = sorted(adj[u])
    for b in nb:
        rest = [a for a in nb if a != b]
        pair = tuple((a, b) for a in rest)
        if deg[b] >= 5 and all(h in assessed for h in pair):
            out[b] = ((u, b),) + pair
    return out


def assessments(d: Drawing, classes: dict[int, VertexClass] | None = None) -> ClaimLedger:
    """Fixed claims of hermits, T3-1, T4-H vertices and T3-3 hermits, and the
    assessment sets of T3-2 vertices and T3-3 minglers."""
    view = _View(d)
    classes = classes or classify_all(d)
    deg = view.deg
    adj = view.adj
    led = ClaimLedger(degrees=dict(deg), kinds={v: c.kind for v, c in classes.items()})
    for v in sorted(classes):
        c = classes[v]
        if c.kind == HERMIT:
            x, y = c.host
            need = {}
            for hv, other in ((x, y), (y, x)):
                if deg[hv] >= 5:
                    led.claim((v, hv), v, "C1")
                    led.claim((other, hv), v, "C1")
                    need[hv] = 2
            led.quota[v] = need
            if not need:
                led.violations.append(f"hermit {v} has no high-degree neighbor")
        elif c.kind == T4H:
            h = c.partner
            hv = c.host[1]
            try:
                _, halves = _flank_triangles(_without_vertex(d, h), view, v, hv)
            except InvalidInput:
                led.violations.append(f"T4-H {v}: hermit edges are crossed")
                led.unresolved.append(v)
                continue
            for half in halves:
                led.claim(half, v, "C3")
            led.quota[v] = {hv: 2}
        elif c.kind == T3_1:
            w = next(x for x, k in c.crossed.items() if k == 0)
            led.claim((v, w), v, "C2")
            _, halves = _flank_triangles(d, view, v, w)
            for half in halves:
                led.claim(half, v, "C2")
            led.quota[v] = {w: 3}
            if deg[w] < 5:
                led.violations.append(f"T3-1 {v}: neighbor {w} is not high-degree")
        elif c.kind == T3_2:
            info = _t32_info(d, view, v)
            led.quota[v] = {}
            if info is None:
                led.violations.append(f"T3-2 {v}: crossing edge not incident to a neighbor")
                led.unresolved.append(v)
                continue
            vv, w, b, x, f, node = info
            led.claim((v, w), v, "T3-2")
            led.claim((b, w), v, "T3-2")
            opts = sorted(h for h in ((vv, w), (x, w)) if view.edge(*h) >= 0 and deg[h[1]] >= 5 and deg[h[0]] >= 4)
            led.assessed[v] = set(opts)
            led.options[v] = opts
            led.quota[v] = {w: 3}
        elif c.kind == T3_3_HERMIT:
            z2 = c.partner
            led.assessed[v] = peripheral(adj, deg, v)
            common = sorted((adj[v] & adj[z2]) - {v, z2})
            led.quota[v] = {}
            if len(common) != 2:
                led.violations.append(f"inefficient hermit {v},{z2} lacks two common neighbors")
                led.unresolved.append(v)
                continue
            x, y = common
            center = x if v < z2 else y
            across = y if center == x else x
            for a in (v, z2, across):
                led.claim((a, center), v, "T3-3")
            led.quota[v] = {center: 3}
        elif c.kind == T3_3_MINGLER:
            led.assessed[v] = peripheral(adj, deg, v)
            led.options[v] = _mingler_options(adj, deg, v, led.assessed[v])
            led.quota[v] = {}
        elif c.kind == T3_0:
            led.violations.append(f"degree-3 vertex {v} has no uncrossed edge")
            led.quota[v] = {}
            led.unresolved.append(v)
    for v in sorted(classes):
        if classes[v].kind in (HERMIT, T3_1, T4H, T3_3_HERMIT) and v not in led.unresolved:
            led.resolved.add(v)
    return led


def synthetic_ledger(adj: dict[int, set[int]], kinds: dict[int, str],
                     degrees: dict[int, int] | None = None) -> ClaimLedger:
    """Ledger with T3-2 vertices and T3-3 minglers only, built from adjacency.

    For a T3-2 vertex ``u`` the entry ``kinds[u] = ("T3_2", w, b, v, x)``
    names the roles directly; minglers are given as ``"T3_3Mingler"``.
    ``degrees`` overrides vertex degrees (high-degree vertices may have
    neighbors outside the fixture).
    """
    deg = {v: len(s) for v, s in adj.items()}
    deg.update(degrees or {})
    led = ClaimLedger(degrees=deg)
    for u in sorted(kinds):
        k = kinds[u]
        if isinstance(k, tuple) and k[0] == T3_2:
            _, w, b, v, x = k
            led.kinds[u] = T3_2
            led.claim((u, w), u, "T3-2")
            led.claim((b, w), u, "T3-2")
            opts = sorted(h for h in ((v, w), (x, w)) if h[0] in adj[h[1]] and deg[h[1]] >= 5 and deg[h[0]] >= 4)
            led.assessed[u] = set(opts)
            led.options[u] = opts
            led.quota[u] = {w: 3}
        elif k == T3_3_MINGLER:
            led.kinds[u] = k
            led.assessed[u] = peripheral(adj, deg, u)
            led.options[u] = _mingler_options(adj, deg, u, led.assessed[u])
            led.quota[u] = {}
        else:
            raise InvalidInput(f"unsupported synthetic kind {k!r}")
    return led


# ---------------------------------------------------------------------------
# resolution

def _take(led: ClaimLedger, u: int, halves, rule: str, step: str) -> list:
    for h in halves:
        led.claim(h, u, rule)
    led.resolved.add(u)
    led.trace.append((step, u, tuple(halves)))
    return list(halves)


def _choose(led: ClaimLedger, u: int, prefer=None):
    """Halfedges ``u`` claims from its options, or None if none is free."""
    opts = led.options.get(u)
    if led.kinds[u] == T3_2:
        free = [h for h in opts if led.free(h)]
        return [free[0]] if free else None
    order = sorted(opts)
    if prefer is not None and prefer in opts:
        order.remove(prefer)
        order.insert(0, prefer)
    for b in order:
        triple = opts[b]
        if all(led.free(h) for h in triple):
            return list(triple)
    return None


def _chain(led: ClaimLedger, start: list, pending: set, step: str) -> None:
    """Greedy selection: hand each freshly claimed contested halfedge's other
    assessor its remaining choice, and continue from what that one claims."""
    queue = list(start)
    while queue:
        h = queue.pop(0)
        for u2 in led.assessors(h, pending):
            if u2 in led.resolved:
                continue
            pending.discard(u2)
            # a mingler answers at the far end of the halfedge it lost
            got = _choose(led, u2, prefer=h[0])
            if got is None:
                led.unresolved.append(u2)
                led.trace.append((step + ":stuck", u2, h))
                continue
            rule = "T3-2" if led.kinds[u2] == T3_2 else "T3-3"
            queue.extend(_take(led, u2, got, rule, step))


def _live(led: ClaimLedger, pending: set) -> dict:
    """Halfedge -> unresolved assessors among ``pending``."""
    out: dict = {}
    for u in pending:
        for h in led.assessed.get(u, ()):
            out.setdefault(h, []).append(u)
    return out


def _is_tricky(led: ClaimLedger, u: int, live: dict, adj_of) -> bool:
    nb = sorted(adj_of(u))
    if len(nb) != 3:
        return False
    six = [(a, b) for a in nb for b in nb if a != b]
    if not all(h in led.assessed[u] for h in six):
        return False

    def contested(h):
        return any(x != u for x in live.get(h, ()))

    v, w, x = nb
    return all(contested(h) for h in ((v, w), (w, x), (x, v))) or \
        all(contested(h) for h in ((v, x), (x, w), (w, v)))


def resolve_claims(led: ClaimLedger) -> ClaimLedger:
    """Resolve T3-2 choices and T3-3 mingler triples in place.

    Order: greedy T3-2 chains, then tricky minglers around a common
    neighbor (even and odd cycles), then the easy minglers in reverse order
    of their removal.  Stuck vertices land in ``led.unresolved``.
    """
    over = led.over_assessed_edges()
    if over:
        led.violations.append(f"edges assessed by three or more vertices: {over}")
    nbrs = {u: {a for h in led.assessed[u] for a in h} for u in led.assessed}
    t32 = sorted(u for u, k in led.kinds.items() if k == T3_2 and u in led.options and u not in led.resolved)
    minglers = sorted(u for u, k in led.kinds.items() if k == T3_3_MINGLER and u not in led.resolved)
    pending = set(t32) | set(minglers)
    # greedy chains from every T3-2 vertex
    for u in t32:
        if u in led.resolved or u not in pending:
            continue
        pending.discard(u)
        got = _choose(led, u)
        if got is None:
            led.unresolved.append(u)
            continue
        _chain(led, _take(led, u, got, "T3-2", "t32"), pending, "t32")
    # T3-2 vertices left a single choice; their other assessment is withdrawn
    rest = {u for u in pending if led.kinds[u] == T3_3_MINGLER}
    easy_order: list[int] = []
    while rest:
        # peel easy minglers until only tricky ones remain
        while True:
            live = _live(led, rest)
            easy = sorted(u for u in rest if not _is_tricky(led, u, live, lambda x: nbrs[x]))
            if not easy:
                break
            for u in easy:
                rest.discard(u)
                easy_order.append(u)
        if not rest:
            break
        u = min(rest)
        cycle, center = _tricky_cycle(led, u, rest, nbrs)
        if cycle is None:
            # no closed cycle around any neighbor; fall back to a plain greedy claim
            rest.discard(u)
            got = _choose(led, u)
            if got is None:
                led.unresolved.append(u)
            else:
                _chain(led, _take(led, u, got, "T3-3", "tricky-fallback"), rest, "tricky-fallback")
            continue
        k = len(cycle)
        odd_last = k % 2 == 1
        for i, ui in enumerate(cycle, start=1):
            if i % 2 == 1 and not (odd_last and i == k):
                rest.discard(ui)
                triple = led.options[ui].get(center)
                if triple is None or not all(led.free(h) for h in triple):
                    led.unresolved.append(ui)
                    continue
                _take(led, ui, list(triple), "T3-3", "tricky-even" if not odd_last else "tricky-odd")
        if odd_last:
            uk = cycle[-1]
            rest.discard(uk)
            # x_k is shared with u_1, which now holds (x_k, center)
            shared = [a for a, b in led.claimed_by(cycle[0]) if b == center and (a, center) in led.assessed[uk]]
            xk = shared[0] if shared else None
            triple = led.options[uk].get(xk) if xk is not None else None
            if triple is None or not all(led.free(h) for h in triple):
                got = _choose(led, uk)
                if got is None:
                    led.unresolved.append(uk)
                    continue
                triple = got
            _chain(led, _take(led, uk, list(triple), "T3-3", "tricky-odd"), rest, "tricky-odd")
    for u in reversed(easy_order):
        if u in led.resolved:
            continue
        got = _choose(led, u)
        if got is None:
            led.unresolved.append(u)
            continue
        _take(led, u, got, "T3-3", "easy")
    led.unresolved = sorted(set(led.unresolved) - led.resolved)
    return led


def _tricky_cycle(led: ClaimLedger, u: int, rest: set, nbrs):
    """A circular sequence of tricky minglers around a common neighbor of ``u``,
    consecutive ones sharing an edge at that neighbor.  Returns
    ``(cycle, center)`` or ``(None, None)``."""
    for center in sorted(nbrs[u]):
        cycle = [u]
        prev_x = None
        cur = u
        ok = False
        while True:
            spokes = sorted(a for a in nbrs[cur] if a != center and (a, center) in led.assessed[cur])
            nxt_x = [a for a in spokes if a != prev_x]
            if not nxt_x:
                break
            x = nxt_x[0]
            others = [y for y in rest if y != cur and (x, center) in led.assessed[y] and center in nbrs[y]]
            if len(others) != 1:
                break
            nxt = others[0]
            if nxt == u:
                ok = len(cycle) >= 2
                break
            if nxt in cycle:
                break
            cycle.append(nxt)
            prev_x = x
            cur = nxt
        if ok:
            return cycle, center
    return None, None


# ---------------------------------------------------------------------------
# exhaustive assignment search (used to cross-check the greedy resolution)

def assignment_exists(led: ClaimLedger) -> bool:
    """Whether the open choices of ``led`` (as built, before resolution) admit
    a conflict-free assignment, by backtracking."""
    taken = set(led.claims)
    open_ = sorted(u for u in led.options if u not in led.resolved)

    def choices(u):
        o = led.options[u]
        if led.kinds[u] == T3_2:
            return [[h] for h in o]
        return [list(o[b]) for b in sorted(o)]

    def rec(i):
        if i == len(open_):
            return True
        for ch in choices(open_[i]):
            if all(h not in taken for h in ch):
                taken.update(ch)
                if rec(i + 1):
                    return True
                taken.difference_update(ch)
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# degree counting

@dataclass
class DegreeProfile:
    n: int
    m: int
    v: dict[int, int]  # degree -> count
    vh: dict[tuple[int, int], int]  # (degree, adjacent hermits) -> count

    def get(self, i: int) -> int:
        return self.v.get(i, 0)

    def h(self, i: int, j: int) -> int:
        return self.vh.get((i, j), 0)


def degree_profile(adj: dict[int, set[int]]) -> DegreeProfile:
    deg = {v: len(s) for v, s in adj.items()}
    vcount: dict[int, int] = {}
    vh: dict[tuple[int, int], int] = {}
    for v, dv in deg.items():
        vcount[dv] = vcount.get(dv, 0) + 1
        j = sum(1 for w in adj[v] if deg[w] == 2)
        vh[(dv, j)] = vh.get((dv, j), 0) + 1
    m = sum(deg.values()) // 2
    return DegreeProfile(len(adj), m, vcount, vh)


def _adjacency(obj) -> dict[int, set[int]]:
    if isinstance(obj, LabeledGraph):
        return {v: set(s) for v, s in enumerate(obj.adjacency())}
    return _View(obj).adj


@dataclass
class Inequality:
    name: str
    lhs: Fraction
    rhs: Fraction
    kind: str = "<="  # or "=="

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs if self.kind == "==" else self.lhs <= self.rhs

    @property
    def slack(self) -> Fraction:
        return self.rhs - self.lhs

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": str(self.lhs), "rhs": str(self.rhs), "relation": self.kind,
                "holds": self.holds, "slack": str(self.slack)}


def degree_inequalities(obj, maximal: bool | None = None) -> dict:
    """Evaluate the vertex-count identities and inequalities of the degree
    argument, exactly as stated (coefficients for degrees up to nine written
    out, ``floor(i/3)`` beyond), plus ``m - 2n``.

    The inequalities are only promised for maximal graphs; on other inputs a
    violation is reported with ``informational=True``.
    """
    adj = _adjacency(obj)
    p = degree_profile(adj)
    F = Fraction
    top = max(p.v) if p.v else 0
    v, h = p.get, p.h
    tail = sum(F(i // 3) * v(i) for i in range(10, top + 1))
    out = []
    out.append(Inequality("vertex count", F(p.n), F(sum(v(i) for i in range(2, top + 1))), "=="))
    out.append(Inequality("handshake", F(2 * p.m), F(sum(i * v(i) for i in range(2, top + 1))), "=="))
    for i in range(3, top + 1):
        if v(i):
            out.append(Inequality(f"hermit refinement degree {i}", F(v(i)),
                                  F(sum(h(i, j) for j in range(i // 3 + 1))), "=="))
    rhs2 = (h(4, 1) + h(5, 1) + h(6, 1) + 2 * h(6, 2) + h(7, 1) + 2 * h(7, 2) + 2 * v(8)
            + h(9, 1) + 2 * h(9, 2) + 3 * h(9, 3))
    out.append(Inequality("hermit incidences", F(2 * v(2)), F(rhs2) + tail))
    rhs3 = (h(5, 0) + 2 * h(6, 0) + h(6, 1) + 2 * h(7, 0) + 2 * h(7, 1) + h(7, 2) + 2 * v(8)
            + 3 * h(9, 0) + 2 * h(9, 1) + 2 * h(9, 2) + h(9, 3))
    out.append(Inequality("degree-three service", F(v(3) + h(4, 1)), F(rhs3) + tail))
    out.append(Inequality("combined", F(v(2)) + F(v(3), 2),
                          F(v(5), 2) + v(6) + F(3 * v(7), 2) + 2 * v(8) + 2 * v(9) + tail))
    excess = sum(F(i - 4, 2) * v(i) for i in range(2, top + 1))
    out.append(Inequality("m - 2n as degree sum", F(p.m - 2 * p.n), excess, "=="))
    out.append(Inequality("edge bound", F(2 * p.n), F(p.m)))
    failures = [q.name for q in out if not q.holds]
    return {
        "n": p.n, "m": p.m, "m_minus_2n": p.m - 2 * p.n,
        "degrees": {str(i): c for i, c in sorted(p.v.items())},
        "hermit_refinement": {f"{i}h{j}": c for (i, j), c in sorted(p.vh.items())},
        "relations": [q.as_dict() for q in out],
        "violations": failures,
        "maximal": maximal,
        "informational": maximal is not True,
    }


@dataclass
class DensityVerdict:
    status: str  # "pass", "fail", "inconclusive", "not_maximal", "too_small"
    n: int
    m: int
    margin: int
    detail: str = ""

    def as_dict(self) -> dict:
        return {"status": self.status, "n": self.n, "m": self.m, "margin": self.margin, "detail": self.detail}


def density_verdict(g: LabeledGraph, budget: int | None = None, maximal: bool | None = None) -> DensityVerdict:
    """``m >= 2n`` for a maximal 2-planar graph on ``n >= 5`` vertices.

    Maximality is decided with :func:`graph_maximal` unless passed in.
    """
    from .saturation import graph_maximal

    n, m = g.n, g.m
    if n < 5:
        return DensityVerdict("too_small", n, m, m - 2 * n, "needs n >= 5")
    if maximal is None:
        try:
            res = graph_maximal(g, 2, budget)
        except InvalidInput as exc:
            return DensityVerdict("not_maximal", n, m, m - 2 * n, str(exc))
        maximal = res.maximal
        if maximal is None:
            return DensityVerdict("inconclusive", n, m, m - 2 * n, res.reason)
    if not maximal:
        return DensityVerdict("not_maximal", n, m, m - 2 * n, "an edge can be added")
    return DensityVerdict("pass" if m >= 2 * n else "fail", n, m, m - 2 * n)


# ---------------------------------------------------------------------------
# alternate T3-2 drawings

def without_edge_key(d: Drawing, e: int) -> tuple:
    """Labeled description of ``d`` with edge ``e`` deleted (its crossings
    dissolved), used to compare drawings that differ only in ``e``."""
    rots = []
    for x in range(len(d.kind)):
        if d.ndart[x] < 0:
            continue
        if d.kind[x] == CROSSING and e in d.ncross[x]:
            continue
        rot = [(d.dedge[y], d.ddir[y]) for y in d.rotation(x) if d.dedge[y] != e]
        if not rot:
            continue
        i = rot.index(min(rot))
        name = ("v", d.nlabel[x]) if d.kind[x] == REAL else ("c",) + tuple(sorted(d.ncross[x]))
        rots.append((name, tuple(rot[i:] + rot[:i])))
    seqs = []
    for f in range(len(d.eu)):
        if f == e or d.epseudo[f] or d.vnode[d.eu[f]] < 0:
            continue
        seq = []
        for z in d.chain(f)[1:]:
            x = d.org[z]
            a, b = d.ncross[x]
            g = b if a == f else a
            if g != e:
                seq.append(g)
        seqs.append((f, tuple(seq)))
    return tuple(sorted(rots)), tuple(seqs)


def t32_alternatives(d: Drawing, pool: list[Drawing]) -> dict[int, bool]:
    """For every T3-2 vertex ``u`` of ``d``: whether ``pool`` holds a drawing
    equal to ``d`` apart from the crossing edge ``wb``, in which ``wb``
    crosses ``ux`` instead."""
    view = _View(d)
    out = {}
    keys = None
    for u, c in classify_all(d).items():
        if c.kind != T3_2:
            continue
        info = _t32_info(d, view, u)
        if info is None:
            out[u] = False
            continue
        vv, w, b, x, f, node = info
        want = without_edge_key(d, f)
        ux = view.edge(u, x)
        found = False
        for other in pool:
            if other is d:
                continue
            if frozenset((f, ux)) not in other.crossing_pairs():
                continue
            if without_edge_key(other, f) == want:
                found = True
                break
        out[u] = found
    return out


def audit_drawing(d: Drawing, admissible: bool | None = None, maximal: bool | None = None) -> dict:
    """Structural predicates, resolved ledger and degree relations for one drawing."""
    classes = classify_all(d)
    rep = structural_report(d, admissible)
    led = resolve_claims(assessments(d, classes))
    return {
        "classes": {str(v): c.kind for v, c in sorted(classes.items())},
        "structure": rep.as_dict(),
        "ledger": led.as_dict(),
        "inequalities": degree_inequalities(d, maximal),
    }


__all__ = [
    "BudgetExceeded", "ClaimLedger", "DegreeProfile", "DensityVerdict", "StructuralReport", "VertexClass",
    "admissible_drawings", "assessments", "assignment_exists", "audit_drawing", "classify_all",
    "classify_vertex", "degree_inequalities", "degree_profile", "density_verdict", "peripheral",
    "resolve_claims", "structural_report", "synthetic_ledger", "t32_alternatives", "without_edge_key",
]
