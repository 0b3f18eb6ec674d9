"""Planarized spherical drawings stored as a doubly-connected edge list.

A drawing is the planarization of a simple drawing: real vertices, degree-4
crossing nodes, and (after pipeline cleanup) star hubs.  Darts are half-segments
of the planarization.  ``nxt``/``prv`` give the counterclockwise rotation at the
origin node, ``twin`` the opposite dart.  Walking ``d -> nxt[twin[d]]`` traces
the face on the right-hand side of ``d``; the corner in front of a dart ``z``
(between ``prv[z]`` and ``z``) belongs to the face containing ``z``.

There are no coordinates; the sphere has no outer face.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .graphs import InvalidInput, LabeledGraph

REAL, CROSSING, HUB = 0, 1, 2
KIND_NAMES = {REAL: "v", CROSSING: "c", HUB: "h"}


class InternalError(RuntimeError):
    pass


class Drawing:
    """Mutable planarization; copy before branching."""

    __slots__ = (
        "k", "n_graph", "labels", "eu", "ev", "ecross", "efake", "epseudo", "etag",
        "kind", "nlabel", "ncross", "ndart", "vnode",
        "org", "twin", "nxt", "prv", "dedge", "ddir", "zone",
    )

    def __init__(self, graph: LabeledGraph, k: int = 2):
        self.k = k
        self.n_graph = graph.n
        self.labels = list(graph.labels)
        self.eu = [e.u for e in graph.edges]
        self.ev = [e.v for e in graph.edges]
        self.ecross = [0] * graph.m
        self.efake = [k if e.uncrossable else 0 for e in graph.edges]
        self.epseudo = [False] * graph.m
        self.etag = [e.tag for e in graph.edges]
        self.kind: list[int] = []
        self.nlabel: list[int] = []
        self.ncross: list[tuple[int, int] | None] = []
        self.ndart: list[int] = []
        self.vnode = [-1] * graph.n
        self.org: list[int] = []
        self.twin: list[int] = []
        self.nxt: list[int] = []
        self.prv: list[int] = []
        self.dedge: list[int] = []
        self.ddir: list[int] = []
        self.zone: list[int] = []

    # -- construction helpers ---------------------------------------------

    def copy(self) -> "Drawing":
        c = Drawing.__new__(Drawing)
        c.k = self.k
        c.n_graph = self.n_graph
        c.labels = self.labels
        c.eu = self.eu
        c.ev = self.ev
        c.ecross = self.ecross[:]
        c.efake = self.efake
        c.epseudo = self.epseudo
        c.etag = self.etag
        c.kind = self.kind[:]
        c.nlabel = self.nlabel[:]
        c.ncross = self.ncross[:]
        c.ndart = self.ndart[:]
        c.vnode = self.vnode[:]
        c.org = self.org[:]
        c.twin = self.twin[:]
        c.nxt = self.nxt[:]
        c.prv = self.prv[:]
        c.dedge = self.dedge[:]
        c.ddir = self.ddir[:]
        c.zone = self.zone[:]
        return c

    def deep_copy(self) -> "Drawing":
        """Copy that also owns its edge table (needed before adding edges)."""
        c = self.copy()
        c.labels = list(self.labels)
        c.eu = list(self.eu)
        c.ev = list(self.ev)
        c.efake = list(self.efake)
        c.epseudo = list(self.epseudo)
        c.etag = list(self.etag)
        return c

    def add_vertex(self, label: str) -> int:
        self.labels = self.labels + [label]
        self.vnode = self.vnode + [-1]
        self.n_graph += 1
        return self.n_graph - 1

    def add_edge(self, u: int, v: int, uncrossable: bool = False, tag=None, pseudo: bool = False) -> int:
        self.eu = self.eu + [u]
        self.ev = self.ev + [v]
        self.ecross = self.ecross + [0]
        self.efake = self.efake + [self.k if uncrossable else 0]
        self.epseudo = self.epseudo + [pseudo]
        self.etag = self.etag + [tag]
        return len(self.eu) - 1

    def new_node(self, kind: int, label: int = -1, cross=None) -> int:
        self.kind.append(kind)
        self.nlabel.append(label)
        self.ncross.append(cross)
        self.ndart.append(-1)
        x = len(self.kind) - 1
        if kind == REAL:
            self.vnode[label] = x
        return x

    def new_pair(self, e: int, a: int, b: int, forward: int, zone_ab: int = -1, zone_ba: int = -1) -> int:
        """Darts ``d: a->b`` and ``d+1: b->a`` on edge ``e``, not yet in any rotation."""
        d = len(self.org)
        self.org += (a, b)
        self.twin += (d + 1, d)
        self.nxt += (d, d + 1)
        self.prv += (d, d + 1)
        self.dedge += (e, e)
        self.ddir += (forward, 1 - forward)
        self.zone += (zone_ab, zone_ba)
        return d

    def attach(self, d: int, before: int | None) -> None:
        """Put dart ``d`` into the rotation of its origin, just before ``before``."""
        x = self.org[d]
        if before is None or before < 0:
            self.nxt[d] = d
            self.prv[d] = d
            self.ndart[x] = d
            return
        p = self.prv[before]
        self.nxt[p] = d
        self.prv[d] = p
        self.nxt[d] = before
        self.prv[before] = d
        if self.ndart[x] < 0:
            self.ndart[x] = d

    def detach(self, d: int) -> None:
        x = self.org[d]
        n, p = self.nxt[d], self.prv[d]
        if n == d:
            self.ndart[x] = -1
        else:
            self.nxt[p] = n
            self.prv[n] = p
            if self.ndart[x] == d:
                self.ndart[x] = n
        self.nxt[d] = d
        self.prv[d] = d

    # -- queries ----------------------------------------------------------

    def budget(self, e: int) -> int:
        return self.k - self.ecross[e] - self.efake[e]

    def is_placed(self, v: int) -> bool:
        return self.vnode[v] >= 0

    def placed_vertices(self) -> list[int]:
        return [v for v in range(self.n_graph) if self.vnode[v] >= 0]

    def node_count(self) -> int:
        return sum(1 for x in range(len(self.kind)) if self.ndart[x] >= 0)

    def live_darts(self) -> list[int]:
        ndart = self.ndart
        org = self.org
        return [d for d in range(len(org)) if org[d] >= 0 and ndart[org[d]] >= 0]

    def rotation(self, x: int) -> list[int]:
        d0 = self.ndart[x]
        if d0 < 0:
            return []
        out = [d0]
        d = self.nxt[d0]
        while d != d0:
            out.append(d)
            d = self.nxt[d]
        return out

    def face_walk(self, d0: int) -> list[int]:
        twin, nxt = self.twin, self.nxt
        out = [d0]
        d = nxt[twin[d0]]
        while d != d0:
            out.append(d)
            d = nxt[twin[d]]
        return out

    def drawn_edges(self) -> list[int]:
        return sorted({self.dedge[d] for d in self.live_darts()})

    def graph_edges_drawn(self) -> list[int]:
        return [e for e in self.drawn_edges() if not self.epseudo[e]]

    def edge_id(self, u: int, v: int) -> int:
        for e in range(len(self.eu)):
            if {self.eu[e], self.ev[e]} == {u, v} and not self.epseudo[e]:
                return e
        raise InvalidInput(f"no edge {u}-{v}")

    def chain(self, e: int) -> list[int]:
        """Darts of edge ``e`` in order from its first endpoint to its second."""
        u = self.eu[e]
        x = self.vnode[u]
        if x < 0:
            raise InvalidInput(f"edge {e} is not drawn")
        start = -1
        for d in self.rotation(x):
            if self.dedge[d] == e:
                start = d
                break
        if start < 0:
            raise InvalidInput(f"edge {e} is not drawn")
        out = [start]
        d = start
        while self.kind[self.org[self.twin[d]]] == CROSSING:
            d = self.nxt[self.nxt[self.twin[d]]]
            out.append(d)
        return out

    def crossing_count(self, e: int) -> int:
        if not (0 <= e < len(self.eu)) or self.epseudo[e]:
            raise InvalidInput(f"unknown edge {e}")
        return self.ecross[e]

    def crossing_nodes(self) -> list[int]:
        return [x for x in range(len(self.kind)) if self.kind[x] == CROSSING and self.ndart[x] >= 0]

    def crossing_pairs(self) -> set[frozenset]:
        return {frozenset(self.ncross[x]) for x in self.crossing_nodes()}

    def total_crossings(self) -> int:
        return len(self.crossing_nodes())

    def vertex_degree(self, v: int) -> int:
        x = self.vnode[v]
        return 0 if x < 0 else len(self.rotation(x))

    def faces(self) -> list["Face"]:
        return faces(self)

    def __repr__(self) -> str:
        return (f"Drawing(vertices={len(self.placed_vertices())}, edges={len(self.graph_edges_drawn())}, "
                f"crossings={self.total_crossings()})")


@dataclass
class Face:
    id: int
    darts: list[int]
    nodes: list[int]
    vertices: list[int]
    edges: list[int]

    def __len__(self) -> int:
        return len(self.darts)


def face_index(d: Drawing) -> tuple[list[int], list[list[int]]]:
    """Face id per dart (-1 for dead darts) and the walks, ordered by smallest dart."""
    n = len(d.org)
    fid = [-1] * n
    walks = []
    twin, nxt, org, ndart = d.twin, d.nxt, d.org, d.ndart
    for s in range(n):
        if fid[s] >= 0 or org[s] < 0 or ndart[org[s]] < 0:
            continue
        f = len(walks)
        w = [s]
        fid[s] = f
        x = nxt[twin[s]]
        while x != s:
            fid[x] = f
            w.append(x)
            x = nxt[twin[x]]
        walks.append(w)
    return fid, walks


def faces(d: Drawing) -> list[Face]:
    _, walks = face_index(d)
    out = []
    for i, w in enumerate(walks):
        nodes = [d.org[x] for x in w]
        verts = [d.nlabel[x] for x in nodes if d.kind[x] == REAL]
        out.append(Face(i, w, nodes, verts, sorted({d.dedge[x] for x in w})))
    return out


# ---------------------------------------------------------------------------
# operations

def empty_drawing(graph: LabeledGraph, k: int = 2) -> Drawing:
    return Drawing(graph, k)


def init_drawing(graph: LabeledGraph, first_edge: tuple[int, int] | int, k: int = 2) -> Drawing:
    if isinstance(first_edge, int):
        e = first_edge
        u, v = graph.edges[e].u, graph.edges[e].v
    else:
        u, v = first_edge
        if u == v:
            raise InvalidInput("first edge is a loop")
        e = graph.edge_index().get((u, v))
        if e is None:
            raise InvalidInput(f"{u}-{v} is not an edge of the graph")
    d = Drawing(graph, k)
    place_first_edge(d, e)
    return d


def place_first_edge(d: Drawing, e: int) -> None:
    u, v = d.eu[e], d.ev[e]
    xu = d.new_node(REAL, u)
    xv = d.new_node(REAL, v)
    dd = d.new_pair(e, xu, xv, 0)
    d.attach(dd, None)
    d.attach(dd + 1, None)


def place_isolated(d: Drawing, v: int) -> int:
    return d.new_node(REAL, v)


def split_segment(d: Drawing, dart: int, e_new: int) -> int:
    """Put a crossing with ``e_new`` in the middle of the segment of ``dart``.

    Returns the crossing node ``c``.  Rotation at ``c`` is ``[d1, e1]`` where
    ``d1 = twin[dart]`` (towards the origin of ``dart``) and ``e1`` heads to the
    far end; the new edge's darts are inserted by the caller.
    """
    t = d.twin[dart]
    e_old = d.dedge[dart]
    c = d.new_node(CROSSING, -1, (e_old, e_new))
    p = len(d.org)
    # d1: c -> origin(dart), twin of dart.  e1: c -> origin(t), twin of t.
    d.org += (c, c)
    d.twin += (dart, t)
    d.nxt += (p + 1, p)
    d.prv += (p + 1, p)
    d.dedge += (e_old, e_old)
    d.ddir += (1 - d.ddir[dart], 1 - d.ddir[t])
    d.zone += (d.zone[t], d.zone[dart])
    d.twin[dart] = p
    d.twin[t] = p + 1
    d.ndart[c] = p
    d.ecross[e_old] += 1
    return c


def unsplit_segment(d: Drawing, dart: int) -> None:
    """Inverse of :func:`split_segment`; the crossing node must be the last node
    and its two segment darts the last darts allocated besides those removed by
    the caller."""
    d1 = d.twin[dart]
    e1 = d1 + 1
    t = d.twin[e1]
    d.twin[dart] = t
    d.twin[t] = dart
    d.ecross[d.dedge[dart]] -= 1
    for arr in (d.org, d.twin, d.nxt, d.prv, d.dedge, d.ddir, d.zone):
        del arr[d1:]
    d.kind.pop()
    d.nlabel.pop()
    d.ncross.pop()
    d.ndart.pop()


# ---------------------------------------------------------------------------
# validation

def validate(d: Drawing, reduced: bool = False) -> list[str]:
    """Check the drawing invariants and return a list of violations.

    ``reduced`` relaxes the per-edge checks for pipeline drawings in which
    parts of edges were evacuated by cleanup.
    """
    errs: list[str] = []
    n = len(d.org)
    live = [False] * n
    for x in range(len(d.kind)):
        if d.ndart[x] < 0:
            continue
        rot = []
        y = d.ndart[x]
        guard = 0
        while True:
            rot.append(y)
            if d.org[y] != x:
                errs.append(f"rotation: dart {y} in rotation of node {x} has origin {d.org[y]}")
                break
            if d.prv[d.nxt[y]] != y:
                errs.append(f"rotation: nxt/prv mismatch at dart {y}")
                break
            y = d.nxt[y]
            guard += 1
            if y == d.ndart[x] or guard > n:
                break
        for y in rot:
            live[y] = True
        if d.kind[x] == CROSSING:
            if not reduced and len(rot) != 4:
                errs.append(f"crossing-degree: node {x} has {len(rot)} darts")
            elif len(rot) == 4 and not reduced:
                es = [d.dedge[y] for y in rot]
                if not (es[0] == es[2] and es[1] == es[3] and es[0] != es[1]):
                    errs.append(f"crossing-alternation: node {x}")
                if set(es) != set(d.ncross[x]):
                    errs.append(f"crossing-record: node {x}")
    for y in range(n):
        if not live[y]:
            continue
        t = d.twin[y]
        if t == y or not (0 <= t < n) or d.twin[t] != y or not live[t]:
            errs.append(f"twin-involution: dart {y}")
        elif d.dedge[t] != d.dedge[y]:
            errs.append(f"twin-edge: dart {y}")
    if errs:
        return errs
    nodes = sum(1 for x in range(len(d.kind)) if d.ndart[x] >= 0)
    segs = sum(live) // 2
    _, walks = face_index(d)
    if nodes and _components(d) == 1 and nodes - segs + len(walks) != 2:
        errs.append(f"euler: V={nodes} E={segs} F={len(walks)}")
    # per-edge checks
    k = d.k
    for e in range(len(d.eu)):
        if d.epseudo[e]:
            continue
        if d.ecross[e] + d.efake[e] + d.budget(e) != k:
            errs.append(f"budget: edge {e}")
        if d.budget(e) < 0:
            errs.append(f"k-plane: edge {e} has {d.ecross[e]} crossings")
    pairs = set()
    for x in d.crossing_nodes():
        a, b = d.ncross[x]
        key = frozenset((a, b))
        if key in pairs:
            errs.append(f"simple: edges {a} and {b} cross twice")
        pairs.add(key)
        if a < 0 or b < 0:
            continue
        if {d.eu[a], d.ev[a]} & {d.eu[b], d.ev[b]} - {-1} and not (d.epseudo[a] or d.epseudo[b]):
            errs.append(f"simple: adjacent edges {a} and {b} cross")
    if not reduced:
        counts = [0] * len(d.eu)
        for x in d.crossing_nodes():
            for e in d.ncross[x]:
                counts[e] += 1
        for e in range(len(d.eu)):
            if counts[e] != d.ecross[e]:
                errs.append(f"crossing-count: edge {e} records {d.ecross[e]}, has {counts[e]}")
        for e in set(d.dedge[y] for y in range(n) if live[y]):
            try:
                ch = d.chain(e)
            except InvalidInput:
                errs.append(f"chain: edge {e} not anchored at its endpoint")
                continue
            end = d.org[d.twin[ch[-1]]]
            if d.kind[end] != REAL or d.nlabel[end] != d.ev[e] or len(ch) != d.ecross[e] + 1:
                errs.append(f"chain: edge {e}")
    return errs


def _components(d: Drawing) -> int:
    seen = set()
    comps = 0
    for x in range(len(d.kind)):
        if d.ndart[x] < 0 or x in seen:
            continue
        comps += 1
        stack = [x]
        seen.add(x)
        while stack:
            y = stack.pop()
            for z in d.rotation(y):
                w = d.org[d.twin[z]]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return comps


# ---------------------------------------------------------------------------
# keys and canonical forms

def _node_name(d: Drawing, x: int) -> tuple:
    if d.kind[x] == REAL:
        return ("v", d.nlabel[x])
    if d.kind[x] == CROSSING:
        a, b = d.ncross[x]
        return ("c", min(a, b), max(a, b))
    return ("h", x)


def labeled_rotations(d: Drawing) -> dict:
    """Label-exact description of a (full) simple drawing.

    Real nodes are named by vertex id, crossing nodes by the pair of crossing
    edges (unique in a simple drawing).  Each rotation is a tuple of
    ``(edge, direction, neighbouring node)`` entries rotated to start at its
    minimum; the neighbour fixes the order of crossings along every edge.
    """
    out = {}
    for x in range(len(d.kind)):
        if d.ndart[x] < 0:
            continue
        rot = [(d.dedge[y], d.ddir[y], _node_name(d, d.org[d.twin[y]])) for y in d.rotation(x)]
        i = rot.index(min(rot))
        out[_node_name(d, x)] = tuple(rot[i:] + rot[:i])
    return out


def labeled_key(d: Drawing, mirror: bool = False) -> tuple:
    rots = labeled_rotations(d)
    if mirror:
        rots = {}
        for name, rot in labeled_rotations(d).items():
            r = list(reversed(rot))
            i = r.index(min(r))
            rots[name] = tuple(r[i:] + r[:i])
    return tuple(sorted(rots.items()))


def _bfs_code(d: Drawing, start: int, forward: bool, attr) -> tuple:
    rot = d.nxt if forward else d.prv
    twin = d.twin
    num = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in (rot[x], twin[x]):
            if y not in num:
                num[y] = len(order)
                order.append(y)
    enum: dict[int, int] = {}
    code = []
    for x in order:
        e = d.dedge[x]
        if e not in enum:
            enum[e] = len(enum)
        code.append((num[rot[x]], num[twin[x]], enum[e], attr(x)))
    return tuple(code)


def _dart_attr_factory(d: Drawing, fixed_cycle=None, shift: int = 0, labeled: bool = False):
    kind, org, nlabel, dedge = d.kind, d.org, d.nlabel, d.dedge

    def node_attr(x: int):
        if kind[x] != REAL:
            return KIND_NAMES[kind[x]]
        v = nlabel[x]
        if labeled:
            return f"v{v}"
        if fixed_cycle is not None and v in fixed_cycle:
            return f"f{(fixed_cycle[v] - shift) % 10}"
        return "v"

    def edge_attr(e: int):
        if d.epseudo[e]:
            return ("p", d.budget(e), ())
        ends = tuple(sorted(node_attr(d.vnode[w]) if w >= 0 and d.vnode[w] >= 0 and (labeled or (fixed_cycle and w in fixed_cycle)) else "-"
                            for w in (d.eu[e], d.ev[e])))
        return ("e", d.budget(e), ends)

    def attr(x: int):
        return (node_attr(org[x]), edge_attr(dedge[x]))

    return attr


def canonical_form(d: Drawing, fixed_cycle: list[int] | None = None, parity: bool = True,
                   orientations: int = 2) -> str:
    """Canonical string of the planarization.

    Without ``fixed_cycle`` the string is invariant under every relabeling that
    is an automorphism of the graph (and under mirroring when
    ``orientations == 2``).  With ``fixed_cycle`` (vertex ids ``v_0..v_9`` of a
    labeled ten-cycle) only relabelings that rotate the cycle are allowed: by
    even steps when ``parity`` holds, by any step otherwise.
    """
    live = d.live_darts()
    if not live:
        return "empty"
    dirs = (True, False) if orientations == 2 else (True,)
    best = None
    if fixed_cycle is None:
        attr = _dart_attr_factory(d)
        starts = [x for x in live if d.kind[d.org[x]] == REAL] or live
        for s in starts:
            for fw in dirs:
                c = _bfs_code(d, s, fw, attr)
                if best is None or c < best:
                    best = c
    else:
        pos = {v: j for j, v in enumerate(fixed_cycle)}
        shifts = range(0, 10, 2) if parity else range(10)
        for r in shifts:
            attr = _dart_attr_factory(d, pos, r)
            x = d.vnode[fixed_cycle[r]]
            for s in d.rotation(x):
                for fw in dirs:
                    c = _bfs_code(d, s, fw, attr)
                    if best is None or c < best:
                        best = c
    return json.dumps(best, separators=(",", ":"))


def canonical_hash(s: str) -> str:
    return hashlib.sha1(s.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# serialization

def to_json(d: Drawing) -> dict:
    """Deterministic JSON description; darts are renumbered densely."""
    live = d.live_darts()
    nodes = [x for x in range(len(d.kind)) if d.ndart[x] >= 0]
    nid = {x: i for i, x in enumerate(nodes)}
    did = {y: i for i, y in enumerate(live)}
    crossings = []
    for x in nodes:
        if d.kind[x] == CROSSING:
            a, b = d.ncross[x]
            crossings.append({"node": nid[x], "a": a, "b": b})
    return {
        "k": d.k,
        "vertices": d.labels,
        "edges": [[d.eu[e], d.ev[e]] for e in range(len(d.eu))],
        "pseudo": [e for e in range(len(d.eu)) if d.epseudo[e]],
        "fake": {str(e): d.efake[e] for e in range(len(d.eu)) if d.efake[e]},
        "crossings": crossings,
        "budgets": {str(e): d.budget(e) for e in range(len(d.eu))},
        "ecross": d.ecross,
        "nodes": [[KIND_NAMES[d.kind[x]], d.nlabel[x]] for x in nodes],
        "darts": [[nid[d.org[y]], did[d.twin[y]], d.dedge[y], d.ddir[y]] for y in live],
        "rotations": {str(nid[x]): [did[y] for y in d.rotation(x)] for x in nodes},
    }


def from_json(obj: dict) -> Drawing:
    from .graphs import Edge

    labels = obj["vertices"]
    pseudo = set(obj.get("pseudo", []))
    edges = []
    n = len(labels)
    for e, (u, v) in enumerate(obj["edges"]):
        edges.append((u, v))
    g = LabeledGraph(list(labels), [])
    d = Drawing(g, obj["k"])
    d.eu = [u for u, _ in edges]
    d.ev = [v for _, v in edges]
    d.ecross = list(obj["ecross"])
    d.efake = [obj["fake"].get(str(e), 0) for e in range(len(edges))]
    d.epseudo = [e in pseudo for e in range(len(edges))]
    d.etag = [None] * len(edges)
    d.vnode = [-1] * n
    kinds = {v: k for k, v in KIND_NAMES.items()}
    cross = {c["node"]: (c["a"], c["b"]) for c in obj["crossings"]}
    for i, (kname, lab) in enumerate(obj["nodes"]):
        d.new_node(kinds[kname], lab, cross.get(i))
    darts = obj["darts"]
    for y, (o, t, e, dr) in enumerate(darts):
        d.org.append(o)
        d.twin.append(t)
        d.dedge.append(e)
        d.ddir.append(dr)
        d.nxt.append(y)
        d.prv.append(y)
        d.zone.append(-1)
    for xs, rot in obj["rotations"].items():
        x = int(xs)
        for i, y in enumerate(rot):
            d.nxt[y] = rot[(i + 1) % len(rot)]
            d.prv[y] = rot[i - 1]
        d.ndart[x] = rot[0] if rot else -1
    _ = Edge  # keep import local for readers
    return d


def dumps_json(d: Drawing) -> str:
    return json.dumps(to_json(d), sort_keys=True, separators=(",", ":"))


def to_dot(d: Drawing) -> str:
    lines = ["graph planarization {"]
    for x in range(len(d.kind)):
        if d.ndart[x] < 0:
            continue
        if d.kind[x] == REAL:
            lines.append(f'  n{x} [label="{d.labels[d.nlabel[x]]}"];')
        elif d.kind[x] == CROSSING:
            lines.append(f'  n{x} [shape=point];')
        else:
            lines.append(f'  n{x} [shape=square,label=""];')
    for y in d.live_darts():
        t = d.twin[y]
        if y < t:
            e = d.dedge[y]
            style = ' [style=dashed]' if d.epseudo[e] else (' [color=green]' if d.efake[e] else '')
            lines.append(f"  n{d.org[y]} -- n{d.org[t]}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
