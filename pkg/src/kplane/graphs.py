"""Abstract labeled graphs and the deterministic generators for the G_k family.

Vertex ids are dense integers ``0..n-1``; every vertex carries a unique string
label.  Edges carry an ``uncrossable`` flag (the edge starts with fake
crossings so that no other edge may cross it) and a role tag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, NamedTuple


class InvalidInput(ValueError):
    """Raised when a generator or parser receives out-of-contract input."""


class Tag(NamedTuple):
    kind: str  # "cycle", "matching", "length_two", "gadget", "plain", "extra"
    index: int = 0


PLAIN = Tag("plain")


class Edge(NamedTuple):
    u: int
    v: int
    uncrossable: bool = False
    tag: Tag = PLAIN


@dataclass
class LabeledGraph:
    labels: list[str]
    edges: list[Edge] = field(default_factory=list)

    def __post_init__(self):
        self.check()

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def check(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise InvalidInput("vertex labels must be unique")
        seen = set()
        for e in self.edges:
            if e.u == e.v:
                raise InvalidInput(f"loop at vertex {e.u}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise InvalidInput(f"edge {e.u}-{e.v} references unknown vertex")
            key = (min(e.u, e.v), max(e.u, e.v))
            if key in seen:
                raise InvalidInput(f"multi-edge {key}")
            seen.add(key)

    def edge_index(self) -> dict[tuple[int, int], int]:
        idx = {}
        for i, e in enumerate(self.edges):
            idx[(e.u, e.v)] = i
            idx[(e.v, e.u)] = i
        return idx

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_index()

    def non_edges(self) -> list[tuple[int, int]]:
        idx = self.edge_index()
        return [(u, v) for u, v in combinations(range(self.n), 2) if (u, v) not in idx]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def with_edge(self, u: int, v: int, uncrossable: bool = False) -> "LabeledGraph":
        if self.has_edge(u, v):
            raise InvalidInput(f"edge {u}-{v} already present")
        return LabeledGraph(list(self.labels), self.edges + [Edge(u, v, uncrossable, Tag("extra"))])

    def with_uncrossable(self, edge_ids: Iterable[int]) -> "LabeledGraph":
        ids = set(edge_ids)
        edges = [e._replace(uncrossable=True) if i in ids else e for i, e in enumerate(self.edges)]
        return LabeledGraph(list(self.labels), edges)

    def vertex(self, label: str) -> int:
        return self.labels.index(label)

    def to_networkx(self):
        import networkx as nx

        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from((e.u, e.v) for e in self.edges)
        return h


# ---------------------------------------------------------------------------
# text edge-list format

def dumps(g: LabeledGraph) -> str:
    lines = [f"n {g.n}"]
    for e in g.edges:
        lines.append(f"{e.u} {e.v} !" if e.uncrossable else f"{e.u} {e.v}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> LabeledGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or rows[0][0] != "n" or len(rows[0]) != 2:
        raise InvalidInput("edge list must start with a header line 'n <count>'")
    try:
        n = int(rows[0][1])
        edges = []
        for r in rows[1:]:
            if len(r) not in (2, 3) or (len(r) == 3 and r[2] != "!"):
                raise InvalidInput(f"malformed edge line: {' '.join(r)}")
            edges.append(Edge(int(r[0]), int(r[1]), len(r) == 3))
    except ValueError as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(str(exc)) from exc
    return LabeledGraph([str(i) for i in range(n)], edges)


def write_edge_list(g: LabeledGraph, path) -> None:
    Path(path).write_text(dumps(g))


def read_edge_list(path) -> LabeledGraph:
    return loads(Path(path).read_text())


# ---------------------------------------------------------------------------
# generators

def gen_cycle(n: int) -> LabeledGraph:
    if n < 3:
        raise InvalidInput("a cycle needs at least 3 vertices")
    labels = [f"v_{j}" for j in range(n)]
    return LabeledGraph(labels, [Edge(j, (j + 1) % n, False, Tag("cycle", 1)) for j in range(n)])


def gen_complete(n: int) -> LabeledGraph:
    return LabeledGraph([str(i) for i in range(n)], [Edge(u, v) for u, v in combinations(range(n), 2)])


# K2 + K2 + P3 removed from K9; x8's non-neighbours are x6 and x7.
GADGET_REMOVED = ((2, 3), (4, 5), (6, 8), (7, 8))


def gen_gadget_x() -> LabeledGraph:
    removed = {frozenset(p) for p in GADGET_REMOVED}
    edges = [Edge(u, v) for u, v in combinations(range(9), 2) if frozenset((u, v)) not in removed]
    return LabeledGraph([f"x_{i}" for i in range(9)], edges)


def gen_k9_minus(removed: Iterable[tuple[int, int]] = ()) -> LabeledGraph:
    rem = set()
    for u, v in removed:
        if u == v or not (0 <= u < 9 and 0 <= v < 9):
            raise InvalidInput(f"({u},{v}) is not an edge of K9")
        rem.add(frozenset((u, v)))
    if len(rem) > 4:
        raise InvalidInput("at most four edges may be removed")
    edges = [Edge(u, v) for u, v in combinations(range(9), 2) if frozenset((u, v)) not in rem]
    return LabeledGraph([str(i) for i in range(9)], edges)


def gen_x_plus() -> LabeledGraph:
    g = gen_gadget_x()
    edges = g.edges + [Edge(9, 3), Edge(9, 4), Edge(9, 6)]
    return LabeledGraph(g.labels + ["x'"], edges)


def cycle_vertex(i: int, j: int) -> int:
    """Vertex id of v_j^i (cycles are 1-based, stored first and contiguously)."""
    return 10 * (i - 1) + (j % 10)


def braided_partner(j: int) -> int:
    """Index on the next cycle matched to index j."""
    return (j + 8) % 10 if j % 2 == 0 else (j + 2) % 10


def _cycles_and_matchings(k: int, uncrossable_cycles: set[int]) -> tuple[list[str], list[Edge]]:
    labels = [f"v_{j}^{i}" for i in range(1, k + 1) for j in range(10)]
    edges = []
    for i in range(1, k + 1):
        unc = i in uncrossable_cycles
        for j in range(10):
            edges.append(Edge(cycle_vertex(i, j), cycle_vertex(i, j + 1), unc, Tag("cycle", i)))
    for i in range(1, k):
        for j in range(10):
            edges.append(Edge(cycle_vertex(i, j), cycle_vertex(i + 1, braided_partner(j)), False, Tag("matching", i)))
    return labels, edges


def gen_gk_minus(k: int, last_uncrossable: bool = False) -> LabeledGraph:
    if k < 1:
        raise InvalidInput("k must be at least 1")
    unc = {1, k} if last_uncrossable else {1}
    labels, edges = _cycles_and_matchings(k, unc)
    return LabeledGraph(labels, edges)


def gen_gk(k: int) -> LabeledGraph:
    """The sparse maximal 2-planar graph on 10k+140 vertices.

    Cycle vertices come first (``v_j^i`` has id ``10(i-1)+j``), then one gadget
    copy per edge of D_1 followed by one per edge of D_k.  In each copy the
    lower-id endpoint of the cycle edge plays x_6 and the other plays x_7; the
    seven fresh vertices are x_0..x_5, x_8 in that order.
    """
    if k < 2:
        raise InvalidInput("G_k needs k >= 2")
    labels, edges = _cycles_and_matchings(k, set())
    gadget = gen_gadget_x()
    copy_id = 0
    for i in (1, k):
        for j in range(10):
            a, b = sorted((cycle_vertex(i, j), cycle_vertex(i, j + 1)))
            base = len(labels)
            vmap = {6: a, 7: b}
            for t, x in enumerate((0, 1, 2, 3, 4, 5, 8)):
                vmap[x] = base + t
                labels.append(f"x_{x}^g{copy_id}")
            for e in gadget.edges:
                if {e.u, e.v} == {6, 7}:
                    continue
                edges.append(Edge(vmap[e.u], vmap[e.v], False, Tag("gadget", copy_id)))
            copy_id += 1
    for i in (1, k):
        for j in range(10):
            edges.append(Edge(cycle_vertex(i, j), cycle_vertex(i, j + 2), False, Tag("length_two", i)))
    return LabeledGraph(labels, edges)


def gadget_copy_vertices(k: int, copy_id: int) -> dict[int, int]:
    """Map gadget vertex index (0..8) to its id in gen_gk(k) for one copy."""
    i = 1 if copy_id < 10 else k
    j = copy_id % 10
    a, b = sorted((cycle_vertex(i, j), cycle_vertex(i, j + 1)))
    base = 10 * k + 7 * copy_id
    vmap = {6: a, 7: b}
    for t, x in enumerate((0, 1, 2, 3, 4, 5, 8)):
        vmap[x] = base + t
    return vmap


FAMILIES = ("cycle", "gadget-x", "gk", "gk-minus", "k9-minus", "x-plus", "complete")
