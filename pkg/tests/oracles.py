"""Independent reference implementations used only by the tests.

The brute-force drawing oracle knows nothing about the insertion search: it
picks which pairs of independent edges cross, the order of crossings along
each edge and a full rotation system of the planarization, and keeps those of
genus zero.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from kplane.dcel import CROSSING, REAL


def _cyclic_orders(items):
    items = list(items)
    if len(items) <= 2:
        yield tuple(items)
        return
    first = items[0]
    for rest in permutations(items[1:]):
        yield (first,) + rest


def _key(rot_by_node):
    out = []
    for name, seq in rot_by_node.items():
        i = seq.index(min(seq))
        out.append((name, tuple(seq[i:] + seq[:i])))
    return tuple(sorted(out))


def drawing_key(d):
    """Label-exact key of an engine drawing: per node, the cyclic order of
    (edge id, neighbouring node name)."""
    def name(x):
        if d.kind[x] == REAL:
            return ("v", d.nlabel[x])
        if d.kind[x] == CROSSING:
            a, b = sorted(d.ncross[x])
            return ("c", a, b)
        raise ValueError("hub nodes are not expected here")

    rots = {}
    for x in range(len(d.kind)):
        if d.ndart[x] < 0:
            continue
        rots[name(x)] = [(d.dedge[z], name(d.org[d.twin[z]])) for z in d.rotation(x)]
    return _key(rots)


def _crossing_sets(edges, k):
    m = len(edges)
    pairs = [(a, b) for a, b in combinations(range(m), 2) if not set(edges[a]) & set(edges[b])]
    for r in range(len(pairs) + 1):
        for chosen in combinations(pairs, r):
            load = [0] * m
            for a, b in chosen:
                load[a] += 1
                load[b] += 1
            if max(load, default=0) <= k:
                yield chosen


def brute_force_drawings(n: int, edges: list[tuple[int, int]], k: int = 2) -> set:
    """Keys (as :func:`drawing_key`) of all simple k-plane drawings on the
    sphere of the connected graph ``(n, edges)``."""
    found = set()
    m = len(edges)
    used = sorted({v for e in edges for v in e})
    for chosen in _crossing_sets(edges, k):
        on = {e: [] for e in range(m)}
        for a, b in chosen:
            node = ("c", a, b)
            on[a].append(node)
            on[b].append(node)
        for orders in product(*[list(permutations(on[e])) for e in range(m)]):
            # segments: (tail node, head node, edge)
            segs = []
            for e, (u, v) in enumerate(edges):
                path = [("v", u)] + list(orders[e]) + [("v", v)]
                for p, q in zip(path, path[1:]):
                    segs.append((p, q, e))
            out = {}
            for s, (p, q, e) in enumerate(segs):
                out.setdefault(p, []).append(2 * s)
                out.setdefault(q, []).append(2 * s + 1)
            nodes = sorted(out)
            choices = []
            for x in nodes:
                darts = out[x]
                if x[0] == "c":
                    a = [z for z in darts if segs[z // 2][2] == x[1]]
                    b = [z for z in darts if segs[z // 2][2] == x[2]]
                    choices.append([(a[0], b[0], a[1], b[1]), (a[0], b[1], a[1], b[0])])
                else:
                    choices.append(list(_cyclic_orders(darts)))
            n_nodes = len(nodes)
            n_segs = len(segs)
            for combo in product(*choices):
                nxt = {}
                for rot in combo:
                    for i, z in enumerate(rot):
                        nxt[z] = rot[(i + 1) % len(rot)]
                seen = set()
                faces = 0
                for z0 in nxt:
                    if z0 in seen:
                        continue
                    faces += 1
                    z = z0
                    while z not in seen:
                        seen.add(z)
                        z = nxt[z ^ 1]
                if n_nodes - n_segs + faces != 2:
                    continue

                def head(z):
                    p, q, _ = segs[z // 2]
                    return q if z % 2 == 0 else p

                rots = {x: [(segs[z // 2][2], head(z)) for z in rot] for x, rot in zip(nodes, combo)}
                found.add(_key(rots))
    return found


def small_connected_graphs(max_edges: int):
    """(n, edges) for every connected graph without isolated vertices and at
    most ``max_edges`` edges, one per isomorphism class, from the graph atlas."""
    import networkx as nx

    for g in nx.graph_atlas_g():
        if g.number_of_edges() == 0 or g.number_of_edges() > max_edges:
            continue
        if not nx.is_connected(g):
            continue
        yield g.number_of_nodes(), sorted(tuple(sorted(e)) for e in g.edges())


def relabeled_key(d, perm, mirror=False):
    """Key of ``d`` after renaming vertex ``v`` to ``perm[v]``; edges and
    crossings are named by endpoint pairs so the result does not depend on
    edge ids.  ``mirror`` reverses every rotation."""
    def ename(e):
        return tuple(sorted((perm[d.eu[e]], perm[d.ev[e]])))

    def name(x):
        if d.kind[x] == REAL:
            return ("v", perm[d.nlabel[x]])
        a, b = d.ncross[x]
        return ("c",) + tuple(sorted((ename(a), ename(b))))

    out = []
    for x in range(len(d.kind)):
        if d.ndart[x] < 0:
            continue
        seq = [(ename(d.dedge[z]), name(d.org[d.twin[z]])) for z in d.rotation(x)]
        if mirror:
            seq.reverse()
        i = seq.index(min(seq))
        out.append((name(x), tuple(seq[i:] + seq[:i])))
    return tuple(sorted(out))


def orbit_count(n: int, edges: list[tuple[int, int]], keys: set) -> int:
    """Number of classes of oracle keys under graph automorphisms and mirroring."""
    import networkx as nx

    g = nx.Graph(edges)
    eid = {frozenset(e): i for i, e in enumerate(edges)}
    autos = list(nx.algorithms.isomorphism.GraphMatcher(g, g).isomorphisms_iter())

    def rename(name, perm):
        if name[0] == "v":
            return ("v", perm[name[1]])
        a, b = (eid[frozenset(perm[x] for x in edges[e])] for e in name[1:])
        return ("c", min(a, b), max(a, b))

    def image(key, perm, mirror):
        rots = {}
        for name, seq in key:
            new = [(eid[frozenset(perm[x] for x in edges[e])], rename(nb, perm)) for e, nb in seq]
            rots[rename(name, perm)] = new[::-1] if mirror else new
        return _key(rots)

    seen = set()
    classes = 0
    for key in sorted(keys):
        if key in seen:
            continue
        classes += 1
        for perm in autos:
            for mirror in (False, True):
                seen.add(image(key, perm, mirror))
    return classes
