"""Build drawings from explicit polyline coordinates.

This is an independent route to a planarization: crossings are found by
segment intersection and rotations by sorting outgoing directions, so scripted
fixtures do not depend on the enumeration engine.
"""

from __future__ import annotations

import math

from . import dcel
from .dcel import CROSSING, REAL, Drawing
from .graphs import InvalidInput, LabeledGraph

EPS = 1e-9


def polar(r: float, theta: float) -> tuple[float, float]:
    return (r * math.cos(theta), r * math.sin(theta))


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _intersect(p1, p2, q1, q2):
    """Proper intersection of segments p1p2 and q1q2 as (t, s, point) or None."""
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    den = rx * sy - ry * sx
    if abs(den) < EPS:
        if abs(_cross(p1, p2, q1)) < EPS:
            # collinear; overlapping pieces would be a degenerate drawing
            for a in (q1, q2):
                t = ((a[0] - p1[0]) * rx + (a[1] - p1[1]) * ry) / (rx * rx + ry * ry)
                if EPS < t < 1 - EPS:
                    raise InvalidInput("overlapping collinear pieces")
        return None
    qpx, qpy = q1[0] - p1[0], q1[1] - p1[1]
    t = (qpx * sy - qpy * sx) / den
    s = (qpx * ry - qpy * rx) / den
    if -EPS <= t <= 1 + EPS and -EPS <= s <= 1 + EPS:
        inner_t = EPS < t < 1 - EPS
        inner_s = EPS < s < 1 - EPS
        if inner_t and inner_s:
            return t, s, (p1[0] + t * rx, p1[1] + t * ry)
        return ("touch", t, s)
    return None


def planarize(graph: LabeledGraph, points: dict[int, tuple[float, float]],
              curves: dict[int, list[tuple[float, float]]], k: int = 2) -> Drawing:
    """Planarization of a polyline drawing.

    ``points`` gives vertex positions, ``curves[e]`` the interior bend points
    of edge ``e`` (from ``eu`` to ``ev``).  Edges missing from ``curves`` are
    drawn straight when both endpoints have points; ``curves[e] = None``
    leaves the edge undrawn.  Degenerate inputs raise :class:`InvalidInput`.
    """
    edges = []
    for e, ed in enumerate(graph.edges):
        if e in curves and curves[e] is None:
            continue
        if ed.u not in points or ed.v not in points:
            if e in curves:
                raise InvalidInput(f"edge {e} has an undrawn endpoint")
            continue
        pts = [points[ed.u]] + list(curves.get(e, [])) + [points[ed.v]]
        edges.append((e, pts))
    # pieces: (edge, piece index, p, q, cumulative length at p)
    hits: dict[int, list[tuple[float, tuple, int]]] = {e: [] for e, _ in edges}
    crossings = []  # (edge_a, edge_b, point)
    pieces = []
    for e, pts in edges:
        acc = 0.0
        for i in range(len(pts) - 1):
            p, q = pts[i], pts[i + 1]
            ln = math.dist(p, q)
            if ln < EPS:
                raise InvalidInput(f"zero-length piece on edge {e}")
            pieces.append((e, i, p, q, acc, ln))
            acc += ln
    for i in range(len(pieces)):
        ea, ia, p1, p2, acc_a, la = pieces[i]
        for j in range(i + 1, len(pieces)):
            eb, ib, q1, q2, acc_b, lb = pieces[j]
            if ea == eb:
                continue
            if max(p1[0], p2[0]) < min(q1[0], q2[0]) - EPS or max(q1[0], q2[0]) < min(p1[0], p2[0]) - EPS:
                continue
            if max(p1[1], p2[1]) < min(q1[1], q2[1]) - EPS or max(q1[1], q2[1]) < min(p1[1], p2[1]) - EPS:
                continue
            r = _intersect(p1, p2, q1, q2)
            if r is None:
                continue
            if r[0] == "touch":
                _, t, s = r
                a_end = t < EPS or t > 1 - EPS
                b_end = s < EPS or s > 1 - EPS
                pa = p1 if t < 0.5 else p2
                pb = q1 if s < 0.5 else q2
                ga, gb = graph.edges[ea], graph.edges[eb]
                common = {ga.u, ga.v} & {gb.u, gb.v}
                if a_end and b_end and any(math.dist(pa, points[x]) < 1e-7 and math.dist(pb, points[x]) < 1e-7
                                           for x in common):
                    continue  # the two edges meet at their shared endpoint
                raise InvalidInput(f"edges {ea} and {eb} touch at a point that is not a shared vertex")
            t, s, pt = r
            cid = len(crossings)
            crossings.append((ea, eb, pt))
            hits[ea].append((acc_a + t * la, pt, cid))
            hits[eb].append((acc_b + s * lb, pt, cid))
    # vertex on another edge's interior
    for e, pts in edges:
        for x, pos in points.items():
            ed = graph.edges[e]
            if x in (ed.u, ed.v):
                continue
            for i in range(len(pts) - 1):
                p, q = pts[i], pts[i + 1]
                if abs(_cross(p, q, pos)) < 1e-9 and min(p[0], q[0]) - EPS <= pos[0] <= max(p[0], q[0]) + EPS \
                        and min(p[1], q[1]) - EPS <= pos[1] <= max(p[1], q[1]) + EPS:
                    raise InvalidInput(f"vertex {x} lies on edge {e}")

    d = Drawing(graph, k)
    used_vertices = sorted({graph.edges[e].u for e, _ in edges} | {graph.edges[e].v for e, _ in edges})
    for v in used_vertices:
        d.new_node(REAL, v)
    cnode = {}
    for cid, (a, b, _) in enumerate(crossings):
        cnode[cid] = d.new_node(CROSSING, -1, (a, b))
        d.ecross[a] += 1
        d.ecross[b] += 1
    # per node: list of (angle, dart)
    around: dict[int, list[tuple[float, int]]] = {}
    for e, pts in edges:
        ed = graph.edges[e]
        seq = sorted(hits[e])
        nodes = [d.vnode[ed.u]] + [cnode[c] for _, _, c in seq] + [d.vnode[ed.v]]
        # positions along the polyline used to find outgoing directions
        stops = [0.0] + [t for t, _, _ in seq] + [None]
        total = sum(math.dist(pts[i], pts[i + 1]) for i in range(len(pts) - 1))
        stops[-1] = total
        for i in range(len(nodes) - 1):
            a = d.new_pair(e, nodes[i], nodes[i + 1], 0)
            ang_out = _direction(pts, stops[i], +1)
            ang_in = _direction(pts, stops[i + 1], -1)
            around.setdefault(nodes[i], []).append((ang_out, a))
            around.setdefault(nodes[i + 1], []).append((ang_in, a + 1))
    for x, lst in around.items():
        lst.sort()
        for i in range(len(lst) - 1):
            if abs(lst[i][0] - lst[i + 1][0]) < 1e-9:
                raise InvalidInput(f"two darts leave node {x} in the same direction")
        darts = [y for _, y in lst]
        for i, y in enumerate(darts):
            d.nxt[y] = darts[(i + 1) % len(darts)]
            d.prv[y] = darts[i - 1]
        d.ndart[x] = darts[0]
    return d


def _direction(pts, at: float, sign: int) -> float:
    """Angle of the polyline leaving arclength position ``at`` forwards (+1) or backwards (-1)."""
    acc = 0.0
    for i in range(len(pts) - 1):
        p, q = pts[i], pts[i + 1]
        ln = math.dist(p, q)
        lo, hi = acc, acc + ln
        if sign > 0 and lo - EPS <= at < hi - 1e-12:
            return math.atan2(q[1] - p[1], q[0] - p[0])
        if sign < 0 and lo + 1e-12 < at <= hi + EPS:
            return math.atan2(p[1] - q[1], p[0] - q[0])
        acc = hi
    raise InvalidInput("direction outside polyline")
