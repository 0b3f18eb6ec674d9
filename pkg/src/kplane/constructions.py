"""Scripted drawings: nested ten-cycles with braided matchings, and the
saturated drawing of G_k assembled from them plus gadget copies."""

from __future__ import annotations

import math

from . import dcel, geometry
from .dcel import Drawing, InternalError
from .graphs import (LabeledGraph, braided_partner, cycle_vertex, gadget_copy_vertices, gen_gk,
                     gen_gk_minus, InvalidInput)

STEP = 2 * math.pi / 10


def _radius(i: int, k: int) -> float:
    # outermost cycle at 3, innermost at 2, evenly spaced
    return 3.0 if k == 1 else 3.0 - (i - 1) / (k - 1)


def _arc(r: float, t0: float, t1: float, samples: int = 13) -> list:
    return [geometry.polar(r, t0 + (t1 - t0) * s / samples) for s in range(1, samples)]


def _spiral(r0: float, r1: float, t0: float, t1: float, samples: int = 25) -> list:
    return [geometry.polar(r0 + (r1 - r0) * s / samples, t0 + (t1 - t0) * s / samples) for s in range(1, samples)]


def _bump(r: float, peak: float, t0: float, t1: float, samples: int = 25) -> list:
    out = []
    for s in range(1, samples):
        f = s / samples
        out.append(geometry.polar(r + (peak - r) * math.sin(math.pi * f), t0 + (t1 - t0) * f))
    return out


def _nested_geometry(g: LabeledGraph, k: int, length_two: bool):
    points = {}
    for i in range(1, k + 1):
        for j in range(10):
            points[cycle_vertex(i, j)] = geometry.polar(_radius(i, k), j * STEP)
    curves = {}
    for e, ed in enumerate(g.edges):
        kind, i = ed.tag.kind, ed.tag.index
        if kind == "cycle":
            ju, jv = ed.u % 10, ed.v % 10
            t0 = ju * STEP
            t1 = t0 + STEP if jv == (ju + 1) % 10 else t0 - STEP
            curves[e] = _arc(_radius(i, k), t0, t1)
        elif kind == "matching":
            j, jp = ed.u % 10, ed.v % 10
            t0 = j * STEP
            t1 = t0 - 2 * STEP if j % 2 == 0 else t0 + 2 * STEP
            assert braided_partner(j) == jp
            curves[e] = _spiral(_radius(i, k), _radius(i + 1, k), t0, t1)
        elif kind == "length_two" and length_two:
            j = ed.u % 10
            r = _radius(i, k)
            peak = r + 0.6 if i == 1 else r - 0.6
            curves[e] = _bump(r, peak, j * STEP, (j + 2) * STEP)
        else:
            curves[e] = None
    return points, curves


def nested_drawing(k: int, last_uncrossable: bool = False) -> Drawing:
    """The nested drawing of G_k^-: concentric ten-cycles, each braided
    matching edge crossed twice, cycle edges uncrossed."""
    g = gen_gk_minus(k, last_uncrossable)
    points, curves = _nested_geometry(g, k, False)
    return geometry.planarize(g, points, curves, 2)


def mirror(d: Drawing) -> Drawing:
    """The same drawing with every rotation reversed."""
    c = d.copy()
    c.nxt, c.prv = c.prv, c.nxt
    return c


def glue_gadget(a: Drawing, b: Drawing, vmap: dict[int, int], into_left: bool) -> Drawing:
    """Paste a drawing ``b`` of X onto the drawn edge vmap[6]-vmap[7] of ``a``.

    The body of ``b`` goes into the face on the left of the dart from vmap[6]
    to vmap[7] (right when ``into_left`` is false); the face of ``b`` to the
    right of its dart x6->x7 is merged with that face.  Gadget vertices other
    than x6, x7 must be undrawn in ``a``; gadget edges map through ``vmap``.
    """
    if not into_left:
        return mirror(glue_gadget(mirror(a), b, vmap, True))
    a = a.copy()
    ea = a.edge_id(vmap[6], vmap[7])
    xa, xb = a.vnode[vmap[6]], a.vnode[vmap[7]]
    da = next((y for y in a.rotation(xa) if a.dedge[y] == ea), -1)
    if da < 0 or a.kind[a.org[a.twin[da]]] != dcel.REAL:
        raise InvalidInput("gadget base edge must be drawn uncrossed")
    db = a.twin[da]
    bx6, bx7 = b.vnode[6], b.vnode[7]
    eb = b.edge_id(6, 7)
    dx = next(y for y in b.rotation(bx6) if b.dedge[y] == eb)
    if b.org[b.twin[dx]] != bx7:
        raise InvalidInput("gadget drawing has x6x7 crossed")
    dy = b.twin[dx]
    # node and dart maps
    nmap = {bx6: xa, bx7: xb}
    for x in range(len(b.kind)):
        if b.ndart[x] < 0 or x in nmap:
            continue
        if b.kind[x] == dcel.REAL:
            nmap[x] = a.new_node(dcel.REAL, vmap[b.nlabel[x]])
        else:
            p, q = b.ncross[x]
            nmap[x] = a.new_node(dcel.CROSSING, -1, (_map_edge(a, b, p, vmap), _map_edge(a, b, q, vmap)))
    bdarts = [y for y in b.live_darts() if y not in (dx, dy)]
    base = len(a.org)
    dmap = {y: base + i for i, y in enumerate(bdarts)}
    emap = {}
    for y in bdarts:
        e = b.dedge[y]
        if e not in emap:
            emap[e] = _map_edge(a, b, e, vmap)
        g = emap[e]
        same = vmap[b.eu[e]] == a.eu[g]
        a.org.append(nmap[b.org[y]])
        a.twin.append(dmap[b.twin[y]])
        a.dedge.append(g)
        a.ddir.append(b.ddir[y] if same else 1 - b.ddir[y])
        a.zone.append(-1)
        a.nxt.append(-1)
        a.prv.append(-1)
    for y in bdarts:
        x = b.org[y]
        if x in (bx6, bx7):
            continue
        a.nxt[dmap[y]] = dmap[b.nxt[y]]
        a.prv[dmap[y]] = dmap[b.prv[y]]
        a.ndart[nmap[x]] = dmap[b.ndart[x]] if b.ndart[x] not in (dx, dy) else dmap[b.nxt[b.ndart[x]]]
    # splice the rotations at the two shared vertices
    seq6 = [dmap[y] for y in b.rotation(bx6)[1:]] if b.rotation(bx6)[0] == dx else None
    if seq6 is None:
        r = b.rotation(bx6)
        i = r.index(dx)
        seq6 = [dmap[y] for y in r[i + 1:] + r[:i]]
    r = b.rotation(bx7)
    i = r.index(dy)
    seq7 = [dmap[y] for y in r[i + 1:] + r[:i]]
    nxt_a = a.nxt[da]
    for y in seq6:
        a.attach(y, nxt_a)
    for y in seq7:
        a.attach(y, db)
    for e, g in emap.items():
        a.ecross[g] = b.ecross[e]
    return a


def _map_edge(a: Drawing, b: Drawing, e: int, vmap) -> int:
    return a.edge_id(vmap[b.eu[e]], vmap[b.ev[e]])


def canonical_gk_drawing(k: int, gadget: Drawing, sides: tuple[str, str] = ("outer", "inner")) -> Drawing:
    """Saturated drawing of G_k: nested cycles, length-two edges bulging away
    from the annulus, and a copy of ``gadget`` on every edge of D_1 and D_k.

    ``sides`` says whether the gadgets of D_1 / D_k sit on the outer or inner
    side of their cycle.
    """
    g = gen_gk(k)
    points, curves = _nested_geometry(g, k, True)
    d = geometry.planarize(g, points, curves, 2)
    # give the planarization its own edge table so glue can look edges up
    d = d.deep_copy()
    for copy_id in range(20):
        vmap = gadget_copy_vertices(k, copy_id)
        i = 1 if copy_id < 10 else k
        side = sides[0] if i == 1 else sides[1]
        # cycle edges of D_i run counterclockwise from v_j to v_{j+1}; going
        # from the lower id to the higher one is counterclockwise except for j = 9
        j = copy_id % 10
        ccw = j != 9
        # the outer side is on the right of a counterclockwise dart
        into_left = (side == "inner") == ccw
        d = glue_gadget(d, gadget, vmap, into_left)
    errs = dcel.validate(d)
    if errs:
        raise InternalError(f"glued drawing is invalid: {errs[:3]}")
    return d
