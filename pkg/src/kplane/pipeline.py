"""Iterative exploration of drawings of nested ten-cycles with braided matchings.

Each reduced drawing has a labeled frontier cycle (vertex ids 0..9).  It is
extended by a new ten-cycle joined by the braided matching, every extension is
classified by dual flows, cleaned up (irrelevant faces are cut out and replaced
by uncrossable stars) and deduplicated under even rotations of the frontier.
A second extension with an uncrossable cycle tests whether the drawing can be
closed off.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import dcel
from .dcel import CROSSING, HUB, REAL, Drawing, InternalError
from .enumeration import BudgetExceeded, SearchOptions, SearchStats, _search
from .flow import FlowNetwork, max_flow
from .graphs import LabeledGraph, Tag, braided_partner

log = logging.getLogger(__name__)

POTENTIAL_FINAL, ACTIVE, PASSIVE, TRANSIT, IRRELEVANT = (
    "potential-final", "active", "passive", "transit", "irrelevant")
FRONTIER = list(range(10))
STAR = Tag("star")


class DeadDrawing(Exception):
    """The drawing has no potential final face (or loses a frontier vertex)."""


@dataclass
class FaceClassMap:
    fid: list[int]
    walks: list[list[int]]
    classes: list[str]
    flows: dict[int, int] = field(default_factory=dict)  # face -> flow into it (potential final) or out of it (active)
    parallel_arcs: int = 0

    def faces_of(self, *names: str) -> set[int]:
        return {f for f, c in enumerate(self.classes) if c in names}

    @property
    def potential_final(self) -> set[int]:
        return self.faces_of(POTENTIAL_FINAL)

    @property
    def active(self) -> set[int]:
        return self.faces_of(POTENTIAL_FINAL, ACTIVE)

    @property
    def relevant(self) -> set[int]:
        return self.faces_of(POTENTIAL_FINAL, ACTIVE, PASSIVE, TRANSIT)

    def counts(self) -> dict[str, int]:
        out = {c: 0 for c in (POTENTIAL_FINAL, ACTIVE, PASSIVE, TRANSIT, IRRELEVANT)}
        for c in self.classes:
            out[c] += 1
        return out


# ---------------------------------------------------------------------------
# flow tests

def _budgets(d: Drawing) -> list[int]:
    k, ecross, efake = d.k, d.ecross, d.efake
    return [k - ecross[e] - efake[e] for e in range(len(ecross))]


def face_network(d: Drawing, fid=None, walks=None, extra_nodes: int = 0):
    """Dual network: one node per face, one arc per side of every segment with
    capacity equal to the remaining budget of its edge.  Returns the network
    and the face index it was built from."""
    if fid is None:
        fid, walks = dcel.face_index(d)
    bud = _budgets(d)
    twin, dedge = d.twin, d.dedge
    tails, heads, caps = [], [], []
    for f, w in enumerate(walks):
        for z in w:
            c = bud[dedge[z]]
            if c > 0:
                g = fid[twin[z]]
                if g != f:
                    tails.append(f)
                    heads.append(g)
                    caps.append(c)
    net = FlowNetwork.from_arcs(len(walks) + extra_nodes, tails, heads, caps)
    return net, fid, walks


def _frontier_network(d: Drawing, frontier, fid, walks):
    live = [v for v in frontier if d.vnode[v] >= 0 and d.ndart[d.vnode[v]] >= 0]
    nf = len(walks)
    net, _, _ = face_network(d, fid, walks, 1 + len(live))
    s = nf
    for i, v in enumerate(live):
        nv = nf + 1 + i
        net.add_arc(s, nv, 1)
        for f in sorted({fid[z] for z in d.rotation(d.vnode[v])}):
            net.add_arc(nv, f, 1)
    return net, s


def has_common_face(d: Drawing, vertices) -> bool:
    """Whether some face can receive disjoint-capacity curves from all ``vertices``.

    Adding edges never helps, so a partial drawing failing this test has no
    completion with a potential final face.
    """
    fid, walks = dcel.face_index(d)
    need = len(vertices)
    touching = [0] * len(walks)
    for v in vertices:
        for f in {fid[z] for z in d.rotation(d.vnode[v])}:
            touching[f] += 1
    if max(touching) == need:
        return True
    bud = _budgets(d)
    twin, dedge = d.twin, d.dedge
    inflow = [sum(bud[dedge[z]] for z in w if fid[twin[z]] != f) for f, w in enumerate(walks)]
    net, s = _frontier_network(d, vertices, fid, walks)
    order = sorted(range(len(walks)), key=lambda f: -touching[f])
    for f in order:
        if inflow[f] + touching[f] >= need and max_flow(net, s, f, need) == need:
            return True
    return False


def potential_final_faces(d: Drawing, frontier=FRONTIER) -> set[int]:
    """Faces that can receive one curve from every frontier vertex."""
    fid, walks = dcel.face_index(d)
    net, s = _frontier_network(d, frontier, fid, walks)
    need = len(frontier)
    return {f for f in range(len(walks)) if max_flow(net, s, f, need) == need}


def classify_faces(d: Drawing, frontier=FRONTIER) -> FaceClassMap:
    fid, walks = dcel.face_index(d)
    nf = len(walks)
    net, s = _frontier_network(d, frontier, fid, walks)
    need = len(frontier)
    flows = {}
    pf = set()
    # a face can only be potential final if enough capacity reaches it
    inflow = [0] * nf
    for f, w in enumerate(walks):
        for z in w:
            g = fid[d.twin[z]]
            if g != f:
                inflow[f] += d.budget(d.dedge[z])
    touching = [set() for _ in range(nf)]
    for v in frontier:
        x = d.vnode[v]
        if x >= 0 and d.ndart[x] >= 0:
            for z in d.rotation(x):
                touching[fid[z]].add(v)
    for f in range(nf):
        if inflow[f] + len(touching[f]) < need:
            continue
        val = max_flow(net, s, f, need)
        if val == need:
            pf.add(f)
            flows[f] = val
    if not pf:
        raise DeadDrawing("no potential final face")
    classes = [IRRELEVANT] * nf
    for f in pf:
        classes[f] = POTENTIAL_FINAL
    single, _, _ = face_network(d, fid, walks)
    # super-sink over all potential final faces as a quick necessary test
    fnet = single.copy()
    t = fnet.add_node()
    for f in sorted(pf):
        fnet.add_arc(f, t, need)
    for f in range(nf):
        if f in pf:
            continue
        out = sum(d.budget(d.dedge[z]) for z in walks[f] if fid[d.twin[z]] != f)
        if out < 3 or max_flow(fnet, f, t, 3) < 3:
            continue
        for g in sorted(pf):
            val = max_flow(single, f, g, 3)
            if val >= 3:
                classes[f] = ACTIVE
                flows[f] = val
                break
    active = {f for f in range(nf) if classes[f] in (POTENTIAL_FINAL, ACTIVE)}
    # dual arcs with positive capacity
    arcs = [[(z, fid[d.twin[z]]) for z in walks[f] if d.budget(d.dedge[z]) > 0 and fid[d.twin[z]] != f]
            for f in range(nf)]
    parallel = 0
    for f in range(nf):
        targets = [g for _, g in arcs[f]]
        parallel += len(targets) - len(set(targets))
    near_active = [any(g in active for _, g in arcs[f]) for f in range(nf)]
    fset = set(frontier)
    for f in range(nf):
        if classes[f] != IRRELEVANT:
            continue
        for v in sorted(touching[f] & fset):
            ok = False
            for z, g in arcs[f]:
                e = d.dedge[z]
                if d.eu[e] == v or d.ev[e] == v:
                    continue
                if g in active or near_active[g]:
                    ok = True
                    break
            if ok:
                classes[f] = PASSIVE
                break
    ap = {f for f in range(nf) if classes[f] in (POTENTIAL_FINAL, ACTIVE, PASSIVE)}
    for f in range(nf):
        if classes[f] != IRRELEVANT:
            continue
        n_active = sum(1 for _, g in arcs[f] if g in active)
        n_ap = sum(1 for _, g in arcs[f] if g in ap)
        if n_active >= 1 and n_ap >= 2:
            classes[f] = TRANSIT
    return FaceClassMap(fid, walks, classes, flows, parallel)


# ---------------------------------------------------------------------------
# cleanup

def remove_region(d: Drawing, cmap: FaceClassMap, frontier=FRONTIER) -> Drawing:
    """Cut out irrelevant faces and nodes and seal each evacuated region with an
    uncrossable star.  Returns a compact drawing whose frontier vertices are
    renumbered 0..9."""
    w = d.deep_copy()
    fid = cmap.fid
    rel = cmap.relevant
    fset = set(frontier)
    if len(rel) == len(cmap.walks):
        return compact(w, frontier)
    twin, org = w.twin, w.org
    live = w.live_darts()
    right_rel = {z: fid[z] in rel for z in live}
    kept = {z for z in live if right_rel[z] or right_rel[twin[z]]}
    nodes = [x for x in range(len(w.kind)) if w.ndart[x] >= 0]
    candidates = []
    for x in nodes:
        rot = w.rotation(x)
        rf = [fid[z] for z in rot if fid[z] in rel]
        if w.kind[x] == REAL and w.nlabel[x] in fset:
            continue
        if len(set(rf)) == 1 and len(rf) == 1:
            candidates.append(x)
    for z in live:
        if z not in kept:
            w.detach(z)
            org[z] = -1
    for x in frontier:
        nx_ = w.vnode[x]
        if nx_ < 0 or w.ndart[nx_] < 0:
            raise DeadDrawing(f"frontier vertex {x} lies in the irrelevant region")
    # contract irrelevant nodes that sit on a single relevant face
    for x in candidates:
        rot = w.rotation(x)
        if len(rot) != 2:
            continue
        z1 = rot[0] if right_rel[rot[0]] else rot[1]
        a2 = rot[1] if z1 == rot[0] else rot[0]
        if not right_rel[z1] or right_rel[a2]:
            continue
        if len(w.face_walk(z1)) < 4:
            continue  # removing x would leave a lens
        y = twin[a2]
        w2 = twin[z1]
        if org[y] == org[w2]:
            continue
        ey, ez = w.dedge[y], w.dedge[z1]
        p_cross = w.kind[org[y]] == CROSSING
        q_cross = w.kind[org[w2]] == CROSSING
        if p_cross != q_cross:
            # keep the label that leaves the crossing node at the far end intact
            keep = ey if p_cross else ez
        else:
            keep = ey if w.budget(ey) >= w.budget(ez) else ez
        twin[y] = w2
        twin[w2] = y
        if keep == ey:
            w.ddir[w2] = 1 - w.ddir[y]
        else:
            w.ddir[y] = 1 - w.ddir[w2]
        w.dedge[y] = w.dedge[w2] = keep
        w.detach(a2)
        w.detach(z1)
        org[a2] = org[z1] = -1
        right_rel[w2] = False
    # seal every evacuated face with a star
    fid2, walks2 = dcel.face_index(w)
    for walk in walks2:
        if any(right_rel.get(z, False) for z in walk):
            continue
        h = w.new_node(HUB)
        spokes = []
        for z in walk:
            pe = w.add_edge(-1, -1, uncrossable=True, tag=STAR, pseudo=True)
            a = w.new_pair(pe, w.org[z], h, 0)
            w.attach(a, z)
            spokes.append(a + 1)
        for a in reversed(spokes):
            w.attach(a, w.ndart[h] if w.ndart[h] >= 0 else None)
    errs = dcel.validate(w, reduced=True)
    if errs:
        raise InternalError(f"cleanup produced an invalid drawing: {errs[:3]}")
    return compact(w, frontier)


def compact(d: Drawing, frontier=FRONTIER) -> Drawing:
    """Renumber nodes, darts, vertices and edges densely; frontier -> 0..9."""
    nodes = [x for x in range(len(d.kind)) if d.ndart[x] >= 0]
    fpos = {v: j for j, v in enumerate(frontier)}
    vmap = {}
    others = []
    for x in nodes:
        if d.kind[x] == REAL:
            v = d.nlabel[x]
            if v in fpos:
                vmap[v] = fpos[v]
            else:
                others.append(v)
    for i, v in enumerate(others):
        vmap[v] = len(frontier) + i
    labels = [f"v_{j}" for j in range(len(frontier))] + [f"o_{i}" for i in range(len(others))]
    live = d.live_darts()
    edges = sorted({d.dedge[z] for z in live})
    for x in nodes:
        if d.kind[x] == CROSSING:
            edges.extend(e for e in d.ncross[x] if e >= 0)
    edges = sorted(set(edges))
    emap = {e: i for i, e in enumerate(edges)}
    out = Drawing(LabeledGraph(labels, []), d.k)
    out.eu = [vmap.get(d.eu[e], -1) for e in edges]
    out.ev = [vmap.get(d.ev[e], -1) for e in edges]
    out.ecross = [d.ecross[e] for e in edges]
    out.efake = [d.efake[e] for e in edges]
    out.epseudo = [d.epseudo[e] for e in edges]
    out.etag = [d.etag[e] for e in edges]
    nid = {}
    for x in nodes:
        if d.kind[x] == REAL:
            nid[x] = out.new_node(REAL, vmap[d.nlabel[x]])
        elif d.kind[x] == CROSSING:
            a, b = d.ncross[x]
            nid[x] = out.new_node(CROSSING, -1, (emap.get(a, -1), emap.get(b, -1)))
        else:
            nid[x] = out.new_node(HUB)
    did = {z: i for i, z in enumerate(live)}
    for z in live:
        out.org.append(nid[d.org[z]])
        out.twin.append(did[d.twin[z]])
        out.nxt.append(did[d.nxt[z]])
        out.prv.append(did[d.prv[z]])
        out.dedge.append(emap[d.dedge[z]])
        out.ddir.append(d.ddir[z])
        out.zone.append(-1)
    for x in nodes:
        out.ndart[nid[x]] = did[d.ndart[x]]
    return out


def reduce_drawing(d: Drawing, frontier=FRONTIER) -> tuple[Drawing, FaceClassMap]:
    """Classify and clean up; raises :class:`DeadDrawing`."""
    cmap = classify_faces(d, frontier)
    r = remove_region(d, cmap, frontier)
    return r, classify_faces(r, FRONTIER)


# ---------------------------------------------------------------------------
# extension

def extend_with_cycle(d: Drawing, uncrossable: bool = False, cmap: FaceClassMap | None = None,
                      sink=None, limit: int | None = None, budget: int | None = None,
                      stats: SearchStats | None = None, prune_partial: bool = True) -> list[Drawing]:
    """All drawings that add ten new vertices, the braided matching from the
    frontier and a new ten-cycle (uncrossable if asked), with new vertices only
    in active faces.  The new cycle's vertex ids are returned via the drawing
    labels ``w_0..w_9``; use :func:`new_frontier` to find them.
    """
    if cmap is None:
        cmap = classify_faces(d, FRONTIER)
    stats = stats if stats is not None else SearchStats()
    x = d.deep_copy()
    fid = cmap.fid
    for z in range(len(x.zone)):
        x.zone[z] = fid[z]
    allowed = frozenset(cmap.active)
    if not allowed:
        return []
    base = x.n_graph
    ws = [x.add_vertex(f"w_{j}") for j in range(10)]
    matching = [x.add_edge(j, ws[braided_partner(j)], False, Tag("matching")) for j in range(10)]
    cycle = [x.add_edge(ws[j], ws[(j + 1) % 10], uncrossable, Tag("cycle")) for j in range(10)]
    found: list[Drawing] = []

    def collect(child):
        if sink is not None:
            sink(child)
        else:
            found.append(child)
        stats.drawings += 1
        return limit is not None and stats.drawings >= limit

    def prune(part: Drawing, left: int) -> bool:
        placed = [v for v in ws if part.vnode[v] >= 0]
        return len(placed) >= 2 and not has_common_face(part, placed)

    opts = SearchOptions(k=x.k, budget=budget, allowed_zones=allowed, prune=prune if prune_partial else None)
    t0 = time.perf_counter()
    try:
        _search(x, matching + cycle, opts, stats, collect, 0)
    finally:
        stats.seconds += time.perf_counter() - t0
    assert base == ws[0]
    return found


def new_frontier(d: Drawing) -> list[int]:
    return [d.labels.index(f"w_{j}") for j in range(10)]


def canonical_key(d: Drawing, orientations: int = 2) -> str:
    return dcel.canonical_form(d, FRONTIER, parity=True, orientations=orientations)


def base_drawing() -> Drawing:
    """Plane uncrossable D_1 with vertex ids 0..9."""
    from .constructions import nested_drawing

    return compact(nested_drawing(1), FRONTIER)


# ---------------------------------------------------------------------------
# driver

@dataclass
class PipelineReport:
    iterations: list[dict] = field(default_factory=list)
    classes: dict[str, int] = field(default_factory=dict)  # canonical hash -> level
    final_hits: list[str] = field(default_factory=list)
    oriented_classes: int = 0
    complete: bool = True
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "reduced_drawings": len(self.classes),
            "reduced_drawings_oriented": self.oriented_classes,
            "final_hits": sorted(self.final_hits),
            "complete": self.complete,
            "seconds": round(self.seconds, 3),
        }


def process_child(child: Drawing):
    """Reduce one raw extension; returns (canonical key, reduced drawing) or None."""
    try:
        r, _ = reduce_drawing(child, new_frontier(child))
    except DeadDrawing:
        return None
    return canonical_key(r), r


def expand(d: Drawing, budget: int | None = None) -> dict:
    """Children (by canonical key) and the final-extension outcome of one drawing."""
    cmap = classify_faces(d, FRONTIER)
    children: dict[str, Drawing] = {}
    counts = {"raw": 0, "dead": 0}

    def sink(child):
        counts["raw"] += 1
        res = process_child(child)
        if res is None:
            counts["dead"] += 1
            return
        key, r = res
        if key not in children:
            children[key] = r

    extend_with_cycle(d, False, cmap, sink=sink, budget=budget)
    final = False
    if counts["raw"]:
        st = SearchStats()
        final = bool(extend_with_cycle(d, True, cmap, limit=1, budget=budget, stats=st))
    return {"children": children, "final": final, **counts}


def _expand_json(args):
    obj, budget = args
    res = expand(dcel.from_json(obj), budget)
    return ({k: dcel.to_json(v) for k, v in res["children"].items()}, res["final"], res["raw"], res["dead"])


def run_pipeline(max_iter: int = 1, closure: bool = False, threads: int = 1, state_dir=None,
                 budget: int | None = None) -> PipelineReport:
    """Breadth-first search over reduced drawings starting from plane D_1."""
    t0 = time.perf_counter()
    report = PipelineReport()
    store: dict[str, Drawing] = {}
    level: list[str] = []
    start_iter = 0
    if state_dir is not None and (Path(state_dir) / "index.json").exists():
        store, level, start_iter, report = _load_state(Path(state_dir))
    else:
        b = base_drawing()
        key = canonical_key(b)
        store[key] = b
        report.classes[dcel.canonical_hash(key)] = 0
        level = [key]
        report.iterations.append({"iteration": 0, "new": 1, "total": 1})
        if state_dir is not None:
            _save_state(Path(state_dir), store, level, 0, report)
    it = start_iter
    while level and (closure or it < max_iter):
        it += 1
        nxt: dict[str, Drawing] = {}
        raw = dead = 0
        todo = sorted(level)
        if threads > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(threads) as ex:
                results = list(ex.map(_expand_json, [(dcel.to_json(store[k]), budget) for k in todo]))
            results = [({c: dcel.from_json(o) for c, o in ch.items()}, f, r, dd) for ch, f, r, dd in results]
        else:
            results = []
            for k in todo:
                res = expand(store[k], budget)
                results.append((res["children"], res["final"], res["raw"], res["dead"]))
        for k, (children, final, r, dd) in zip(todo, results):
            raw += r
            dead += dd
            if final:
                report.final_hits.append(dcel.canonical_hash(k))
            for ck in sorted(children):
                if ck not in store and ck not in nxt:
                    nxt[ck] = children[ck]
        for ck, dr in nxt.items():
            store[ck] = dr
            report.classes[dcel.canonical_hash(ck)] = it
        level = sorted(nxt)
        report.iterations.append({"iteration": it, "expanded": len(todo), "raw_extensions": raw,
                                  "dead": dead, "new": len(nxt), "total": len(store)})
        log.info("iteration %d: %s", it, report.iterations[-1])
        if state_dir is not None:
            _save_state(Path(state_dir), store, level, it, report)
    report.complete = not level if closure else True
    report.oriented_classes = sum(oriented_multiplicity(dr) for dr in store.values())
    report.seconds = time.perf_counter() - t0
    report.store = store  # type: ignore[attr-defined]
    return report


def oriented_multiplicity(d: Drawing) -> int:
    """1 if the drawing equals its mirror image under the allowed relabelings, else 2."""
    from .constructions import mirror

    return 1 if canonical_key(d, 1) == canonical_key(mirror(d), 1) else 2


def _save_state(root: Path, store, level, it, report) -> None:
    root.mkdir(parents=True, exist_ok=True)
    for key, dr in store.items():
        p = root / f"{dcel.canonical_hash(key)}.json"
        if not p.exists():
            p.write_text(json.dumps({"canonical": key, "drawing": dcel.to_json(dr)}, sort_keys=True))
    index = {"iteration": it, "level": [dcel.canonical_hash(k) for k in level],
             "classes": report.classes, "final_hits": report.final_hits, "iterations": report.iterations}
    tmp = root / "index.json.tmp"
    tmp.write_text(json.dumps(index, sort_keys=True, indent=1))
    os.replace(tmp, root / "index.json")


def _load_state(root: Path):
    index = json.loads((root / "index.json").read_text())
    store = {}
    by_hash = {}
    for p in sorted(root.glob("*.json")):
        if p.name == "index.json":
            continue
        obj = json.loads(p.read_text())
        store[obj["canonical"]] = dcel.from_json(obj["drawing"])
        by_hash[p.stem] = obj["canonical"]
    report = PipelineReport(iterations=index["iterations"], classes=index["classes"],
                            final_hits=index["final_hits"])
    level = [by_hash[h] for h in index["level"]]
    return store, level, index["iteration"], report
