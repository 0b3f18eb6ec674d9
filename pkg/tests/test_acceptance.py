"""One test per acceptance criterion; each records a PASS/FAIL line that is
printed in the terminal summary."""

import functools
import random
import shutil
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest

import conftest
from kplane import dcel, graphs
from kplane import pipeline as P
from kplane.audit import admissible_drawings, assessments, density_verdict, resolve_claims, structural_report
from kplane.constructions import nested_drawing
from kplane.enumeration import SearchStats, enumerate_drawings, is_k_planar
from kplane.graphs import Edge, LabeledGraph
from kplane.saturation import doubly_crossed_separation, drawing_saturated, graph_maximal

from oracles import brute_force_drawings, drawing_key, relabeled_key, small_connected_graphs

CHECKPOINT = Path(__file__).resolve().parent.parent / "artifacts" / "pipeline"


def criterion(n, title):
    """Record ``PASS``/``FAIL`` with the detail string the test returns."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            try:
                ok, detail = fn(*a, **kw)
            except Exception as exc:
                conftest.ACCEPTANCE[n] = f"criterion {n} ({title}): FAIL - {type(exc).__name__}: {exc}"
                raise
            conftest.ACCEPTANCE[n] = f"criterion {n} ({title}): {'PASS' if ok else 'FAIL'} - {detail}"
            assert ok, detail
        return run
    return wrap


def _graph(n, edges):
    return LabeledGraph([str(i) for i in range(n)], [Edge(u, v) for u, v in edges])


@criterion(1, "gadget uniqueness")
def test_gadget_uniqueness(gadget_drawings):
    g = graphs.gen_gadget_x()
    ds = gadget_drawings
    saturated = all(drawing_saturated(d) for d in ds)
    classes = {dcel.canonical_form(d) for d in ds}
    gx = g.to_networkx()
    autos = list(nx.algorithms.isomorphism.GraphMatcher(gx, gx).isomorphisms_iter())
    identity = list(range(g.n))
    found = {relabeled_key(d, identity) for d in ds}
    orbit = {relabeled_key(ds[0], a, m) for a in autos for m in (False, True)}
    ok = len(ds) == 32 and saturated and len(classes) == 1 and orbit == found
    return ok, (f"{len(ds)} labeled drawings, all saturated={saturated}, canonical classes={len(classes)}, "
                f"Aut(X)-and-mirror orbit of one drawing = enumerated set: {orbit == found}")


def _removal_classes(r):
    reps = []
    for removed in combinations(combinations(range(9), 2), r):
        h = nx.Graph(list(removed))
        if not any(nx.is_isomorphic(h, x) for x in reps):
            reps.append(h)
    return [sorted(tuple(sorted(e)) for e in h.edges()) for h in reps]


@criterion(2, "K9 robustness")
def test_k9_robustness():
    st = SearchStats()
    k9 = is_k_planar(graphs.gen_k9_minus(), 2, stats=st)
    prefiltered = not k9 and st.nodes == 0
    counts, verdicts = [], []
    for r in (1, 2, 3):
        reps = _removal_classes(r)
        counts.append(len(reps))
        for removed in reps:
            verdicts.append(is_k_planar(graphs.gen_k9_minus(removed), 2))
    ok = prefiltered and counts == [1, 2, 5] and not any(verdicts)
    return ok, (f"K9 rejected by edge bound without search: {prefiltered}; removal classes {counts}; "
                f"{sum(not v for v in verdicts)}/{len(verdicts)} representatives not 2-planar")


@criterion(3, "construction counts")
def test_construction_counts():
    bad = []
    for k in range(2, 11):
        g = graphs.gen_gk(k)
        if (g.n, g.m) != (10 * k + 140, 20 * k + 630):
            bad.append((k, g.n, g.m))
    return not bad, f"k=2..10 checked, mismatches: {bad}"


@criterion(4, "canonical G_2 drawing saturated")
def test_canonical_drawing_saturated(g2_drawing):
    d = g2_drawing
    valid = dcel.validate(d) == []
    sat = drawing_saturated(d)
    g = graphs.gen_gk(2)
    pairs = g.non_edges()
    sample = random.Random(2).sample(pairs, 20)
    sampled = all(doubly_crossed_separation(d, u, v) for u, v in sample)
    every = sum(doubly_crossed_separation(d, u, v) for u, v in pairs)
    ok = valid and sat and sampled
    return ok, (f"valid={valid}, saturated={sat}, 20 sampled non-adjacent pairs separated={sampled} "
                f"(all pairs: {every}/{len(pairs)})")


def _pipeline_report(tmp_path):
    """Level-two run, resumed from the shipped checkpoint when present."""
    state = tmp_path / "state"
    if (CHECKPOINT / "index.json").exists():
        shutil.copytree(CHECKPOINT, state)
    return P.run_pipeline(max_iter=2, state_dir=state), (CHECKPOINT / "index.json").exists()


@criterion(5, "pipeline desk run")
def test_pipeline_desk_run(tmp_path):
    rep, resumed = _pipeline_report(tmp_path)
    store = rep.store
    nested, _ = P.reduce_drawing(nested_drawing(2), list(range(10, 20)))
    nkey = P.canonical_key(nested)
    nhash = dcel.canonical_hash(nkey)
    invalid = [k for k, d in store.items() if dcel.validate(d, reduced=True)]
    final_recorded = nhash in rep.final_hits
    final_now = bool(P.extend_with_cycle(store[nkey], True, limit=1)) if nkey in store else False
    # re-derive level one from scratch and spot-expand two level-one drawings
    fresh = P.run_pipeline(max_iter=1)
    level1 = {h for h, lv in rep.classes.items() if lv == 1}
    level1_match = set(fresh.classes) - {h for h, lv in fresh.classes.items() if lv == 0} == level1
    spot = sorted(k for k in store if rep.classes[dcel.canonical_hash(k)] == 1)[:2]
    children_known = all(set(P.expand(store[k])["children"]) <= set(store) for k in spot)
    ok = (len(store) > 0 and nkey in store and not invalid and final_recorded and final_now
          and level1_match and children_known and len(rep.iterations) == 3)
    it = rep.iterations
    return ok, (f"{len(store)} reduced drawings ({rep.oriented_classes} counting mirror images separately), "
                f"per level {[x['new'] for x in it]}; nested class present={nkey in store}, "
                f"uncrossable extension of nested class: recorded={final_recorded} recomputed={final_now}; "
                f"invalid={len(invalid)}; final hits={len(rep.final_hits)}; level one recomputed "
                f"identical={level1_match}; spot expansions closed={children_known}; "
                f"{'resumed from checkpoint' if resumed else 'computed from scratch'}")


@criterion(6, "density at small n")
def test_density_small_n():
    maximal = {}
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n not in (5, 6):
            continue
        lg = _graph(n, sorted(tuple(sorted(e)) for e in g.edges()))
        res = graph_maximal(lg, 2)
        assert not res.inconclusive
        if res.maximal:
            maximal.setdefault(n, []).append(lg)
    all_dense = all(g.m >= 2 * g.n for gs in maximal.values() for g in gs)
    verdicts = all(density_verdict(g, maximal=True).status == "pass" for gs in maximal.values() for g in gs)
    k5 = graph_maximal(graphs.gen_complete(5), 2).maximal and graphs.gen_complete(5).m == 10
    found = {n: [(g.n, g.m) for g in gs] for n, gs in sorted(maximal.items())}
    ok = all_dense and verdicts and bool(k5) and set(found) == {5, 6}
    return ok, f"maximal graphs found {found}; m >= 2n for all: {all_dense}; K5 equality m = 2n: {bool(k5)}"


@criterion(7, "charging-scheme properties")
def test_charging_scheme():
    fixtures = [graphs.gen_complete(5), graphs.gen_complete(6)]
    total = empty = 0
    problems = []
    for g in fixtures:
        for d in admissible_drawings(g):
            total += 1
            if not structural_report(d, admissible=True).passed:
                problems.append((g.n, "structure"))
            led = resolve_claims(assessments(d))
            if not led.claims and not led.assessed:
                empty += 1
            if led.doubly_claimed() or led.quota_failures() or led.over_assessed_edges() \
                    or led.degree_five_violations() or led.unresolved:
                problems.append((g.n, led.as_dict()))
    return not problems, (f"{total} admissible drawings of the maximal fixtures K5, K6; ledger problems "
                          f"{len(problems)}; {empty}/{total} ledgers empty (no vertex of degree below four)")


@criterion(8, "engine soundness")
def test_engine_soundness():
    mismatches = []
    drawings = bad_invariant = 0
    graphs_checked = 0
    for n, edges in small_connected_graphs(6):
        graphs_checked += 1
        found = enumerate_drawings(_graph(n, edges), 2)
        drawings += len(found)
        for d in found:
            if any(e.startswith(("euler", "twin")) for e in dcel.validate(d)):
                bad_invariant += 1
        got = {drawing_key(d) for d in found}
        if got != brute_force_drawings(n, edges, 2):
            mismatches.append((n, edges))
    ok = not mismatches and not bad_invariant
    return ok, (f"{graphs_checked} connected graphs with <= 6 edges, {drawings} drawings; oracle mismatches "
                f"{len(mismatches)}; Euler/twin violations {bad_invariant}")
