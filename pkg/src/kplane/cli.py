"""Command line entry point: ``kplane <command> ...``.

Exit codes: 0 the checked property holds, 1 it fails, 2 invalid input,
3 inconclusive (node budget exhausted).  Result artifacts go to stdout or
``--out``; timings and node counts go to stderr or ``--stats`` so results
stay diffable.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

from . import dcel, graphs
from .enumeration import BudgetExceeded, SearchStats, default_budget, enumerate_drawings, is_k_planar
from .graphs import InvalidInput

OK, FAIL, INVALID, INCONCLUSIVE = 0, 1, 2, 3

log = logging.getLogger("kplane")


def resolve_graph(name: str) -> graphs.LabeledGraph:
    """An edge-list file, or a shortcut: ``k<n>``, ``c<n>``, ``gadget-x``, ``x-plus``."""
    p = Path(name)
    if p.exists():
        return graphs.read_edge_list(p)
    m = re.fullmatch(r"k(\d+)", name)
    if m:
        return graphs.gen_complete(int(m.group(1)))
    m = re.fullmatch(r"c(\d+)", name)
    if m:
        return graphs.gen_cycle(int(m.group(1)))
    if name == "gadget-x":
        return graphs.gen_gadget_x()
    if name == "x-plus":
        return graphs.gen_x_plus()
    raise InvalidInput(f"no such graph file or shortcut: {name}")


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for part in filter(None, text.split(",")):
        try:
            a, b = part.split("-")
            out.append((int(a), int(b)))
        except ValueError:
            raise InvalidInput(f"bad vertex pair {part!r}, expected u-v") from None
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _stats(args, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if getattr(args, "stats", None):
        Path(args.stats).write_text(text)
    else:
        sys.stderr.write(text)


def _budget(args) -> int | None:
    return args.budget if getattr(args, "budget", None) is not None else default_budget()


# ---------------------------------------------------------------------------
# commands

def cmd_gen(args) -> int:
    fam = args.family
    if fam == "cycle":
        g = graphs.gen_cycle(args.n if args.n is not None else 10)
    elif fam == "complete":
        if args.n is None:
            raise InvalidInput("complete needs --n")
        g = graphs.gen_complete(args.n)
    elif fam == "gadget-x":
        g = graphs.gen_gadget_x()
    elif fam == "x-plus":
        g = graphs.gen_x_plus()
    elif fam == "k9-minus":
        g = graphs.gen_k9_minus(_parse_pairs(args.remove or ""))
    elif fam == "gk":
        if args.k is None:
            raise InvalidInput("gk needs --k")
        g = graphs.gen_gk(args.k)
    elif fam == "gk-minus":
        if args.k is None:
            raise InvalidInput("gk-minus needs --k")
        g = graphs.gen_gk_minus(args.k, args.last_uncrossable)
    else:
        raise InvalidInput(f"unknown family {fam}")
    _emit(graphs.dumps(g), args.out)
    print(f"n={g.n} m={g.m}", file=sys.stderr if not args.out else sys.stdout)
    return OK


def cmd_enumerate(args) -> int:
    g = resolve_graph(args.graph)
    fixed = None
    if args.cycle:
        fixed = [int(x) for x in args.cycle.split(",")]
    stats = SearchStats()
    try:
        found = enumerate_drawings(g, args.k, dedup=args.dedup, fixed_cycle=fixed, parity=args.parity,
                                   budget=_budget(args), max_crossings=args.max_crossings, stats=stats,
                                   limit=args.limit)
    except BudgetExceeded as exc:
        stats.complete = False
        _stats(args, stats.as_dict())
        print(f"inconclusive: {exc}")
        return INCONCLUSIVE
    if args.out:
        root = Path(args.out)
        root.mkdir(parents=True, exist_ok=True)
        for i, d in enumerate(found):
            (root / f"drawing_{i:04d}.json").write_text(dcel.dumps_json(d))
    print(f"drawings: {len(found)}")
    _stats(args, stats.as_dict())
    return OK


def cmd_pipeline(args) -> int:
    from .pipeline import run_pipeline

    rep = run_pipeline(max_iter=args.max_iter, closure=args.closure, threads=args.threads,
                       state_dir=args.state, budget=_budget(args))
    body = rep.as_dict()
    seconds = body.pop("seconds")
    text = json.dumps(body, sort_keys=True, indent=1) + "\n"
    _emit(text, args.report)
    _stats(args, {"seconds": seconds})
    return OK if body["reduced_drawings"] > 0 else FAIL


def cmd_check(args) -> int:
    from . import saturation

    budget = _budget(args)
    if args.graph:
        g = resolve_graph(args.graph)
        if args.maximal:
            res = saturation.graph_maximal(g, args.k, budget)
            if res.maximal is None:
                print(f"inconclusive: {res.reason} {list(res.inconclusive_pairs)}")
                return INCONCLUSIVE
            if res.maximal:
                print("maximal")
                return OK
            print(f"not maximal: edge {res.witness[0]}-{res.witness[1]} can be added")
            return FAIL
        try:
            ok = is_k_planar(g, args.k, budget)
        except BudgetExceeded as exc:
            print(f"inconclusive: {exc}")
            return INCONCLUSIVE
        print(f"{args.k}-planar" if ok else f"not {args.k}-planar")
        return OK if ok else FAIL
    if args.drawing:
        d = dcel.from_json(json.loads(Path(args.drawing).read_text()))
        errs = dcel.validate(d, reduced=args.reduced)
        if errs:
            print("invalid drawing:")
            for e in errs[:20]:
                print(f"  {e}")
            return FAIL
        if args.saturated:
            add = saturation.addable_edges(d)
            if add:
                print(f"not saturated: {len(add)} addable edges, first {add[0][0]}-{add[0][1]}")
                return FAIL
            print("saturated")
            return OK
        print("valid")
        return OK
    raise InvalidInput("check needs --graph or --drawing")


def cmd_audit(args) -> int:
    from . import audit

    g = resolve_graph(args.graph)
    budget = _budget(args)
    try:
        verdict = audit.density_verdict(g, budget, maximal=True if args.assume_maximal else None)
        drawings = audit.admissible_drawings(g, budget)
    except BudgetExceeded as exc:
        print(f"inconclusive: {exc}")
        return INCONCLUSIVE
    maximal = {"pass": True, "fail": True, "not_maximal": False}.get(verdict.status)
    chosen = drawings if args.all_admissible else drawings[:1]
    per = [audit.audit_drawing(d, True, maximal) for d in chosen]
    report = {"graph": {"n": g.n, "m": g.m}, "admissible_count": len(drawings),
              "verdict": verdict.as_dict(), "drawings": per}
    if args.report:
        Path(args.report).write_text(json.dumps(report, sort_keys=True, indent=1) + "\n")
    structural_ok = all(r["structure"]["passed"] for r in per)
    print(f"verdict: {verdict.status} (n={verdict.n}, m={verdict.m}, margin {verdict.margin})")
    print(f"admissible drawings: {len(drawings)}, audited: {len(per)}, structure "
          f"{'ok' if structural_ok else 'violations'}")
    if verdict.status == "inconclusive":
        return INCONCLUSIVE
    if verdict.status != "pass" or (maximal and not structural_ok):
        return FAIL
    return OK


def cmd_export(args) -> int:
    if args.drawing:
        d = dcel.from_json(json.loads(Path(args.drawing).read_text()))
    elif args.construction:
        from . import constructions

        if args.k is None:
            raise InvalidInput("--construction needs --k")
        if args.construction == "nested":
            d = constructions.nested_drawing(args.k)
        else:
            gadget = enumerate_drawings(graphs.gen_gadget_x(), 2, limit=1)[0]
            d = constructions.canonical_gk_drawing(args.k, gadget)
    else:
        raise InvalidInput("export needs --drawing or --construction")
    text = dcel.to_dot(d) if args.format == "dot" else dcel.dumps_json(d)
    _emit(text if text.endswith("\n") else text + "\n", args.out)
    return OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kplane", description="Exhaustive tools for simple 2-plane drawings.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="write an edge list of a graph family")
    s.add_argument("family", choices=graphs.FAMILIES)
    s.add_argument("--k", type=int, help="number of ten-cycles (gk, gk-minus)")
    s.add_argument("--n", type=int, help="vertex count (cycle, complete)")
    s.add_argument("--remove", help="edges removed from K9, e.g. 0-1,2-3")
    s.add_argument("--last-uncrossable", action="store_true", help="gk-minus: make D_k uncrossable too")
    s.add_argument("--out", help="output file (default stdout)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("enumerate", help="enumerate simple k-plane drawings")
    s.add_argument("--graph", required=True, help="edge-list file or shortcut (k5, c10, gadget-x, x-plus)")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--dedup", choices=("labeled", "canonical"), default="labeled")
    s.add_argument("--cycle", help="comma separated vertex ids of a fixed cycle for canonical dedup")
    s.add_argument("--parity", action=argparse.BooleanOptionalAction, default=True,
                   help="restrict fixed-cycle relabelings to even shifts")
    s.add_argument("--limit", type=int)
    s.add_argument("--max-crossings", type=int)
    s.add_argument("--budget", type=int, help="node cap (default KPLANE_BUDGET)")
    s.add_argument("--threads", type=int, default=1, help="accepted for symmetry; the search is sequential")
    s.add_argument("--out", help="directory for one JSON file per drawing")
    s.add_argument("--stats", help="write stats JSON here instead of stderr")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("pipeline", help="iterate ten-cycle extensions of reduced drawings")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--max-iter", type=int, default=1)
    g.add_argument("--closure", action="store_true", help="run until no new reduced drawing appears")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--state", help="state directory (resumes if it holds an index)")
    s.add_argument("--budget", type=int)
    s.add_argument("--report", help="write the run report here instead of stdout")
    s.add_argument("--stats", help="write timings here instead of stderr")
    s.set_defaults(func=cmd_pipeline)

    s = sub.add_parser("check", help="k-planarity, maximality, validity or saturation")
    s.add_argument("--graph")
    s.add_argument("--drawing", help="drawing JSON")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--maximal", action="store_true")
    s.add_argument("--saturated", action="store_true")
    s.add_argument("--reduced", action="store_true", help="validate as a reduced pipeline drawing")
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("audit", help="admissible drawings, claims and degree relations")
    s.add_argument("--graph", required=True)
    s.add_argument("--all-admissible", action="store_true", help="audit every admissible drawing")
    s.add_argument("--assume-maximal", action="store_true", help="skip the maximality search")
    s.add_argument("--report", help="JSON report file")
    s.add_argument("--budget", type=int)
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("export", help="drawing JSON or a scripted construction to DOT/JSON")
    s.add_argument("--drawing")
    s.add_argument("--construction", choices=("nested", "gk"))
    s.add_argument("--k", type=int)
    s.add_argument("--format", choices=("dot", "json"), default="dot")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID
    except (OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
