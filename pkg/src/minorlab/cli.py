"""Command-line front end: ``python3 -m minorlab <command> ...``.

Results go to stdout, diagnostics to stderr. Exit status is 0 on success,
1 when the input is well formed but the computation refuses it, 2 on usage
errors (argparse's own convention).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable, Optional, Sequence

from . import adversary as adv
from . import walk_cost as wc
from .config import CapExceeded
from .containment import is_minor, is_subgraph, is_topological_minor, min_vertex_cover
from .detector import MODES, DetectorError, OracleGraph, detect_subgraph
from .graph import Graph, GraphError
from .io import format_text, load_graph
from .minor_theory import (
    ForbiddenFamily,
    beta_report,
    check_mainlb_edge,
    classify_edges,
    is_path_or_claw_family,
    is_star_subdivision_family,
)

DOMAIN_ERRORS = (GraphError, CapExceeded, adv.AdversaryError, DetectorError, wc.PlanError,
                 ValueError, OverflowError, OSError)


class CliError(Exception):
    """A domain-level refusal that should exit with status 1."""


# output ----------------------------------------------------------------------

def _emit_json(obj, out):
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence], out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(x) for x in r])
    out.write(buf.getvalue())


def _cell(x):
    if isinstance(x, float):
        return repr(x)
    return x


def _emit_text(obj, out):
    if isinstance(obj, dict):
        for k in sorted(obj):
            out.write(f"{k}: {json.dumps(obj[k], sort_keys=True)}\n")
    else:
        out.write(f"{obj}\n")


def _emit(args, obj, out, table: Optional[tuple[Sequence[str], Sequence[Sequence]]] = None):
    fmt = args.format
    if fmt == "csv":
        if table is None:
            row = obj if isinstance(obj, dict) else {"value": obj}
            keys = sorted(row)
            table = (keys, [[_flat(row[k]) for k in keys]])
        _emit_csv(*table, out)
    elif fmt == "text":
        _emit_text(obj, out)
    else:
        _emit_json(obj, out)


def _flat(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"expected comma-separated integers, got {s!r}") from None


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise CliError(f"--{name.replace('_', '-')} is required for {args.command}")
    return val


# commands ------------------------------------------------------------------------

def cmd_contain(args, out):
    H = load_graph(_need(args, "pattern"))
    G = load_graph(_need(args, "graph"))
    rels = ["subgraph", "topological", "minor"] if args.relation == "all" else [args.relation]
    res = {}
    for rel in rels:
        if rel == "subgraph":
            w = is_subgraph(H, G, induced=args.induced)
        elif rel == "topological":
            w = is_topological_minor(H, G)
        else:
            w = is_minor(H, G)
        res[rel] = {"contained": w is not None, "witness": w.to_json() if w is not None else None}
    _emit(args, res, out, ( ["relation", "contained"], [[r, res[r]["contained"]] for r in rels]))


def cmd_beta(args, out):
    G = load_graph(_need(args, "graph"))
    _emit(args, beta_report(G).to_json(), out)


def cmd_classify(args, out):
    G = load_graph(_need(args, "graph"))
    c = classify_edges(G)
    res = {
        "internal_edges": [list(e) for e in c.internal],
        "external_edges": [list(e) for e in c.external],
        "dangling_paths": [list(p) for p in c.dangling_paths],
        "beta": len(c.internal),
        "star_subdivision_family": is_star_subdivision_family(G),
        "path_or_claw_family": is_path_or_claw_family(G),
    }
    if args.edge is not None:
        e = _ints(args.edge)
        if len(e) != 2:
            raise CliError("--edge takes u,v")
        S = [load_graph(p) for p in (args.pattern or [])]
        verdict = check_mainlb_edge(ForbiddenFamily(S=tuple(S)), G, e, args.lmax)
        res["edge_verdict"] = verdict.to_json()
    _emit(args, res, out)


def cmd_vc(args, out):
    G = load_graph(_need(args, "graph"))
    cover = min_vertex_cover(G)
    _emit(args, {"size": len(cover), "cover": list(cover)}, out)


def _family(args, n):
    G = load_graph(args.graph) if args.graph else None
    edge = _ints(args.edge) if args.edge else None
    return adv.build_family(args.family, n=n, d=args.d, G=G, edge=edge)


def cmd_adversary(args, out):
    if args.sweep:
        ns = _ints(args.sweep)
        rows = []
        for n in ns:
            q = adv.quantities_symmetric(_family(args, n), n)
            rows.append(q.to_json(args.family, n))
        keys = ["family", "n", "m", "m_prime", "l_max", "v", "quantum_bound", "classical_bound"]
        if args.format == "csv":
            _emit_csv(keys, [[r[k] for k in keys] for r in rows], out)
        else:
            _emit(args, {"rows": rows}, out)
        return
    n = _need(args, "n")
    fam = _family(args, n)
    q = adv.quantities_symmetric(fam, n)
    res = q.to_json(args.family, n)
    if args.check_explicit:
        e = adv.quantities_explicit_family(fam, n)
        res["explicit"] = e.to_json()
        res["agree"] = (e.m, e.m_prime, e.l_max, e.v) == (q.m, q.m_prime, q.l_max, q.v)
    _emit(args, res, out)
    if args.check_explicit and not res["agree"]:
        raise CliError("explicit and symmetric quantities disagree")


_PLANS: dict[str, Callable] = {
    "basic": lambda H, n, a: wc.plan_vcbasic(H, n, c=a.c_param),
    "dangling": lambda H, n, a: wc.plan_vcdangling(H, n, c=a.c_param),
    "paths": lambda H, n, a: wc.plan_paths(H.m, n, c=a.c_param),
    "pseudosparse": lambda H, n, a: wc.plan_pseudosparse(H, n, a.mbar if a.mbar is not None else n),
    "fourcycle": lambda H, n, a: wc.plan_fourcycle(n, a.mbar),
}


def cmd_walk_cost(args, out):
    n = float(_need(args, "n"))
    mode = args.mode or "basic"
    if mode not in _PLANS:
        raise CliError(f"walk-cost mode must be one of {', '.join(_PLANS)}")
    if mode == "fourcycle":
        H = Graph.empty(0)
    else:
        H = load_graph(_need(args, "pattern"))
        if mode == "paths" and not H.is_path_graph():
            raise CliError("paths mode needs a path pattern")
    res = _PLANS[mode](H, n, args).to_json()
    res["mode"] = mode
    _emit(args, res, out)


def cmd_exponents(args, out):
    rows = wc.exponent_table()
    header = ["problem", "predicted_exponent", "fitted_exponent", "residual"]
    table = [[r.problem, float(r.predicted), r.fit.slope, r.fit.residual] for r in rows]
    if args.format == "json":
        _emit_json({"rows": [dict(zip(header, t)) for t in table]}, out)
    else:
        _emit_csv(header, table, out)


def cmd_detect(args, out):
    G = load_graph(_need(args, "graph"))
    H = load_graph(_need(args, "pattern"))
    mode = args.mode or "basic"
    if mode not in MODES:
        raise CliError(f"detect mode must be one of {', '.join(MODES)}")
    oracle = OracleGraph(G)
    r = detect_subgraph(oracle, H, mode, seed=args.seed, confidence=args.confidence,
                        c=args.c_param)
    _emit(args, r.to_json(), out)


def cmd_thresholds(args, out):
    n = float(_need(args, "n"))
    res = {
        "n": n,
        "c_param": args.c_param,
        "kst": wc.edge_threshold("kst", n, s=args.s, t=args.t, c_param=args.c_param),
        "bondy_simonovits": wc.edge_threshold("bs", n, l=args.l),
        "sparse_gate": 2 * args.c_param * n,
        "s": args.s, "t": args.t, "l": args.l,
    }
    _emit(args, res, out)


def cmd_write(args, out):
    """Print a graph in the edge-list format (used for builtins and round trips)."""
    out.write(format_text(load_graph(_need(args, "graph"))))


COMMANDS = {
    "contain": cmd_contain,
    "beta": cmd_beta,
    "classify": cmd_classify,
    "vc": cmd_vc,
    "adversary": cmd_adversary,
    "walk-cost": cmd_walk_cost,
    "exponents": cmd_exponents,
    "detect": cmd_detect,
    "thresholds": cmd_thresholds,
    "write": cmd_write,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minorlab", description="Minor-closed property toolkit.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        return sp

    sp = add("contain", "subgraph / topological minor / minor tests")
    sp.add_argument("--pattern", help="H: file, builtin:NAME or graph6")
    sp.add_argument("--graph", help="G: file, builtin:NAME or graph6")
    sp.add_argument("--relation", choices=("subgraph", "topological", "minor", "all"), default="all")
    sp.add_argument("--induced", action="store_true")

    sp = add("beta", "number of internal edges")
    sp.add_argument("--graph")

    sp = add("classify", "internal/external edges; optional edge suitability check")
    sp.add_argument("--graph")
    sp.add_argument("--edge", help="u,v to test against forbidden topological minors")
    sp.add_argument("--pattern", action="append", help="forbidden topological minor (repeatable)")
    sp.add_argument("--lmax", type=int, default=4)

    sp = add("vc", "minimum vertex cover")
    sp.add_argument("--graph")

    sp = add("adversary", "adversary bound quantities for a relation family")
    sp.add_argument("--family", choices=adv.FAMILIES, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--graph", help="G for the mainlb family")
    sp.add_argument("--edge", help="u,v edge of G for the mainlb family")
    sp.add_argument("--check-explicit", action="store_true")
    sp.add_argument("--sweep", help="comma-separated sizes; one row per size")

    sp = add("walk-cost", "cost breakdown of a walk plan")
    sp.add_argument("--pattern")
    sp.add_argument("--n", type=float)
    sp.add_argument("--mode", choices=tuple(_PLANS))
    sp.add_argument("--mbar", type=float, help="edge budget for pseudosparse/fourcycle")
    sp.add_argument("--c-param", type=float, default=1.0)

    add("exponents", "fitted exponent table").set_defaults(format="csv")

    sp = add("detect", "classical reference detector")
    sp.add_argument("--graph")
    sp.add_argument("--pattern")
    sp.add_argument("--mode", choices=MODES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--confidence", type=float, default=0.9)
    sp.add_argument("--c-param", type=float, default=1.0)

    sp = add("thresholds", "edge thresholds that force a subgraph")
    sp.add_argument("--n", type=float)
    sp.add_argument("--c-param", type=float, default=1.0)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--l", type=int, default=2)

    sp = add("write", "print a graph in the edge-list format")
    sp.add_argument("--graph")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage problems itself
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args, out)
    except CliError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except DOMAIN_ERRORS as exc:
        err.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
