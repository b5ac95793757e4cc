"""Command-line entry point: generate, analyze, simulate, solve, construct, verify."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import constructions
from .decomposition import NotInClassError, bridges, classify_family, delta_d_partition, is_k4
from .families import (
    InfeasibleParameters,
    LabeledGraph,
    by_name,
    random_claw_free_cubic,
)
from .graph import (
    Graph,
    GraphFormatError,
    format_edge_list,
    is_claw_free,
    is_connected,
    is_cubic,
    parse_edge_list,
    to_dot,
)
from .solvers import DEFAULT_NODE_BUDGET, independence_number, sigma_exact
from .spreading import SpreadParams, closure
from .theory import GraphInfo, parse_cells, predict, table_cells, survey

SCHEMA = 1
DOMAIN_ERRORS = (NotInClassError, InfeasibleParameters, GraphFormatError, ValueError, OSError)

CONSTRUCT_METHODS = ("ind-set", "cover", "perc3", "s31", "perc2", "s22", "s21")


class UsageError(Exception):
    pass


def _query(params: SpreadParams) -> dict:
    return {
        "p": params.p,
        "q": None if params.q_infinite else params.q,
        "q_infinite": params.q_infinite,
    }


def _dump(payload: dict, target: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if target in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


def _labels_path(path: Path) -> Path:
    return path.with_suffix(".labels.json")


def _add_input(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("input (give --graph or --family)")
    g.add_argument("--graph", help="edge-list file")
    g.add_argument("--family", help="N, F, H, figure6 or random")
    g.add_argument("--k", type=int, help="family size parameter")
    g.add_argument("--triangles", type=int, default=0, help="random: number of triangle units")
    g.add_argument("--diamonds", type=int, default=0, help="random: number of diamond units")
    g.add_argument("--seed", type=int, default=0, help="random: generator seed")


def _add_params(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", default="inf", help="positive integer or inf")


def _params(args) -> SpreadParams:
    try:
        return SpreadParams.parse(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _generate(args) -> LabeledGraph:
    if args.family == "random":
        return random_claw_free_cubic(args.triangles, args.diamonds, args.seed)
    if args.family in ("N", "F", "H") and args.k is None:
        raise UsageError(f"--family {args.family} needs --k")
    return by_name(args.family, args.k or 0)


def _load(args) -> tuple[str, Graph, dict[int, str] | None]:
    if (args.graph is None) == (args.family is None):
        raise UsageError("give exactly one of --graph and --family")
    if args.family is not None:
        lg = _generate(args)
        return _describe(args), lg.graph, lg.names()
    path = Path(args.graph)
    G = parse_edge_list(path.read_text())
    names = None
    side = _labels_path(path)
    if side.exists():
        labels = json.loads(side.read_text()).get("labels", {})
        names = {int(v): k for k, v in labels.items()}
    return path.name, G, names


def _describe(args) -> str:
    if args.family == "random":
        return f"random-t{args.triangles}-d{args.diamonds}-s{args.seed}"
    if args.family == "figure6":
        return "figure6"
    return f"{args.family}{args.k}"


def _vertex_list(G: Graph, text: str, names: dict[int, str] | None) -> list[int]:
    lookup = {s: v for v, s in (names or {}).items()}
    out = []
    for tok in text.replace(",", " ").split():
        if tok in lookup:
            out.append(lookup[tok])
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise UsageError(f"unknown vertex {tok!r}") from None
    return out


def _named(S, names) -> list:
    return [names.get(v, v) for v in sorted(S)] if names else sorted(S)


def _graph_block(G: Graph, name: str) -> dict:
    try:
        return GraphInfo.of(G, name).to_json()
    except NotInClassError:
        return {"name": name, "n": G.n, "m": G.m, "family": None, "units": None}


# subcommands

def cmd_generate(args) -> int:
    if args.family is None:
        raise UsageError("generate needs --family")
    lg = _generate(args)
    text = to_dot(lg.graph, labels=lg.names()) if args.format == "dot" else format_edge_list(lg.graph)
    if args.output:
        out = Path(args.output)
        out.write_text(text)
        sidecar = {
            "schema": SCHEMA,
            "family": lg.family,
            "params": lg.params,
            "labels": dict(sorted(lg.labels.items(), key=lambda kv: kv[1])),
        }
        _labels_path(out).write_text(json.dumps(sidecar, indent=2) + "\n")
        print(f"wrote {out} and {_labels_path(out)} (n={lg.graph.n}, m={lg.graph.m})")
    else:
        sys.stdout.write(text)
    return 0


def cmd_analyze(args) -> int:
    name, G, names = _load(args)
    report = {
        "schema": SCHEMA,
        "command": "analyze",
        "graph": {"name": name, "n": G.n, "m": G.m},
        "connected": is_connected(G),
        "cubic": is_cubic(G),
        "claw_free": is_claw_free(G),
    }
    alpha, I = independence_number(G)
    report["alpha"] = alpha
    report["beta"] = G.n - alpha
    report["max_independent_set"] = _named(I, names)
    in_class = report["connected"] and report["cubic"] and report["claw_free"]
    if in_class and not is_k4(G):
        P = delta_d_partition(G)
        report["family"] = str(classify_family(G, P))
        report["units"] = [
            {
                "kind": U.kind.value,
                "vertices": _named(U.vertices, names),
                "dominating": _named(U.dominating, names),
            }
            for U in P.units
        ]
        report["u"] = P.u
        report["double_bonded"] = sorted(list(pair) for pair in P.double_bonded())
        report["bridges"] = sorted(list(e) for e in bridges(G))
        report["predictions"] = {
            str(c): predict(G, c).to_json() for c in table_cells()
        }
    elif in_class:
        report["family"] = "K4"
    _dump(report, args.json)
    return 0


def cmd_simulate(args) -> int:
    name, G, names = _load(args)
    params = _params(args)
    S = _vertex_list(G, args.blue, names)
    final, trace = closure(G, S, params, synchronous=args.synchronous)
    trace.replay(G, params)
    spreads = len(final) == G.n
    if args.dot:
        Path(args.dot).write_text(to_dot(G, S, names))
    if args.json:
        _dump({
            "schema": SCHEMA,
            "command": "simulate",
            "graph": _graph_block(G, name),
            "query": _query(params),
            "result": {
                "initial": _named(S, names),
                "final": _named(final, names),
                "spreads": spreads,
                "rounds": trace.rounds,
                "steps": [
                    {"vertex": s.vertex, "witness": s.witness, "round": s.round}
                    for s in trace.steps
                ],
            },
        }, args.json)
    else:
        print(f"params={params} initial={len(set(S))} final={len(final)}/{G.n} rounds={trace.rounds}")
        print("spreads" if spreads else f"stalls; white: {_named(set(range(G.n)) - final, names)}")
    return 0


def cmd_solve(args) -> int:
    name, G, names = _load(args)
    params = _params(args)
    t0 = time.perf_counter()
    res = sigma_exact(G, params, node_budget=args.budget, method=args.method)
    elapsed = time.perf_counter() - t0
    result = {
        "value": res.value,
        "interval": list(res.interval()),
        "witness": _named(res.witness, names),
        "nodes": res.nodes_explored,
    }
    try:
        pred = predict(G, params)
        result["prediction"] = pred.to_json()
        if res.value is not None:
            result["verdict"] = "consistent" if pred.contains(res.value) else "violated"
    except NotInClassError:
        pass
    if args.dot and res.witness is not None:
        Path(args.dot).write_text(to_dot(G, res.witness, names))
    if args.json:
        payload = {
            "schema": SCHEMA,
            "command": "solve",
            "graph": _graph_block(G, name),
            "query": _query(params),
            "result": result,
        }
        if args.timing:
            payload["timing"] = {"seconds": round(elapsed, 6)}
        _dump(payload, args.json)
    if res.value is None:
        lo, hi = res.interval()
        print(f"sigma in [{lo}, {hi}] (budget exhausted)")
    else:
        print(f"sigma={res.value}")
    if res.witness is not None:
        print("witness=" + " ".join(str(v) for v in _named(res.witness, names)))
    return 0


def cmd_construct(args) -> int:
    name, G, names = _load(args)
    if args.method in ("ind-set", "cover"):
        fn = (
            constructions.triangle_hitting_independent_set
            if args.method == "ind-set"
            else constructions.vertex_cover_two_per_triangle
        )
        S = fn(G)
        ok = constructions.check_independent_hitting(G, set(range(G.n)) - S if args.method == "cover" else S)
        result = {"set": _named(S, names), "size": len(S), "validated": ok}
        if args.json:
            _dump({"schema": SCHEMA, "command": "construct", "method": args.method,
                   "graph": _graph_block(G, name), "result": result}, args.json)
        print(f"{args.method}: size={len(S)} valid={'yes' if ok else 'NO'}")
        print("set=" + " ".join(str(v) for v in _named(S, names)))
        return 0 if ok else 1

    R = constructions.METHODS[args.method](G)
    if args.dot:
        Path(args.dot).write_text(to_dot(G, R.vertices, names))
    if args.json:
        _dump({
            "schema": SCHEMA,
            "command": "construct",
            "method": args.method,
            "graph": _graph_block(G, name),
            "query": _query(R.params),
            "result": {
                "set": _named(R.vertices, names),
                "size": R.size,
                "claimed_size_formula": R.claimed_size_formula,
                "claimed_size": R.claimed_size,
                "validated": R.validated,
                "log": R.log,
            },
        }, args.json)
    print(f"{args.method} {R.params}: size={R.size} formula={R.claimed_size_formula}={R.claimed_size} "
          f"valid={'yes' if R.validated else 'NO'}")
    print("set=" + " ".join(str(v) for v in _named(R.vertices, names)))
    if args.verbose:
        for line in R.log:
            print("  " + line)
    return 0 if R.ok else 1


def cmd_verify(args) -> int:
    name, G, _ = _load(args)
    try:
        cells = parse_cells(args.cells) if args.cells else table_cells()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = survey([(name, G)], cells, args.budget, workers=1)
    payload = {"schema": SCHEMA, "command": "verify", **rep.to_json()}
    if args.json:
        _dump(payload, args.json)
        for c in rep.reports[0].cells:
            shown = c.value if c.value is not None else list(c.interval)
            print(f"{c.params}: value={shown} prediction={c.prediction} {c.verdict}")
    else:
        _dump(payload, None)
    return 1 if rep.violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spreadlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("generate", help="write a family member as an edge list")
    _add_input(sp)
    sp.add_argument("-o", "--output", help="edge-list path; a .labels.json sidecar is written next to it")
    sp.add_argument("--format", choices=("edges", "dot"), default="edges")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("analyze", help="structure report as JSON")
    _add_input(sp)
    sp.add_argument("--json", help="output path (default stdout)")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("simulate", help="run the spreading rule from a given blue set")
    _add_input(sp)
    _add_params(sp)
    sp.add_argument("--blue", required=True, help="comma-separated vertices (indices or labels)")
    sp.add_argument("--synchronous", action="store_true", help="fire all eligible vertices per round")
    sp.add_argument("--json")
    sp.add_argument("--dot", help="write DOT with the initial set highlighted")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("solve", help="exact minimum spreading set")
    _add_input(sp)
    _add_params(sp)
    sp.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="search node budget")
    sp.add_argument("--method", choices=("auto", "closure", "forcing"), default="auto")
    sp.add_argument("--json")
    sp.add_argument("--dot")
    sp.add_argument("--timing", action="store_true", help="include wall time in the JSON output")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("construct", help="build a spreading set by construction")
    _add_input(sp)
    sp.add_argument("--method", choices=CONSTRUCT_METHODS, required=True)
    sp.add_argument("--json")
    sp.add_argument("--dot")
    sp.add_argument("-v", "--verbose", action="store_true", help="print the construction log")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="compare exact values with the closed-form table")
    _add_input(sp)
    sp.add_argument("--cells", nargs="+", help='cells such as "2,2" "3,inf" (default: all table cells)')
    sp.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    sp.add_argument("--json", help="write the JSON report here and print a summary")
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
