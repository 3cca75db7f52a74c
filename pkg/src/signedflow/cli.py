"""Command line front end: ``signedflow <command> ...``.

Exit codes: 0 success, 1 negative answer (inadmissible, invalid flow, not
colorable, no flow up to kmax), 2 precondition failure, 3 unreadable input,
4 internal failure of a construction.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

import networkx as nx

from . import io
from .analysis import bridges, is_balanced, is_flow_admissible
from .coloring import NotColorable, order_classes, three_edge_color
from .core import PreconditionError, SearchExhausted, SignedGraph, verify_flow
from .families import FAMILIES, family
from .oracle import min_flow_number
from .theorems import cubic_flow, hamiltonian_flow, planar_flow

OK, NEGATIVE, PRECONDITION, PARSE, INTERNAL = 0, 1, 2, 3, 4


class Report:
    """Collects key/value records; prints them as prose or as ``key=value`` lines."""

    def __init__(self, machine: bool, out=None):
        self.machine = machine
        self.out = out or sys.stdout

    def put(self, key: str, value, text: str | None = None):
        if isinstance(value, bool):
            value = "yes" if value else "no"
        if self.machine:
            print(f"{key}={value}", file=self.out)
        else:
            print(text if text is not None else f"{key.replace('_', ' ')}: {value}", file=self.out)

    def raw(self, text: str):
        if not self.machine:
            self.out.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _graph(path: str) -> SignedGraph:
    return io.parse_graph(_read(path))


def _ids(ids) -> str:
    return ",".join(map(str, sorted(ids))) or "-"


def cmd_check(args, rep: Report) -> int:
    g = _graph(args.file)
    bal = is_balanced(g)
    adm = is_flow_admissible(g)
    rep.put("vertices", len(g.vertices))
    rep.put("edges", len(g.edges))
    rep.put("balanced", bal.balanced)
    if not bal.balanced:
        rep.put("unbalanced_circuit", _ids(bal.circuit.edges))
    rep.put("bridges", _ids(bridges(g)))
    rep.put("admissible", adm.admissible)
    rep.put("reason", adm.reason)
    if adm.edge is not None:
        rep.put("witness_edge", adm.edge)
    return OK if adm else NEGATIVE


def cmd_color(args, rep: Report) -> int:
    g = _graph(args.file)
    try:
        c = order_classes(three_edge_color(g), g)
    except NotColorable as exc:
        rep.put("colorable", False)
        rep.put("reason", str(exc) or "no proper 3-edge-coloring")
        return NEGATIVE
    rep.put("colorable", True)
    for name, cls in zip("RBY", c.classes):
        rep.put(name, _ids(cls))
    return OK


def _pick_pipeline(args, g: SignedGraph) -> str:
    if args.cubic:
        return "cubic"
    if args.hamiltonian is not None:
        return "hamiltonian"
    if args.planar:
        return "planar"
    if all(g.degree(v) == 3 for v in g.vertices) and not any(e.is_loop for e in g.edges):
        return "cubic"
    G = nx.MultiGraph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from((e.u, e.v) for e in g.edges if not e.is_loop)
    if nx.check_planarity(nx.Graph(G))[0]:
        return "planar"
    raise PreconditionError("graph is neither cubic nor planar; pass --hamiltonian with a Hamilton circuit")


def cmd_flow(args, rep: Report) -> int:
    g = _graph(args.file)
    pipeline = _pick_pipeline(args, g)
    if pipeline == "cubic":
        res = cubic_flow(g)
    elif pipeline == "planar":
        res = planar_flow(g)
    else:
        order = [int(x) for x in args.hamiltonian.replace(",", " ").split()]
        res = hamiltonian_flow(g, order)
    rep.put("pipeline", pipeline)
    rep.put("trace", res.trace_text)
    rep.put("k", res.k)
    rep.put("exceptional", res.exceptional)
    text = io.emit_flow(g, res.flow)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        rep.put("flow_file", args.output)
    elif rep.machine:
        for line in text.splitlines():
            rep.put("flowline", line)
    else:
        rep.raw(text)
    if args.figure:
        from .plotting import draw_signed_graph
        draw_signed_graph(g, res.flow, args.figure, title=f"{pipeline}: {res.trace_text} (k={res.k})")
        rep.put("figure", args.figure)
    return OK


def cmd_verify(args, rep: Report) -> int:
    g = _graph(args.graph)
    flow = io.parse_flow(_read(args.flow), g)
    verdict = verify_flow(g, flow)
    rep.put("valid", verdict.valid)
    if not verdict.valid:
        for line in verdict.lines():
            rep.put("problem", line)
    return OK if verdict else NEGATIVE


def cmd_oracle(args, rep: Report) -> int:
    g = _graph(args.file)
    r = min_flow_number(g, args.kmax)
    for k, ok in sorted(r.table.items()):
        rep.put(f"k{k}", ok, f"k={k}: {'yes' if ok else 'no'}")
    rep.put("minimum", r.minimum if r.minimum is not None else f"none<={args.kmax}")
    rep.put("nodes", r.stats.nodes)
    rep.put("seconds", f"{r.stats.seconds:.3f}")
    if r.witness is not None:
        rep.raw(io.emit_flow(g, r.witness))
    if args.figure:
        from .plotting import draw_feasibility
        draw_feasibility(r.table, args.figure, title=f"minimum k = {r.minimum}")
        rep.put("figure", args.figure)
    return OK if r.minimum is not None else NEGATIVE


def cmd_gen(args, rep: Report) -> int:
    g = family(args.family, args.n)
    sys.stdout.write(io.emit_graph(g))
    return OK


def cmd_export_dot(args, rep: Report) -> int:
    g = _graph(args.file)
    flow = io.parse_flow(_read(args.flow), g) if args.flow else None
    sys.stdout.write(io.to_dot(g, flow))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedflow", description="Nowhere-zero flows on signed graphs.")
    p.add_argument("--machine", action="store_true", help="emit key=value records")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="balance, bridges and flow-admissibility")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("color", help="3-edge-color a cubic graph")
    s.add_argument("file")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("flow", help="construct a nowhere-zero flow")
    s.add_argument("file")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--cubic", action="store_true")
    mode.add_argument("--hamiltonian", metavar="CIRCUIT", help="vertex sequence, e.g. '0 1 2 3'")
    mode.add_argument("--planar", action="store_true")
    s.add_argument("-o", "--output", help="write the FlowFile here")
    s.add_argument("--figure", metavar="PATH", help="render the flow to an image file")
    s.set_defaults(func=cmd_flow)

    s = sub.add_parser("verify", help="check a FlowFile against a GraphFile")
    s.add_argument("graph")
    s.add_argument("flow")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="exhaustive minimum flow number")
    s.add_argument("file")
    s.add_argument("--kmax", type=int, default=11)
    s.add_argument("--figure", metavar="PATH", help="render the feasibility table")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="emit a built-in family as a GraphFile")
    s.add_argument("--family", required=True, choices=sorted(FAMILIES))
    s.add_argument("--n", type=int, default=3)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("export-dot", help="GraphFile to DOT, negative edges dashed")
    s.add_argument("file")
    s.add_argument("--flow", help="FlowFile whose values label the edges")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.machine)
    try:
        return args.func(args, rep)
    except io.ParseError as exc:
        rep.put("error", f"parse: {exc}")
        return PARSE
    except OSError as exc:
        rep.put("error", f"io: {exc}")
        return PARSE
    except ValueError as exc:
        # PreconditionError is a ValueError; so are bad --hamiltonian tokens
        rep.put("error", f"precondition: {exc}")
        return PRECONDITION
    except NotColorable as exc:
        rep.put("error", f"not colorable: {exc or 'no proper 3-edge-coloring'}")
        return NEGATIVE
    except (SearchExhausted, AssertionError) as exc:
        rep.put("error", f"internal: {exc}")
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
