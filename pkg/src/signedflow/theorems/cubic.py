"""Nowhere-zero 8- and 10-flows on 3-edge-colored cubic signed graphs."""

from __future__ import annotations

from collections import deque
from typing import Mapping

from ..analysis import edge_components, is_balanced, is_flow_admissible, support_components
from ..coloring import EdgeColoring, check_cubic, is_proper, order_classes, swap_on_circuit, three_edge_color, two_factor
from ..core import (Circuit, HalfEdge, IntFlow, Path, PreconditionError, SignedGraph, circuit_from_edges,
                    contract, default_orientation, make_flow, restrict_orientation, switch, verify_flow)
from ..flows import (LONG_BARBELL, SignedCircuit, cover_circuit_4flow, fill_circuit, five_flow_odd_components,
                     lift_z2_to_3flow, signed_circuit_flow, two_flow_eulerian)
from .result import FlowResult


def odd_circuits(g: SignedGraph, c1, c2) -> int:
    """Number of unbalanced circuits in the 2-factor of two color classes."""
    return len(support_components(g, set(c1) | set(c2)).odd)


def is_exceptional(g: SignedGraph, coloring: EdgeColoring) -> bool:
    """The 10-flow condition: RB balanced, RY and BY each with an odd number >= 3 of unbalanced circuits."""
    c = order_classes(coloring, g)
    if odd_circuits(g, c.R, c.B):
        return False
    ry, by = odd_circuits(g, c.R, c.Y), odd_circuits(g, c.B, c.Y)
    return ry % 2 == 1 and by % 2 == 1 and ry >= 3 and by >= 3


def _sources_path(g: SignedGraph, edges, sources: set, targets: set) -> Path | None:
    """Shortest path from any source to any target whose inner vertices avoid both sets."""
    adj: dict = {}
    for eid in sorted(edges):
        e = g.edge(eid)
        if e.is_loop:
            continue
        adj.setdefault(e.u, []).append(eid)
        adj.setdefault(e.v, []).append(eid)
    prev = {s: None for s in sorted(sources, key=g.order)}
    queue = deque(prev)
    while queue:
        x = queue.popleft()
        if x in targets:
            verts, es = [x], []
            while prev[x] is not None:
                eid, y = prev[x]
                es.append(eid)
                verts.append(y)
                x = y
            return Path(tuple(reversed(verts)), tuple(reversed(es)))
        if prev[x] is not None and x in sources:
            continue
        for eid in adj.get(x, []):
            y = g.neighbors(x, eid)
            if y not in prev:
                prev[y] = (eid, x)
                queue.append(y)
    return None


def _subcase_22(g: SignedGraph, tau, c: EdgeColoring, f3: IntFlow, trace: list) -> IntFlow:
    """RY has exactly one unbalanced circuit C1; returns f3 + 2 f4 (or f3 + 2 f5)."""
    ry = set(c.R) | set(c.Y)
    circuits = two_factor(g, c.R, c.Y)
    c1 = next(C for C in circuits if not C.is_balanced(g))
    others = [C for C in circuits if C is not c1]
    # switch every balanced RY circuit to all-positive
    U = set()
    for C in others:
        U |= is_balanced(g, C.edge_set).switching
    g2, tau2, _ = switch(g, U, tau)
    contracted = set().union(*(C.edge_set for C in others)) if others else set()
    con = contract(g2, contracted)
    H = con.graph
    tauH = restrict_orientation(tau2, H)
    rep = {}
    for C in others:
        rep[con.vertex_map[C.vertices[0]]] = C
    rest = set(H.edge_ids) - c1.edge_set
    witness = is_balanced(H, rest)
    if witness.circuit is not None:
        trace.append("Subcase 2.2.1")
        c2 = witness.circuit
        path = _sources_path(H, rest - c2.edge_set, set(c1.vertices), set(c2.vertices))
        if path is None:
            raise PreconditionError("no path joins the two unbalanced circuits")
        q = SignedCircuit(LONG_BARBELL, (c1, c2), path)
        fq = signed_circuit_flow(H, q, tauH)
        base = dict(fq.values)
    else:
        trace.append("Subcase 2.2.2")
        fc = cover_circuit_4flow(H, c1, tauH)
        base = dict(fc.values)
    values = {eid: base.get(eid, 0) for eid in H.edge_ids}
    for C in others:
        values.update(fill_circuit(g2, C, tau2, values, 4))
    f4 = make_flow(g2, values, tau2, k=4)
    bad = [e for e in ry if f4[e] == 0]
    if bad:
        raise AssertionError(f"RY edges {bad} carry 0 in the 4-flow")
    return IntFlow(tau, {e: f3[e] + 2 * f4[e] for e in g.edge_ids}, 8)


def cubic_flow(g: SignedGraph, coloring: EdgeColoring | None = None,
               tau: Mapping[HalfEdge, int] | None = None, check: bool = True) -> FlowResult:
    """Nowhere-zero flow of a connected flow-admissible 3-edge-colored cubic signed graph.

    The color classes are relabeled so that R and B carry equally many
    negative edges mod 2, then the case analysis runs on the 2-factors RB,
    RY and BY.  The result is an 8-NZF (a 6-NZF when RB is balanced and RY
    has an even number of unbalanced circuits) except in the exceptional
    configuration, which yields a 10-NZF and sets the flag.
    """
    check_cubic(g)
    if not g.is_connected():
        raise PreconditionError("graph is not connected")
    if check:
        verdict = is_flow_admissible(g)
        if not verdict:
            raise PreconditionError(f"graph is not flow-admissible ({verdict.reason})")
    tau = dict(tau) if tau is not None else default_orientation(g)
    if coloring is None:
        coloring = three_edge_color(g)
    elif not is_proper(g, coloring):
        raise PreconditionError("coloring is not proper")
    c = order_classes(coloring, g)
    trace: list[str] = []
    rb = set(c.R) | set(c.B)
    rb_odd = [C for C in two_factor(g, c.R, c.B) if not C.is_balanced(g)]
    exceptional = False
    if rb_odd:
        trace.append("Case 1")
        par = c.parities(g)
        if par[2] == par[0]:
            trace.append("Subcase 1.1")
        else:
            trace.append("Subcase 1.2")
            c = swap_on_circuit(c, rb_odd[0])
            trace.append("Subcase 1.1")
        f1 = lift_z2_to_3flow(g, rb, allowed=c.Y, tau=tau)
        f2 = lift_z2_to_3flow(g, set(c.R) | set(c.Y), allowed=c.B, tau=tau)
        flow = IntFlow(tau, {e: f1[e] + 3 * f2[e] for e in g.edge_ids}, 8)
        k = 8
    else:
        trace.append("Case 2")
        f3 = two_flow_eulerian(g, rb, tau)
        ry, by = odd_circuits(g, c.R, c.Y), odd_circuits(g, c.B, c.Y)
        if ry % 2 == 0:
            trace.append("Subcase 2.1")
            f2 = lift_z2_to_3flow(g, set(c.R) | set(c.Y), allowed=c.B, tau=tau)
            flow = IntFlow(tau, {e: 3 * f3[e] + f2[e] for e in g.edge_ids}, 6)
            k = 6
        elif ry == 1 or by == 1:
            trace.append("Subcase 2.2")
            if ry != 1:
                c = EdgeColoring(c.B, c.R, c.Y)
            flow = _subcase_22(g, tau, c, f3, trace)
            k = 8
        else:
            trace.append("Subcase 2.3")
            f6 = five_flow_odd_components(g, set(c.R) | set(c.Y), tau)
            flow = IntFlow(tau, {e: 5 * f3[e] + f6[e] for e in g.edge_ids}, 10)
            k = 10
            exceptional = True
    verdict = verify_flow(g, flow)
    if not verdict:
        raise AssertionError(f"{' / '.join(trace)} produced an invalid flow: {verdict.lines()}")
    return FlowResult(flow, k, tuple(trace), exceptional, {"coloring": c})
