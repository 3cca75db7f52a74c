"""Reducing bridgeless signed graphs to cubic ones and lifting flows back."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import networkx as nx

from ..analysis import bridges, is_flow_admissible
from ..coloring import NotColorable, three_edge_color
from ..core import (Edge, HalfEdge, IntFlow, PreconditionError, SignedGraph, contract, default_orientation,
                    verify_flow)
from .cubic import cubic_flow
from .result import FlowResult


@dataclass(frozen=True)
class Gadget:
    """What replaced one vertex of degree at least four."""

    vertex: object
    circuit_vertices: tuple      # c_0 = vertex, c_1, ...
    circuit_edges: tuple[int, ...]   # C_v after subdivision: positive edges of the cycle and chain
    chain_vertices: tuple        # u_1 .. u_2t
    digons: tuple[tuple[int, int], ...]  # (positive edge, negative edge) per absorbed loop
    loops: tuple[int, ...]       # the original negative loops, matched with ``digons``

    @property
    def positive_edges(self) -> frozenset[int]:
        return frozenset(self.circuit_edges) | frozenset(p for p, _ in self.digons)

    @property
    def cycle_length(self) -> int:
        """Length of C_v before the chain was inserted."""
        return len(self.circuit_edges) - len(self.digons)


@dataclass(frozen=True)
class BlowUp:
    graph: SignedGraph
    tau: dict
    gadgets: tuple[Gadget, ...]
    source: SignedGraph

    def contract_back(self):
        """Contract every gadget's positive subgraph.

        Returns the contraction and the edge renaming that turns each
        negative digon edge back into the loop it replaced.
        """
        S = set()
        rename = {}
        for gd in self.gadgets:
            S |= gd.positive_edges
            for (_, neg), loop in zip(gd.digons, gd.loops):
                rename[neg] = loop
        return contract(self.graph, S), rename

    def lift(self, values: Mapping[int, int]) -> dict[int, int]:
        """Values on the source graph (under its blow-up orientation)."""
        out = {}
        for e in self.source.edges:
            if not e.is_loop or e.sign == 1:
                out[e.id] = values.get(e.id, 0)
        for gd in self.gadgets:
            for (_, neg), loop in zip(gd.digons, gd.loops):
                # both loop halves equal the digon edge's; tau is shared, so copy
                out[loop] = values[neg] * self.tau[(neg, 0)] * self.tau[(loop, 0)]
        return out


def blow_up(g: SignedGraph, tau: Mapping[HalfEdge, int] | None = None,
            rotation: Mapping | None = None) -> BlowUp:
    """Replace every vertex of degree >= 4 by a cubic gadget.

    A vertex ``v`` of degree ``d`` with ``t`` negative loops loses its loops
    and becomes an all-positive circuit of length ``d - 2t`` whose edge
    ``c_{m-1} c_0`` is subdivided into ``u_0 u_1 ... u_{2t+1}``; each
    ``u_i u_{i+1}`` with ``i`` odd is doubled into an unbalanced digon.  The
    remaining half edges are attached in edge-id order, the first at ``v``
    itself.  ``rotation`` may give, per vertex, the cyclic order of its
    neighbours (a planar embedding); half edges then follow that order.
    Original edges keep their ids and their half-edge orientation.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    for e in g.edges:
        if e.is_loop and e.sign == 1:
            raise PreconditionError(f"positive loop {e.id}")
    for v in g.vertices:
        if g.degree(v) < 3:
            raise PreconditionError(f"vertex {v!r} has degree {g.degree(v)} < 3")
    next_id = g.next_edge_id()
    taken = set(g.vertices)
    counter = 0

    def fresh(v, label):
        nonlocal counter
        while True:
            counter += 1
            name = f"{v}~{label}{counter}"
            if name not in taken:
                taken.add(name)
                return name

    ends = {(e.id, i): e.end(i) for e in g.edges for i in (0, 1)}
    new_edges: list[Edge] = []
    new_tau: dict = {}
    new_vertices = []
    gadgets = []
    drop = set()

    def add(u, w, sign):
        nonlocal next_id
        eid = next_id
        next_id += 1
        new_edges.append(Edge(eid, u, w, sign))
        if sign == 1:
            new_tau[(eid, 0)], new_tau[(eid, 1)] = 1, -1
        else:
            new_tau[(eid, 0)] = new_tau[(eid, 1)] = 1
        return eid

    for v in g.vertices:
        d = g.degree(v)
        if d <= 3:
            continue
        loops = [eid for eid in g.incident(v) if g.edge(eid).is_loop]
        halves = [h for h in g.half_edges(v) if not g.edge(h[0]).is_loop]
        halves.sort()
        if rotation is not None and v in rotation:
            rank = {w: i for i, w in enumerate(rotation[v])}
            halves.sort(key=lambda h: (rank.get(g.edge(h[0]).end(1 - h[1]), len(rank)), h))
        t, m = len(loops), len(halves)
        if m < 1:
            raise PreconditionError(f"vertex {v!r} carries only loops; it cannot be blown up")
        drop.update(loops)
        cverts = [v] + [fresh(v, "c") for _ in range(m - 1)]
        new_vertices += cverts[1:]
        for h, c in zip(halves, cverts):
            ends[h] = c
        cedges = [add(cverts[i], cverts[i + 1], 1) for i in range(m - 1)]
        chain = [cverts[-1]] + [fresh(v, "u") for _ in range(2 * t)] + [cverts[0]]
        new_vertices += chain[1:-1]
        digons = []
        for i in range(2 * t + 1):
            if i % 2 == 1:
                digons.append((add(chain[i], chain[i + 1], 1), add(chain[i], chain[i + 1], -1)))
            else:
                cedges.append(add(chain[i], chain[i + 1], 1))
        gadgets.append(Gadget(v, tuple(cverts), tuple(cedges), tuple(chain[1:-1]), tuple(digons), tuple(loops)))
    edges = [Edge(e.id, ends[(e.id, 0)], ends[(e.id, 1)], e.sign) for e in g.edges if e.id not in drop]
    out_tau = {h: x for h, x in tau.items() if h[0] not in drop}
    out_tau.update(new_tau)
    G2 = SignedGraph(tuple(g.vertices) + tuple(new_vertices), tuple(edges) + tuple(new_edges))
    # the loops' orientation survives for lifting
    keep_tau = dict(out_tau)
    keep_tau.update({h: x for h, x in tau.items() if h[0] in drop})
    return BlowUp(G2, keep_tau, tuple(gadgets), g)


# -- degree-2 suppression ----------------------------------------------------------

@dataclass
class _Suppressed:
    vertex: object
    e1: int
    e2: int
    new: int
    a_half: HalfEdge   # half of e1 away from the vertex
    b_half: HalfEdge   # half of e2 away from the vertex


def _suppress(g: SignedGraph, tau: dict):
    """Remove positive loops and suppress degree-2 vertices until none remain."""
    records = []
    pos_loops = []
    cur = g
    tau = dict(tau)
    next_id = g.next_edge_id()
    while True:
        loop = next((e for e in cur.edges if e.is_loop and e.sign == 1), None)
        if loop is not None:
            pos_loops.append(loop.id)
            cur = cur.delete_edges([loop.id])
            continue
        v = next((x for x in cur.vertices if cur.degree(x) == 2 and not any(
            cur.edge(eid).is_loop for eid in cur.incident(x))), None)
        if v is None:
            break
        (e1, i1), (e2, i2) = cur.half_edges(v)
        E1, E2 = cur.edge(e1), cur.edge(e2)
        a_half, b_half = (e1, 1 - i1), (e2, 1 - i2)
        a, b = E1.end(1 - i1), E2.end(1 - i2)
        sign = E1.sign * E2.sign
        new = next_id
        next_id += 1
        ta = tau[a_half]
        tau[(new, 0)], tau[(new, 1)] = ta, -sign * ta
        edges = tuple(e for e in cur.edges if e.id not in (e1, e2)) + (Edge(new, a, b, sign),)
        cur = SignedGraph(tuple(x for x in cur.vertices if x != v), edges)
        records.append(_Suppressed(v, e1, e2, new, a_half, b_half))
    isolated = [x for x in cur.vertices if cur.degree(x) == 0]
    if isolated:
        cur = SignedGraph(tuple(x for x in cur.vertices if x not in isolated), cur.edges)
    return cur, tau, records, pos_loops


def _unsuppress(values: dict, tau: dict, records) -> dict:
    values = dict(values)
    for r in reversed(records):
        x = values.pop(r.new)
        values[r.e1] = x * tau[(r.new, 0)] * tau[r.a_half]
        values[r.e2] = x * tau[(r.new, 1)] * tau[r.b_half]
    return values


def _bouquet(g: SignedGraph, tau) -> dict:
    """Single vertex with t >= 2 negative loops."""
    loops = [e.id for e in g.edges]
    t = len(loops)
    # each loop adds 2 tau f; choose f so that the weighted sum vanishes
    if t % 2 == 0:
        target = [1 if i % 2 == 0 else -1 for i in range(t)]
    else:
        target = [1 if i % 2 == 0 else -1 for i in range(t - 3)] + [1, 1, -2]
    return {eid: s * tau[(eid, 0)] for eid, s in zip(loops, target)}


def _colorable_blow_up(g: SignedGraph, tau):
    """Blow up in edge-id order; if the result is class two, follow a planar rotation."""
    bu = blow_up(g, tau)
    try:
        return bu, three_edge_color(bu.graph)
    except NotColorable:
        pass
    simple = nx.Graph()
    simple.add_nodes_from(g.vertices)
    simple.add_edges_from((e.u, e.v) for e in g.edges if not e.is_loop)
    planar, emb = nx.check_planarity(simple)
    if not planar:
        raise NotColorable("blow-up is not 3-edge-colorable and the graph is not planar")
    rotation = {v: list(emb.neighbors_cw_order(v)) for v in g.vertices if v in emb}
    bu = blow_up(g, tau, rotation)
    return bu, three_edge_color(bu.graph)


def planar_flow(g: SignedGraph, tau: Mapping[HalfEdge, int] | None = None) -> FlowResult:
    """Nowhere-zero flow (k <= 10) of a bridgeless flow-admissible signed graph.

    Planarity is not checked: it is only needed to make the cubic blow-up
    3-edge-colorable, and the coloring is searched directly instead.  The
    pipeline removes positive loops, suppresses degree-2 vertices, blows up
    high-degree vertices, runs the cubic construction and lifts the flow
    back.  Each connected component is handled on its own.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    b = bridges(g)
    if b:
        raise PreconditionError(f"graph has bridges {b}")
    verdict = is_flow_admissible(g)
    if not verdict:
        raise PreconditionError(f"graph is not flow-admissible ({verdict.reason})")
    values: dict[int, int] = {}
    traces = []
    exceptional = False
    k = 2
    for comp in g.components():
        cset = set(comp)
        sub = SignedGraph(tuple(comp), tuple(e for e in g.edges if e.u in cset))
        if not sub.edges:
            continue
        red, rtau, records, pos_loops = _suppress(sub, tau)
        if not red.edges:
            vals = {}
            traces.append("cycle")
        elif len(red.vertices) == 1:
            vals = _bouquet(red, rtau)
            traces.append("bouquet")
            k = max(k, 3 if len(red.edges) % 2 else 2)
        else:
            bu, coloring = _colorable_blow_up(red, rtau)
            res = cubic_flow(bu.graph, coloring, bu.tau)
            vals = bu.lift(res.flow.values)
            traces.append(res.trace_text)
            exceptional = exceptional or res.exceptional
            k = max(k, res.k)
        # a positive loop takes any value; some of them stand for suppressed paths
        for eid in pos_loops:
            vals[eid] = 1
        values.update(_unsuppress(vals, rtau, records))
    flow = IntFlow(tau, {e.id: values.get(e.id, 0) for e in g.edges}, max(k, 2))
    if flow.max_abs >= flow.k:
        flow = flow.tight()
    verdict = verify_flow(g, flow)
    if not verdict:
        raise AssertionError(f"planar pipeline produced an invalid flow: {verdict.lines()}")
    return FlowResult(flow, flow.k, tuple(traces), exceptional)
