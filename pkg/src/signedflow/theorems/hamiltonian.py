"""Nowhere-zero 8-flows on signed graphs with a given Hamilton circuit."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..analysis import find_unbalanced_circuit, is_balanced, is_flow_admissible
from ..core import (Circuit, HalfEdge, IntFlow, PreconditionError, SignedGraph, default_orientation, switch,
                    verify_flow, walk_flow)
from ..flows import cover_circuit_4flow, lift_z2_to_3flow, lift_z3_to_4flow, two_flow_eulerian, z3_flow_phi2
from .result import FlowResult


def hamilton_circuit(g: SignedGraph, order: Sequence) -> Circuit:
    """Circuit through the vertices in ``order``, using the smallest free edge id per step."""
    order = list(order)
    if len(order) < 2:
        raise PreconditionError("a Hamilton circuit needs at least two vertices")
    if sorted(map(g.order, order)) != list(range(len(g.vertices))):
        raise PreconditionError("vertex sequence is not a permutation of the vertex set")
    used = set()
    edges = []
    for a, b in zip(order, order[1:] + order[:1]):
        cand = [eid for eid in g.incident(a) if eid not in used and not g.edge(eid).is_loop
                and g.neighbors(a, eid) == b]
        if not cand:
            raise PreconditionError(f"no unused edge joins {a!r} and {b!r}")
        used.add(cand[0])
        edges.append(cand[0])
    return Circuit(tuple(order), tuple(edges))


def balanced_chord_circuit(g: SignedGraph, C0: Circuit, chord: int) -> frozenset[int]:
    """Edges of the balanced circuit formed by a chord and one arc of an unbalanced ``C0``."""
    e = g.edge(chord)
    pos = {v: i for i, v in enumerate(C0.vertices)}
    i, j = sorted((pos[e.u], pos[e.v]))
    arc = set(C0.edges[i:j])
    neg = sum(1 for x in arc if g.sign(x) == -1) + (e.sign == -1)
    if neg % 2:
        arc = set(C0.edges) - arc
    return frozenset(arc | {chord})


def _double_cover_4flow(g: SignedGraph, tau, C0: Circuit) -> IntFlow:
    """4-NZF of an all-positive graph: C0 plus the even subgraph of chord circuits."""
    H: set[int] = set()
    pos = {v: i for i, v in enumerate(C0.vertices)}
    for e in g.edges:
        if e.id in C0.edge_set:
            continue
        i, j = sorted((pos[e.u], pos[e.v]))
        H ^= set(C0.edges[i:j]) | {e.id}
    fa = walk_flow(g, C0.steps(), tau)
    fb = two_flow_eulerian(g, H, tau)
    return IntFlow(tau, {e: fa.get(e, 0) + 2 * fb[e] for e in g.edge_ids}, 4)


def hamiltonian_flow(g: SignedGraph, circuit: Sequence | Circuit,
                     tau: Mapping[HalfEdge, int] | None = None) -> FlowResult:
    """Nowhere-zero 8-flow of a flow-admissible signed graph with Hamilton circuit ``C0``.

    ``circuit`` is a vertex sequence (or a :class:`Circuit`).  Positive loops
    get the value 1 and are otherwise ignored; negative loops lie on no
    balanced circuit and are rejected.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    C0 = circuit if isinstance(circuit, Circuit) else hamilton_circuit(g, circuit)
    if sorted(map(g.order, C0.vertices)) != list(range(len(g.vertices))):
        raise PreconditionError("circuit does not visit every vertex exactly once")
    if any(g.edge(e).is_loop and g.sign(e) == -1 for e in g.edge_ids):
        raise PreconditionError("negative loops are not supported by the hamiltonian construction")
    verdict = is_flow_admissible(g)
    if not verdict:
        raise PreconditionError(f"graph is not flow-admissible ({verdict.reason})")
    loops = [e.id for e in g.edges if e.is_loop]
    g0 = g.delete_edges(loops)
    trace: list[str] = []
    if C0.is_balanced(g0):
        trace.append("Case 1")
        whole = is_balanced(g0)
        if whole:
            trace.append("balanced graph")
            g1, tau1, _ = switch(g0, whole.switching, tau)
            flow = _double_cover_4flow(g1, tau1, C0)
            k = 4
        else:
            trace.append("unbalanced graph")
            g1, tau1, _ = switch(g0, is_balanced(g0, C0.edge_set).switching, tau)
            z3 = z3_flow_phi2(g1, C0.edge_set, tau1)
            f1 = lift_z3_to_4flow(g1, z3)
            f2 = walk_flow(g1, C0.steps(), tau1)
            flow = IntFlow(tau1, {e: 2 * f1[e] + f2.get(e, 0) for e in g1.edge_ids}, 8)
            k = 8
    else:
        trace.append("Case 2")
        H: set[int] = set()
        for e in g0.edges:
            if e.id not in C0.edge_set:
                H ^= balanced_chord_circuit(g0, C0, e.id)
        witness = is_balanced(g0, H)
        if witness:
            trace.append("H balanced")
            g1, tau1, _ = switch(g0, witness.switching, tau)
            f3 = two_flow_eulerian(g1, H, tau1)
            f4 = cover_circuit_4flow(g1, C0, tau1)
            flow = IntFlow(tau1, {e: f3[e] + 2 * f4[e] for e in g1.edge_ids}, 8)
        else:
            trace.append("H unbalanced")
            C0p = witness.circuit
            f5 = lift_z2_to_3flow(g0, H, allowed=C0.edge_set - H, tau=tau)
            Hp = C0.edge_set ^ C0p.edge_set
            f6 = lift_z2_to_3flow(g0, Hp, allowed=C0.edge_set & C0p.edge_set, tau=tau)
            flow = IntFlow(tau, {e: 3 * f5[e] + f6[e] for e in g0.edge_ids}, 8)
        k = 8
    values = dict(flow.values)
    for eid in loops:
        values[eid] = 1
    flow = IntFlow(tau, values, k)
    verdict = verify_flow(g, flow)
    if not verdict:
        raise AssertionError(f"{' / '.join(trace)} produced an invalid flow: {verdict.lines()}")
    return FlowResult(flow, k, tuple(trace), False)
