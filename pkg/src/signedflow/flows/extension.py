"""Extending a flow of a contracted graph back through a contracted circuit."""

from __future__ import annotations

from typing import Mapping

from ..core import Circuit, HalfEdge, IntFlow, PreconditionError, SignedGraph, make_flow, walk_flow


def fill_circuit(g: SignedGraph, C: Circuit, tau: Mapping[HalfEdge, int], values: Mapping[int, int],
                 k: int) -> dict[int, int]:
    """Values on ``E(C)`` that balance every vertex of ``C``.

    ``values`` must cover the other edges at ``V(C)``; their combined boundary
    over ``V(C)`` has to vanish.  The solutions form a line ``p + t w`` where
    ``w`` is the unit circulation of ``C``; the ``t`` giving nonzero values of
    smallest maximum modulus (then smallest ``|t|``, positive first) wins.
    """
    circuit_edges = C.edge_set
    ext = {v: 0 for v in C.vertices}
    for v in C.vertices:
        for eid, end in g.half_edges(v):
            if eid not in circuit_edges:
                ext[v] += tau[(eid, end)] * values.get(eid, 0)
    w = walk_flow(g, C.steps(), tau)
    r = len(C)
    if r == 1:
        if ext[C.vertices[0]]:
            raise PreconditionError("boundary does not vanish on the contracted circuit")
        p = {C.edges[0]: 0}
    else:
        # x_0 = 0, then solve each vertex v_{i+1} for x_{i+1}
        p = {C.edges[0]: 0}
        for i in range(r - 1):
            v = C.vertices[i + 1]
            e_in, e_out = C.edges[i], C.edges[i + 1]
            h_in = (e_in, 1) if g.edge(e_in).v == v else (e_in, 0)
            h_out = (e_out, 0) if g.edge(e_out).u == v else (e_out, 1)
            p[e_out] = -(tau[h_in] * p[e_in] + ext[v]) * tau[h_out]
        v0 = C.vertices[0]
        e_in, e_out = C.edges[-1], C.edges[0]
        h_in = (e_in, 1) if g.edge(e_in).v == v0 else (e_in, 0)
        h_out = (e_out, 0) if g.edge(e_out).u == v0 else (e_out, 1)
        if tau[h_in] * p[e_in] + tau[h_out] * p[e_out] + ext[v0] != 0:
            raise PreconditionError("boundary does not vanish on the contracted circuit")
    best = None
    for t in sorted(range(-(k - 1), k), key=lambda t: (abs(t), -t)):
        xs = {e: p[e] + t * w[e] for e in C.edges}
        m = max(abs(x) for x in xs.values())
        if 0 in xs.values() or m > k - 1:
            continue
        if best is None or m < best[0]:
            best = (m, xs)
    if best is None:
        raise PreconditionError(f"no nowhere-zero extension with |f| <= {k - 1}")
    return best[1]


def extend_flow_contraction(g: SignedGraph, C: Circuit, flow: Mapping[int, int] | IntFlow,
                            tau: Mapping[HalfEdge, int] | None = None, k: int = 4) -> IntFlow:
    """Extend a k-NZF of ``g / C`` to a k-NZF of ``g``.

    ``C`` must be chordless and all-positive with two or three edges leaving
    ``V(C)``; ``flow`` gives the values on every edge outside ``C`` (edge ids
    survive contraction).  With ``k >= 4`` at most three values of the
    circulation constant are forbidden, so an extension always exists.
    """
    if isinstance(flow, IntFlow):
        tau = tau if tau is not None else flow.tau
        values = dict(flow.values)
    else:
        values = dict(flow)
    if tau is None:
        raise PreconditionError("an orientation is required")
    if k < 4:
        raise PreconditionError("extension needs k >= 4")
    cv = set(C.vertices)
    ce = C.edge_set
    if any(g.sign(e) == -1 for e in ce):
        raise PreconditionError("circuit has a negative edge")
    leaving = 0
    for e in g.edges:
        if e.id in ce:
            continue
        inside = (e.u in cv) + (e.v in cv)
        if inside == 2:
            raise PreconditionError(f"edge {e.id} is a chord of the circuit")
        leaving += inside
    if leaving not in (2, 3):
        raise PreconditionError(f"|delta(V(C))| = {leaving}, expected 2 or 3")
    values.update(fill_circuit(g, C, tau, values, k))
    return make_flow(g, values, tau, k=k)
