"""Growing subgraphs by balanced circuits, Z3-flows and their integer lifts."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..analysis import bridges
from ..core import (Circuit, HalfEdge, IntFlow, ModFlow, PreconditionError, SearchExhausted, SignedGraph,
                    default_orientation, make_flow, walk_flow)
from ._search import solve_domains


@dataclass(frozen=True)
class Phi2Step:
    circuit: Circuit
    new_edges: frozenset[int]


@dataclass(frozen=True)
class Phi2Certificate:
    start: frozenset[int]
    steps: tuple[Phi2Step, ...]
    closure: frozenset[int]

    def complete(self, g: SignedGraph) -> bool:
        return self.closure == frozenset(g.edge_ids)


def _circuits_through(g: SignedGraph, first: int, inside: set[int], length: int, budget: int):
    """Circuits of exactly ``length`` edges that start with edge ``first``.

    Apart from ``first``, at most ``budget`` edges may lie outside ``inside``.
    Yields (vertices, edges) with an even number of negative edges.
    """
    e0 = g.edge(first)
    if e0.is_loop:
        if length == 1 and e0.sign == 1:
            yield (e0.u,), (first,)
        return
    start, target = e0.u, e0.v
    verts, edges = [start, target], [first]
    on_path = {start, target}

    def dfs(v, used_outside, sign):
        if len(edges) == length:
            return
        for eid in g.incident(v):
            if eid == edges[-1] or eid in edges:
                continue
            e = g.edge(eid)
            if e.is_loop:
                continue
            out = eid not in inside
            if out and used_outside >= budget:
                continue
            w = g.neighbors(v, eid)
            s = sign * e.sign
            if w == start:
                if len(edges) + 1 == length and s == 1:
                    yield tuple(verts), tuple(edges) + (eid,)
                continue
            if w in on_path:
                continue
            verts.append(w)
            edges.append(eid)
            on_path.add(w)
            yield from dfs(w, used_outside + out, s)
            on_path.discard(w)
            edges.pop()
            verts.pop()

    yield from dfs(target, 0, e0.sign)


def phi2_closure(g: SignedGraph, H: Iterable[int]) -> Phi2Certificate:
    """Grow ``H`` by balanced circuits that bring at most two new edges each.

    At every step the shortest such circuit is taken, ties broken by the
    sorted tuple of its edge ids.  The closure as a set does not depend on
    these choices; the certificate does.
    """
    current = set(H)
    steps = []
    n = len(g.vertices)
    while True:
        outside = sorted(set(g.edge_ids) - current)
        best = None
        for length in range(1, n + 1):
            for eid in outside:
                for verts, edges in _circuits_through(g, eid, current, length, budget=1):
                    key = tuple(sorted(edges))
                    if best is None or key < best[0]:
                        best = (key, verts, edges)
            if best is not None:
                break
        if best is None:
            break
        _, verts, edges = best
        new = frozenset(edges) - current
        steps.append(Phi2Step(Circuit(verts, edges), new))
        current |= new
    return Phi2Certificate(frozenset(H), tuple(steps), frozenset(current))


def z3_flow_phi2(g: SignedGraph, H: Iterable[int], tau: Mapping[HalfEdge, int] | None = None,
                 certificate: Phi2Certificate | None = None) -> ModFlow:
    """Z3-flow that is nonzero on every edge outside ``H``.

    Requires the closure of ``H`` to be all of ``g``.  The certificate is
    replayed backwards; each circuit gets a coefficient in {1, 2} (or 0 when
    its new edges are already nonzero and both other choices would kill one)
    keeping its new edges nonzero.  Edges added later never appear in earlier
    circuits, so those values are final.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    cert = certificate or phi2_closure(g, H)
    if not cert.complete(g):
        missing = sorted(set(g.edge_ids) - cert.closure)
        raise PreconditionError(f"closure of H misses edges {missing}")
    f: dict[int, int] = defaultdict(int)
    for step in reversed(cert.steps):
        w = walk_flow(g, step.circuit.steps(), tau)
        for c in (1, 2, 0):
            if all((f[e] + c * w[e]) % 3 for e in step.new_edges):
                break
        else:
            raise AssertionError("no coefficient keeps the new edges nonzero")
        for e, x in w.items():
            f[e] = (f[e] + c * x) % 3
    return ModFlow(3, tau, {e: f[e] for e in g.edge_ids})


_LIFT = {1: [1, -2], 2: [-1, 2], 0: [0, 3, -3]}


def lift_z3_to_4flow(g: SignedGraph, f1: ModFlow, node_limit: int = 2_000_000) -> IntFlow:
    """Integer 4-flow congruent to ``f1`` mod 3, with ``supp(f1)`` valued in ±{1, 2}.

    The search runs over per-edge candidates chosen by residue.  A solution
    always exists on bridgeless graphs, so exhaustion is reported as
    :class:`SearchExhausted`.
    """
    if f1.modulus != 3:
        raise PreconditionError("expected a Z3-flow")
    bad = bridges(g)
    if bad:
        raise PreconditionError(f"graph has bridges {bad}")
    domains = {e.id: _LIFT[f1[e.id] % 3] for e in g.edges}
    sol = solve_domains(g, f1.tau, domains, node_limit=node_limit)
    if sol is None:
        raise SearchExhausted("no residue-preserving 4-flow found")
    return make_flow(g, sol, f1.tau, k=4)
