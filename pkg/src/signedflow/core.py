"""Signed multigraphs, bidirected orientations and integer flows.

A signed graph here is a multigraph (loops and parallel edges allowed) whose
edges carry a sign of +1 or -1.  Every edge ``e = uv`` is split into two half
edges ``(e, 0)`` at ``u`` and ``(e, 1)`` at ``v``; an orientation assigns
+1/-1 to each half edge such that the product over an edge equals ``-sign``.

Flows are plain edge valuations together with the orientation they were
computed under.  All objects are treated as immutable values.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

Vertex = Hashable
HalfEdge = tuple[int, int]
Orientation = dict[HalfEdge, int]


class SignedFlowError(Exception):
    """Base class for errors raised by this package."""


class PreconditionError(SignedFlowError, ValueError):
    """An input violates the documented precondition of an operation."""


class OrientationError(PreconditionError):
    pass


class SearchExhausted(SignedFlowError, RuntimeError):
    """A search whose success is guaranteed by theory came back empty."""


class Edge(NamedTuple):
    id: int
    u: Vertex
    v: Vertex
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def end(self, which: int) -> Vertex:
        return self.u if which == 0 else self.v


@dataclass(frozen=True)
class SignedGraph:
    vertices: tuple
    edges: tuple[Edge, ...]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise PreconditionError("duplicate vertex ids")
        seen = set()
        for e in self.edges:
            if e.u not in vs or e.v not in vs:
                raise PreconditionError(f"edge {e.id} has an undeclared endpoint")
            if e.sign not in (1, -1):
                raise PreconditionError(f"edge {e.id} has sign {e.sign!r}")
            if e.id in seen:
                raise PreconditionError(f"duplicate edge id {e.id}")
            seen.add(e.id)

    # -- lookups -----------------------------------------------------------

    @cached_property
    def _edge_index(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _vertex_pos(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _half_edges(self) -> dict:
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.u].append((e.id, 0))
            inc[e.v].append((e.id, 1))
        return inc

    def edge(self, eid: int) -> Edge:
        return self._edge_index[eid]

    def has_edge(self, eid: int) -> bool:
        return eid in self._edge_index

    def sign(self, eid: int) -> int:
        return self._edge_index[eid].sign

    def order(self, v: Vertex) -> int:
        """Position of ``v`` in the vertex order."""
        return self._vertex_pos[v]

    def half_edges(self, v: Vertex) -> list[HalfEdge]:
        """H(v): half edges at ``v``; a loop contributes both of its halves."""
        if v not in self._half_edges:
            raise PreconditionError(f"unknown vertex {v!r}")
        return list(self._half_edges[v])

    def degree(self, v: Vertex) -> int:
        return len(self.half_edges(v))

    def incident(self, v: Vertex) -> list[int]:
        """Distinct edge ids incident with ``v`` in id order."""
        return sorted({eid for eid, _ in self._half_edges[v]})

    def neighbors(self, v: Vertex, eid: int) -> Vertex:
        e = self._edge_index[eid]
        return e.v if e.u == v else e.u

    @property
    def edge_ids(self) -> list[int]:
        return [e.id for e in self.edges]

    @property
    def negative_edges(self) -> frozenset[int]:
        """E_N: ids of the negative edges."""
        return frozenset(e.id for e in self.edges if e.sign == -1)

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    # -- derived graphs ----------------------------------------------------

    def subgraph(self, edge_ids: Iterable[int], keep_vertices: bool = True) -> "SignedGraph":
        """Edge-induced subgraph; ids and end order are preserved."""
        keep = set(edge_ids)
        edges = tuple(e for e in self.edges if e.id in keep)
        if keep_vertices:
            verts = self.vertices
        else:
            used = {x for e in edges for x in (e.u, e.v)}
            verts = tuple(v for v in self.vertices if v in used)
        return SignedGraph(verts, edges)

    def delete_edges(self, edge_ids: Iterable[int]) -> "SignedGraph":
        drop = set(edge_ids)
        return self.subgraph(e.id for e in self.edges if e.id not in drop)

    def with_signs(self, signs: Mapping[int, int]) -> "SignedGraph":
        edges = tuple(e._replace(sign=signs.get(e.id, e.sign)) for e in self.edges)
        return SignedGraph(self.vertices, edges)

    def with_negative(self, negative: Iterable[int]) -> "SignedGraph":
        neg = set(negative)
        return SignedGraph(self.vertices, tuple(e._replace(sign=-1 if e.id in neg else 1) for e in self.edges))

    def components(self) -> list[list[Vertex]]:
        """Vertex sets of connected components, in vertex order."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[b] = a
        groups: dict = defaultdict(list)
        for v in self.vertices:
            groups[find(v)].append(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __repr__(self) -> str:
        body = ", ".join(f"{e.id}:{e.u}{'+' if e.sign > 0 else '-'}{e.v}" for e in self.edges)
        return f"SignedGraph(|V|={len(self.vertices)}, [{body}])"


def build_graph(triples: Iterable[Sequence], vertices: Iterable[Vertex] = ()) -> SignedGraph:
    """Build a signed graph from ``(u, v, sign)`` triples.

    Edge ids are assigned 0, 1, ... in input order.  Signs may be given as
    ``+1``/``-1`` or the strings ``"+"``/``"-"``.  Vertices are ordered by
    first appearance after any explicitly listed ``vertices``.
    """
    order: dict = {}
    for v in vertices:
        order.setdefault(v, len(order))
    edges = []
    for i, (u, v, s) in enumerate(triples):
        order.setdefault(u, len(order))
        order.setdefault(v, len(order))
        edges.append(Edge(i, u, v, _parse_sign(s)))
    return SignedGraph(tuple(order), tuple(edges))


def _parse_sign(s) -> int:
    if s in ("+", 1, "+1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise PreconditionError(f"bad sign {s!r}")


# -- orientations -----------------------------------------------------------

def default_orientation(g: SignedGraph) -> Orientation:
    """Canonical orientation used for serialization and reproducibility.

    A positive edge points away from its endpoint that comes first in vertex
    order; both halves of a negative edge are +1.
    """
    tau: Orientation = {}
    for e in g.edges:
        if e.sign == -1:
            tau[(e.id, 0)] = tau[(e.id, 1)] = 1
        elif g.order(e.u) <= g.order(e.v):
            tau[(e.id, 0)], tau[(e.id, 1)] = 1, -1
        else:
            tau[(e.id, 0)], tau[(e.id, 1)] = -1, 1
    return tau


def orientation_errors(g: SignedGraph, tau: Mapping[HalfEdge, int]) -> list[int]:
    """Edge ids whose half-edge values violate ``tau(h0) * tau(h1) == -sign``."""
    bad = []
    for e in g.edges:
        a, b = tau.get((e.id, 0)), tau.get((e.id, 1))
        if a not in (1, -1) or b not in (1, -1) or a * b != -e.sign:
            bad.append(e.id)
    return bad


def check_orientation(g: SignedGraph, tau: Mapping[HalfEdge, int]) -> None:
    bad = orientation_errors(g, tau)
    if bad:
        raise OrientationError(f"orientation inconsistent with signature on edges {bad}")


def restrict_orientation(tau: Mapping[HalfEdge, int], g: SignedGraph) -> Orientation:
    return {(e.id, i): tau[(e.id, i)] for e in g.edges for i in (0, 1)}


def reorient(values: Mapping[int, int], tau_from: Mapping[HalfEdge, int],
             tau_to: Mapping[HalfEdge, int]) -> dict[int, int]:
    """Re-express a valuation under another orientation of the same signed graph.

    Two orientations of one signed graph agree or disagree on both halves of an
    edge at once, so the value is kept or negated.
    """
    return {eid: (x if tau_from[(eid, 0)] == tau_to[(eid, 0)] else -x) for eid, x in values.items()}


# -- flows ------------------------------------------------------------------

@dataclass(frozen=True)
class IntFlow:
    tau: Orientation
    values: dict[int, int]
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise PreconditionError("flow bound k must be at least 2")

    def __getitem__(self, eid: int) -> int:
        return self.values.get(eid, 0)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(e for e, x in self.values.items() if x != 0)

    def level(self, i: int) -> frozenset[int]:
        """E_{f=±i}."""
        return frozenset(e for e, x in self.values.items() if abs(x) == i)

    @property
    def max_abs(self) -> int:
        return max((abs(x) for x in self.values.values()), default=0)

    def scaled(self, c: int) -> "IntFlow":
        return IntFlow(self.tau, {e: c * x for e, x in self.values.items()}, max(2, abs(c) * self.max_abs + 1))

    def under(self, tau: Mapping[HalfEdge, int]) -> "IntFlow":
        return IntFlow(dict(tau), reorient(self.values, self.tau, tau), self.k)

    def tight(self) -> "IntFlow":
        """Same valuation with ``k`` lowered to ``max|f| + 1``."""
        return IntFlow(self.tau, self.values, max(2, self.max_abs + 1))


@dataclass(frozen=True)
class ModFlow:
    modulus: int
    tau: Orientation
    values: dict[int, int]

    def __post_init__(self):
        if self.modulus < 2:
            raise PreconditionError("modulus must be at least 2")
        object.__setattr__(self, "values", {e: x % self.modulus for e, x in self.values.items()})

    def __getitem__(self, eid: int) -> int:
        return self.values.get(eid, 0)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(e for e, x in self.values.items() if x)


def make_flow(g: SignedGraph, values: Mapping[int, int], tau: Mapping[HalfEdge, int] | None = None,
              k: int | None = None) -> IntFlow:
    """Wrap a valuation of ``g`` as an :class:`IntFlow` (missing edges are 0)."""
    tau = dict(tau) if tau is not None else default_orientation(g)
    vals = {e.id: int(values.get(e.id, 0)) for e in g.edges}
    if k is None:
        k = max(2, max((abs(x) for x in vals.values()), default=0) + 1)
    return IntFlow(tau, vals, k)


def boundary(g: SignedGraph, tau: Mapping[HalfEdge, int], f: Mapping[int, int], v: Vertex) -> int:
    """Sum of ``tau(h) * f(e_h)`` over the half edges at ``v``."""
    return sum(tau[h] * f.get(h[0], 0) for h in g.half_edges(v))


def boundaries(g: SignedGraph, tau: Mapping[HalfEdge, int], f: Mapping[int, int]) -> dict:
    out = {v: 0 for v in g.vertices}
    for e in g.edges:
        x = f.get(e.id, 0)
        if x:
            out[e.u] += tau[(e.id, 0)] * x
            out[e.v] += tau[(e.id, 1)] * x
    return out


@dataclass
class FlowVerdict:
    orientation_errors: list[int] = field(default_factory=list)
    boundary_violations: dict = field(default_factory=dict)
    bound_violations: list[int] = field(default_factory=list)
    zero_edges: list[int] = field(default_factory=list)
    missing_edges: list[int] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (self.orientation_errors or self.boundary_violations or self.bound_violations
                    or self.zero_edges or self.missing_edges)

    def __bool__(self) -> bool:
        return self.valid

    def lines(self) -> list[str]:
        out = []
        if self.orientation_errors:
            out.append(f"orientation inconsistent on edges {self.orientation_errors}")
        for v, b in self.boundary_violations.items():
            out.append(f"boundary {b} at vertex {v}")
        if self.bound_violations:
            out.append(f"|f| >= k on edges {self.bound_violations}")
        if self.zero_edges:
            out.append(f"zero on edges {self.zero_edges}")
        if self.missing_edges:
            out.append(f"no value for edges {self.missing_edges}")
        return out


def verify_flow(g: SignedGraph, flow: IntFlow, require_nowhere_zero: bool = True) -> FlowVerdict:
    verdict = FlowVerdict()
    verdict.orientation_errors = orientation_errors(g, flow.tau)
    if verdict.orientation_errors:
        return verdict
    verdict.missing_edges = [e.id for e in g.edges if e.id not in flow.values]
    verdict.boundary_violations = {v: b for v, b in boundaries(g, flow.tau, flow.values).items() if b}
    verdict.bound_violations = [e.id for e in g.edges if abs(flow[e.id]) > flow.k - 1]
    if require_nowhere_zero:
        verdict.zero_edges = [e.id for e in g.edges if flow[e.id] == 0]
    return verdict


def verify_mod_flow(g: SignedGraph, flow: ModFlow) -> dict:
    """Vertices whose boundary is nonzero modulo the flow's modulus."""
    b = boundaries(g, flow.tau, flow.values)
    return {v: x % flow.modulus for v, x in b.items() if x % flow.modulus}


def combine_flows(terms: Sequence[tuple[int, IntFlow]]) -> IntFlow:
    """Edgewise linear combination ``sum(c * f)`` of flows sharing one orientation."""
    if not terms:
        raise PreconditionError("nothing to combine")
    tau = terms[0][1].tau
    for _, f in terms[1:]:
        if f.tau != tau:
            raise PreconditionError("flows reference different orientations")
    keys = set()
    for _, f in terms:
        keys.update(f.values)
    vals = {e: sum(c * f[e] for c, f in terms) for e in keys}
    return IntFlow(tau, vals, max(2, max((abs(x) for x in vals.values()), default=0) + 1))


# -- switching ---------------------------------------------------------------

def switch(g: SignedGraph, U: Iterable[Vertex], tau: Mapping[HalfEdge, int] | None = None,
           flow: IntFlow | None = None):
    """Switch the vertex set ``U``.

    Returns ``(g2, tau2, flow2)``.  Edges of the cut δ(U) change sign (loops
    never do), half edges at vertices of ``U`` are reversed and flow values
    are left alone.  ``tau`` defaults to the flow's orientation, else the
    canonical one.
    """
    U = set(U)
    unknown = U - set(g.vertices)
    if unknown:
        raise PreconditionError(f"switching set has unknown vertices {sorted(map(str, unknown))}")
    if tau is None:
        tau = flow.tau if flow is not None else default_orientation(g)
    edges = tuple(e._replace(sign=-e.sign) if ((e.u in U) != (e.v in U)) else e for e in g.edges)
    g2 = SignedGraph(g.vertices, edges)
    tau2 = {}
    for e in g.edges:
        tau2[(e.id, 0)] = -tau[(e.id, 0)] if e.u in U else tau[(e.id, 0)]
        tau2[(e.id, 1)] = -tau[(e.id, 1)] if e.v in U else tau[(e.id, 1)]
    flow2 = None if flow is None else IntFlow(tau2, dict(flow.values), flow.k)
    return g2, tau2, flow2


# -- contraction -------------------------------------------------------------

@dataclass(frozen=True)
class Contraction:
    graph: SignedGraph
    vertex_map: dict
    contracted: frozenset[int]

    def push_values(self, values: Mapping[int, int]) -> dict[int, int]:
        """Restrict a valuation of the original graph to the surviving edges."""
        return {e.id: values.get(e.id, 0) for e in self.graph.edges}


def contract(g: SignedGraph, S: Iterable[int]) -> Contraction:
    """Contract the edges ``S``.

    Endpoints are identified; a contracted positive edge disappears and a
    contracted negative edge survives as a negative loop.  Other edges keep
    their ids, signs and end order, so half-edge orientations carry over.
    The merged vertex takes the id of its first member in vertex order.
    """
    S = set(S)
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in sorted(S):
        e = g.edge(eid)
        a, b = find(e.u), find(e.v)
        if a != b:
            if g.order(a) > g.order(b):
                a, b = b, a
            parent[b] = a
    vmap = {v: find(v) for v in g.vertices}
    verts = tuple(v for v in g.vertices if vmap[v] == v)
    edges = []
    for e in g.edges:
        if e.id in S and e.sign == 1:
            continue
        edges.append(Edge(e.id, vmap[e.u], vmap[e.v], e.sign))
    return Contraction(SignedGraph(verts, tuple(edges)), vmap, frozenset(e for e in S if g.sign(e) == 1))


# -- circuits and walks -------------------------------------------------------

@dataclass(frozen=True)
class Circuit:
    """A closed trail ``v0 e0 v1 e1 ... v_{r-1} e_{r-1} v0``."""

    vertices: tuple
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def negatives(self, g: SignedGraph) -> int:
        return sum(1 for e in self.edges if g.sign(e) == -1)

    def is_balanced(self, g: SignedGraph) -> bool:
        return self.negatives(g) % 2 == 0

    def steps(self) -> list[tuple[int, Vertex]]:
        return list(zip(self.edges, self.vertices))

    def rotated(self, start: int) -> "Circuit":
        return Circuit(self.vertices[start:] + self.vertices[:start], self.edges[start:] + self.edges[:start])

    def reversed(self) -> "Circuit":
        n = len(self.edges)
        verts = (self.vertices[0],) + tuple(reversed(self.vertices[1:]))
        edges = tuple(self.edges[(n - 1 - i)] for i in range(n))
        return Circuit(verts, edges)


def circuit_from_edges(g: SignedGraph, edge_ids: Iterable[int]) -> Circuit:
    """Order the edges of a connected 2-regular edge set as a circuit."""
    eids = list(edge_ids)
    if not eids:
        raise PreconditionError("empty circuit")
    if len(eids) == 1:
        e = g.edge(eids[0])
        if not e.is_loop:
            raise PreconditionError("single non-loop edge is not a circuit")
        return Circuit((e.u,), (e.id,))
    at = defaultdict(list)
    for eid in eids:
        e = g.edge(eid)
        if e.is_loop:
            raise PreconditionError("loop inside a longer circuit")
        at[e.u].append(eid)
        at[e.v].append(eid)
    if any(len(x) != 2 for x in at.values()):
        raise PreconditionError("edge set is not 2-regular")
    start_edge = min(eids)
    e0 = g.edge(start_edge)
    verts, edges = [e0.u], [start_edge]
    cur = e0.v
    prev = start_edge
    while cur != e0.u:
        verts.append(cur)
        nxt = at[cur][0] if at[cur][0] != prev else at[cur][1]
        edges.append(nxt)
        cur = g.neighbors(cur, nxt)
        prev = nxt
    if len(edges) != len(eids):
        raise PreconditionError("edge set is not connected")
    return Circuit(tuple(verts), tuple(edges))


def walk_flow(g: SignedGraph, steps: Sequence[tuple[int, Vertex]],
              tau: Mapping[HalfEdge, int] | None = None) -> dict[int, int]:
    """Circulate one unit around a closed walk.

    ``steps`` lists ``(edge id, vertex the edge is left from)``.  Every pass
    through a vertex contributes two cancelling half-edge terms, so the result
    has zero boundary everywhere provided the walk closes with an even number
    of negative traversals.  An edge traversed twice accumulates both passes.
    """
    tau = tau if tau is not None else default_orientation(g)
    if not steps:
        return {}
    parity = 1
    for eid, _ in steps:
        parity *= g.sign(eid)
    if parity != 1:
        raise PreconditionError("closed walk has an odd number of negative traversals")
    vals: dict[int, int] = defaultdict(int)
    a = 1
    cur = steps[0][1]
    for eid, frm in steps:
        if frm != cur:
            raise PreconditionError(f"walk is not contiguous at edge {eid}")
        e = g.edge(eid)
        dep = 0 if e.u == frm else 1
        vals[eid] += tau[(eid, dep)] * a
        cur = e.v if dep == 0 else e.u
        a *= e.sign
    if cur != steps[0][1]:
        raise PreconditionError("walk is not closed")
    return dict(vals)


def euler_steps(g: SignedGraph, edge_ids: Iterable[int], start: Vertex | None = None) -> list[tuple[int, Vertex]]:
    """Eulerian circuit (Hierholzer) of a connected even edge set as walk steps."""
    eids = sorted(set(edge_ids))
    if not eids:
        return []
    adj: dict = defaultdict(list)
    for eid in eids:
        e = g.edge(eid)
        adj[e.u].append(eid)
        if not e.is_loop:
            adj[e.v].append(eid)
        else:
            adj[e.u].append(eid)
    for v, lst in adj.items():
        if len(lst) % 2:
            raise PreconditionError(f"vertex {v!r} has odd degree")
        lst.reverse()
    if start is None:
        start = g.edge(eids[0]).u
    used = set()
    stack = [(start, None)]
    out = []
    while stack:
        v, via = stack[-1]
        while adj[v] and adj[v][-1] in used:
            adj[v].pop()
        if adj[v]:
            eid = adj[v].pop()
            used.add(eid)
            stack.append((g.neighbors(v, eid), (eid, v)))
        else:
            stack.pop()
            if via is not None:
                out.append(via)
    if len(used) != len(eids):
        raise PreconditionError("edge set is not connected")
    out.reverse()
    return out


@dataclass(frozen=True)
class Path:
    """An open trail ``v0 e0 v1 ... e_{r-1} v_r``."""

    vertices: tuple
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def ends(self) -> tuple:
        return self.vertices[0], self.vertices[-1]

    def steps(self) -> list[tuple[int, Vertex]]:
        return list(zip(self.edges, self.vertices))

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)), tuple(reversed(self.edges)))
