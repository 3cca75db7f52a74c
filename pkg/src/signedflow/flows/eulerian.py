"""Flows supported on eulerian subgraphs: 2-flows, signed circuits, Z2 lifts."""

from __future__ import annotations

import sys
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..analysis import SupportComponent, edge_components, support_components
from ..core import (Circuit, Edge, HalfEdge, IntFlow, Path, PreconditionError, SearchExhausted,
                    SignedFlowError, SignedGraph, default_orientation, euler_steps, make_flow,
                    restrict_orientation, walk_flow)
from ._search import solve_domains


class NoTwoFlow(SignedFlowError):
    """Raised when an eulerian support has a component with an odd number of negative edges."""

    def __init__(self, component: SupportComponent):
        super().__init__(f"component with edges {sorted(component.edges)} has "
                         f"{component.negatives} negative edges")
        self.component = component


def two_flow_eulerian(g: SignedGraph, support: Iterable[int] | None = None,
                      tau: Mapping[HalfEdge, int] | None = None) -> IntFlow:
    """A 2-flow whose support is exactly ``support`` (default: all edges).

    Each component is walked along an Euler circuit carrying one unit; the
    walk closes consistently iff the component has an even number of negative
    edges.  Otherwise :class:`NoTwoFlow` names the offending component.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    support = set(g.edge_ids) if support is None else set(support)
    comps = support_components(g, support)
    for comp in comps:
        if comp.odd:
            raise NoTwoFlow(comp)
    values: dict[int, int] = {}
    for comp in comps:
        values.update(walk_flow(g, euler_steps(g, comp.edges), tau))
    return make_flow(g, values, tau, k=2)


# -- signed circuits ---------------------------------------------------------------

BALANCED = "balanced circuit"
SHORT_BARBELL = "short barbell"
LONG_BARBELL = "long barbell"


@dataclass(frozen=True)
class SignedCircuit:
    kind: str
    circuits: tuple[Circuit, ...]
    path: Path | None = None

    @property
    def edge_set(self) -> frozenset[int]:
        out = set()
        for c in self.circuits:
            out |= c.edge_set
        if self.path is not None:
            out |= set(self.path.edges)
        return frozenset(out)

    def validate(self, g: SignedGraph) -> None:
        if self.kind == BALANCED:
            if len(self.circuits) != 1 or not self.circuits[0].is_balanced(g) or self.path:
                raise PreconditionError("a balanced signed circuit is one balanced circuit")
            return
        if self.kind not in (SHORT_BARBELL, LONG_BARBELL) or len(self.circuits) != 2:
            raise PreconditionError(f"malformed signed circuit of kind {self.kind!r}")
        c1, c2 = self.circuits
        if c1.is_balanced(g) or c2.is_balanced(g):
            raise PreconditionError("barbell circuits must be unbalanced")
        if c1.edge_set & c2.edge_set:
            raise PreconditionError("barbell circuits share an edge")
        common = set(c1.vertices) & set(c2.vertices)
        if self.kind == SHORT_BARBELL:
            if len(common) != 1 or self.path:
                raise PreconditionError("short barbell circuits must meet in exactly one vertex")
            return
        if common or self.path is None or len(self.path) == 0:
            raise PreconditionError("long barbell needs vertex-disjoint circuits and a nontrivial path")
        a, b = self.path.ends
        inner = set(self.path.vertices[1:-1])
        if a not in c1.vertices or b not in c2.vertices or inner & (set(c1.vertices) | set(c2.vertices)):
            raise PreconditionError("barbell path must meet the circuits only at its ends")
        if len(set(self.path.vertices)) != len(self.path.vertices):
            raise PreconditionError("barbell path is not a path")


def _circuit_steps_from(c: Circuit, v) -> list:
    return c.rotated(c.vertices.index(v)).steps()


def signed_circuit_walk(sc: SignedCircuit) -> list:
    """Closed walk through a signed circuit, using a barbell path twice."""
    if sc.kind == BALANCED:
        return sc.circuits[0].steps()
    c1, c2 = sc.circuits
    if sc.kind == SHORT_BARBELL:
        (v,) = set(c1.vertices) & set(c2.vertices)
        return _circuit_steps_from(c1, v) + _circuit_steps_from(c2, v)
    a, b = sc.path.ends
    return (_circuit_steps_from(c1, a) + sc.path.steps() + _circuit_steps_from(c2, b)
            + sc.path.reversed().steps())


def signed_circuit_flow(g: SignedGraph, sc: SignedCircuit, tau: Mapping[HalfEdge, int] | None = None) -> IntFlow:
    """Nowhere-zero flow on a signed circuit: ±1 on circuits, ±2 on a barbell path."""
    sc.validate(g)
    tau = dict(tau) if tau is not None else default_orientation(g)
    values = walk_flow(g, signed_circuit_walk(sc), tau)
    return make_flow(g, values, tau, k=3 if sc.kind == LONG_BARBELL else 2)


# -- Z2-flow lifted to a 3-flow ----------------------------------------------------

def _node_forest(g: SignedGraph, comps, allowed: set[int]):
    """Spanning forest of the graph obtained by contracting each component.

    Nodes are ``("B", i)`` for component i and ``("W", v)`` for other
    vertices.  Returns the node of each vertex and, per tree, a rooted
    adjacency ``children[node] -> [(edge id, vertex in node, child node, vertex in child)]``.
    """
    node_of = {}
    for i, c in enumerate(comps):
        for v in c.vertices:
            node_of[v] = ("B", i)
    for v in g.vertices:
        node_of.setdefault(v, ("W", v))
    adj = defaultdict(list)
    for eid in sorted(allowed):
        e = g.edge(eid)
        a, b = node_of[e.u], node_of[e.v]
        if a == b:
            continue
        adj[a].append((eid, e.u, b, e.v))
        adj[b].append((eid, e.v, a, e.u))
    order = [("B", i) for i in range(len(comps))] + [("W", v) for v in g.vertices if node_of[v][0] == "W"]
    seen = set()
    trees = []
    for root in order:
        if root in seen:
            continue
        seen.add(root)
        children = defaultdict(list)
        members = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for eid, xv, y, yv in adj[x]:
                if y not in seen:
                    seen.add(y)
                    members.append(y)
                    children[x].append((eid, xv, y, yv))
                    queue.append(y)
        trees.append((root, members, children))
    return node_of, trees


def _tree_walk(g: SignedGraph, comps, root, children) -> list:
    """Closed walk: each component's Euler circuit once, each tree edge twice."""
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))

    def visit(node, entry):
        detours = defaultdict(list)
        for eid, xv, child, yv in children.get(node, []):
            detours[xv].append((eid, xv, child, yv))

        def detour_at(v):
            out = []
            for eid, xv, child, yv in detours.pop(v, []):
                out.append((eid, xv))
                out.extend(visit(child, yv))
                out.append((eid, yv))
            return out

        if node[0] == "W":
            return detour_at(node[1])
        steps = []
        for eid, frm in euler_steps(g, comps[node[1]].edges, start=entry):
            steps.extend(detour_at(frm))
            steps.append((eid, frm))
        if detours:
            raise AssertionError("euler circuit missed an attachment vertex")
        return steps

    try:
        start = comps[root[1]].vertices[0] if root[0] == "B" else root[1]
        return visit(root, start)
    finally:
        sys.setrecursionlimit(limit)


def lift_z2_to_3flow(g: SignedGraph, support: Iterable[int], allowed: Iterable[int] | None = None,
                     tau: Mapping[HalfEdge, int] | None = None) -> IntFlow:
    """3-flow with ``E_{±1}`` equal to the eulerian ``support``.

    Support components are contracted and joined by a spanning forest built
    from ``allowed`` edges (default: every edge outside the support).  One
    closed walk per tree runs each component's Euler circuit and goes down and
    back up every tree edge, so tree edges end with 0 or ±2 and the ±2 edges
    form a forest after contraction.  Each tree must hold an even number of
    odd components.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    support = set(support)
    allowed = (set(g.edge_ids) - support) if allowed is None else set(allowed) - support
    comps = list(support_components(g, support))
    node_of, trees = _node_forest(g, comps, allowed)
    values: dict[int, int] = defaultdict(int)
    for root, members, children in trees:
        odd = sum(1 for n in members if n[0] == "B" and comps[n[1]].odd)
        if odd % 2:
            raise PreconditionError(f"a connected piece holds {odd} odd components; need an even number")
        if not any(n[0] == "B" for n in members):
            continue
        for eid, x in walk_flow(g, _tree_walk(g, comps, root, children), tau).items():
            values[eid] += x
    flow = make_flow(g, values, tau, k=3)
    for eid in g.edge_ids:
        x = flow[eid]
        if (eid in support and abs(x) != 1) or (eid not in support and x not in (0, 2, -2)):
            raise AssertionError(f"lift produced value {x} on edge {eid}")
    return flow


# -- odd number (>= 3) of odd components: a 5-flow ------------------------------------

def odd_component_flow_violations(g: SignedGraph, support: Iterable[int], flow: IntFlow) -> list[str]:
    """Check the two structural conditions promised for the 5-flow.

    (1) edges carrying flow outside the support form a forest once each
    support component is contracted; (2) support edges have |f| in 1..3 and
    negative loops in the support have |f| in {1, 2}.
    """
    support = set(support)
    out = []
    comps = list(support_components(g, support))
    node = {}
    for i, c in enumerate(comps):
        for v in c.vertices:
            node[v] = ("B", i)
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in sorted(flow.support - support):
        e = g.edge(eid)
        a, b = find(node.get(e.u, ("W", e.u))), find(node.get(e.v, ("W", e.v)))
        if a == b:
            out.append(f"(1) edge {eid} closes a cycle in supp(f2)/supp(f1)")
        else:
            parent[a] = b
    for eid in sorted(support):
        x = abs(flow[eid])
        if not 1 <= x <= 3:
            out.append(f"(2) support edge {eid} has |f| = {x}")
        e = g.edge(eid)
        if e.is_loop and e.sign == -1 and x not in (1, 2):
            out.append(f"(2) negative loop {eid} has |f| = {x}")
    return out


@dataclass
class _Instance:
    g: SignedGraph
    tau: dict
    support: set


def _prune(inst: _Instance):
    """Drop cycle-closing and dangling non-support edges; returns the reduced
    instance plus components, node map and the remaining tree adjacency."""
    g, support = inst.g, inst.support
    comps = list(support_components(g, support))
    node_of, trees = _node_forest(g, comps, set(g.edge_ids) - support)
    if len(trees) != 1 and sum(1 for _, m, _ in trees if any(n[0] == "B" for n in m)) > 1:
        raise PreconditionError("graph is not connected")
    tree_edges = {}
    for root, members, children in trees:
        for node, lst in children.items():
            for eid, xv, child, yv in lst:
                tree_edges[eid] = (node, child)
    # repeatedly strip W leaves
    nbrs = defaultdict(set)
    for eid, (a, b) in tree_edges.items():
        nbrs[a].add((b, eid))
        nbrs[b].add((a, eid))
    changed = True
    while changed:
        changed = False
        for n in list(nbrs):
            if n[0] == "W" and len(nbrs[n]) == 1:
                ((m, eid),) = nbrs.pop(n)
                nbrs[m].discard((n, eid))
                del tree_edges[eid]
                changed = True
            elif n[0] == "W" and not nbrs[n]:
                nbrs.pop(n)
    keep = support | set(tree_edges)
    used = {x for eid in keep for x in (g.edge(eid).u, g.edge(eid).v)}
    verts = tuple(v for v in g.vertices if v in used)
    g2 = SignedGraph(verts, tuple(e for e in g.edges if e.id in keep))
    return _Instance(g2, restrict_orientation(inst.tau, g2), set(support)), comps, node_of, tree_edges


def _drop_vertices(inst: _Instance, verts: set, extra_edges=()) -> _Instance:
    g = inst.g
    edges = tuple(e for e in g.edges if e.u not in verts and e.v not in verts)
    g2 = SignedGraph(tuple(v for v in g.vertices if v not in verts), edges + tuple(extra_edges))
    kept = {e.id for e in edges}
    tau = {h: x for h, x in inst.tau.items() if h[0] in kept}
    return _Instance(g2, tau, {eid for eid in inst.support if g2.has_edge(eid)})


def _solve5(inst: _Instance, id_source) -> dict[int, int]:
    inst, comps, node_of, tree_edges = _prune(inst)
    g, tau = inst.g, inst.tau
    odd_count = sum(1 for c in comps if c.odd)
    degree = defaultdict(list)
    for eid, (a, b) in tree_edges.items():
        degree[a].append((eid, b))
        degree[b].append((eid, a))
    leaves = sorted((n for n in degree if len(degree[n]) == 1 and n[0] == "B"), key=lambda n: n[1])

    def is_odd(n):
        return n[0] == "B" and comps[n[1]].odd

    # an even leaf component is solved on its own
    for u in leaves:
        if not is_odd(u):
            bu = comps[u[1]]
            rest = _drop_vertices(inst, set(bu.vertices))
            values = _solve5(rest, id_source)
            values.update(two_flow_eulerian(g.subgraph(bu.edges, keep_vertices=False), bu.edges,
                                            restrict_orientation(tau, g.subgraph(bu.edges))).values)
            return values
    odd_leaves = [u for u in leaves if is_odd(u)]
    split = next((u for u in odd_leaves if not is_odd(degree[u][0][1])), None)
    if split is None and odd_count >= 5:
        split = odd_leaves[0]
    if split is not None:
        return _split_leaf(inst, comps, split, degree[split][0][0], id_source)
    return _three_in_a_row(inst, comps, odd_leaves[0], degree, id_source)


def _split_leaf(inst: _Instance, comps, u, bridge: int, id_source) -> dict[int, int]:
    g, tau = inst.g, inst.tau
    bu = comps[u[1]]
    b = g.edge(bridge)
    end_u = 0 if b.u in bu.vertices else 1
    x_u, x_v = b.end(end_u), b.end(1 - end_u)
    e1, e2 = next(id_source), next(id_source)
    loop1 = Edge(e1, x_v, x_v, -1)
    g1 = _drop_vertices(inst, set(bu.vertices), extra_edges=[loop1])
    g1.tau[(e1, 0)] = g1.tau[(e1, 1)] = tau[(bridge, 1 - end_u)]
    g1.support.add(e1)
    g5 = _solve5(g1, id_source)
    sub = g.subgraph(bu.edges, keep_vertices=False)
    g2 = SignedGraph(sub.vertices, sub.edges + (Edge(e2, x_u, x_u, -1),))
    tau2 = restrict_orientation(tau, sub)
    tau2[(e2, 0)] = tau2[(e2, 1)] = tau[(bridge, end_u)]
    g6 = two_flow_eulerian(g2, None, tau2)
    a = g5.pop(e1)
    scale = a * g6[e2]
    values = dict(g5)
    for eid in bu.edges:
        values[eid] = scale * g6[eid]
    values[bridge] = 2 * a
    return values


def _three_in_a_row(inst: _Instance, comps, u, degree, id_source) -> dict[int, int]:
    """Three odd components in a path u - v - w joined by two edges."""
    g, tau = inst.g, inst.tau
    bridge_uv, v = degree[u][0]
    (bridge_vw, w), = [(eid, n) for eid, n in degree[v] if n != u]
    bu, bv, bw = comps[u[1]], comps[v[1]], comps[w[1]]
    # g3 on everything but B_u, g4 on B_u + B_v + the joining edge; f = g3 + 2 g4
    rest = _drop_vertices(inst, set(bu.vertices))
    g3 = lift_z2_to_3flow(rest.g, rest.support, tau=rest.tau)
    part = g.subgraph(set(bu.edges) | set(bv.edges) | {bridge_uv}, keep_vertices=False)
    g4 = lift_z2_to_3flow(part, set(bu.edges) | set(bv.edges), tau=restrict_orientation(tau, part))
    for sgn in (1, -1):
        values = {eid: g3[eid] if rest.g.has_edge(eid) else 0 for eid in g.edge_ids}
        for eid in part.edge_ids:
            values[eid] += 2 * sgn * g4[eid]
        flow = make_flow(g, values, tau)
        if not odd_component_flow_violations(g, inst.support, flow):
            return values
    # the middle component carries negative loops on both arcs; search it directly
    return _middle_search(inst, bu, bv, bw, bridge_uv, bridge_vw)


def _middle_search(inst: _Instance, bu, bv, bw, bridge_uv, bridge_vw) -> dict[int, int]:
    g, tau = inst.g, inst.tau
    outer = {}
    for comp, bridge in ((bu, bridge_uv), (bw, bridge_vw)):
        b = g.edge(bridge)
        end = 0 if b.u in comp.vertices else 1
        x = b.end(end)
        sub = g.subgraph(comp.edges, keep_vertices=False)
        lid = g.next_edge_id() + 1
        g2 = SignedGraph(sub.vertices, sub.edges + (Edge(lid, x, x, -1),))
        tau2 = restrict_orientation(tau, sub)
        tau2[(lid, 0)] = tau2[(lid, 1)] = tau[(bridge, end)]
        p = two_flow_eulerian(g2, None, tau2)
        outer[bridge] = (comp, {eid: p[lid] * p[eid] for eid in comp.edges})
    domains = {}
    for eid in bv.edges:
        e = g.edge(eid)
        domains[eid] = [1, -1, 2, -2] if (e.is_loop and e.sign == -1) else [1, -1, 2, -2, 3, -3]
    for alpha in (1, -1, 2, -2):
        for beta in (1, -1, 2, -2):
            fixed = {bridge_uv: 2 * alpha, bridge_vw: 2 * beta}
            sol = solve_domains(g.subgraph(set(bv.edges) | set(fixed)), tau, domains, fixed)
            if sol is None:
                continue
            values = {eid: 0 for eid in g.edge_ids}
            values.update(sol)
            values.update(fixed)
            for bridge, scale in ((bridge_uv, alpha), (bridge_vw, beta)):
                for eid, x in outer[bridge][1].items():
                    values[eid] = scale * x
            return values
    raise SearchExhausted("no 5-flow meeting the loop condition on the middle component")


def five_flow_odd_components(g: SignedGraph, support: Iterable[int],
                             tau: Mapping[HalfEdge, int] | None = None) -> IntFlow:
    """5-flow for a Z2-flow support with an odd number (at least 3) of odd components.

    Follows the minimal-counterexample induction constructively: non-support
    edges outside a spanning tree of the contracted graph get 0, an even leaf
    component is solved separately with a 2-flow, and an odd leaf ``u`` whose
    neighbour is not odd is cut off, replaced by a negative loop on the other
    side, solved recursively and stitched back with the joining edge valued
    ``2a`` where ``a`` is the loop's value.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    support = set(support)
    comps = support_components(g, support)
    odd = len(comps.odd)
    if odd < 3 or odd % 2 == 0:
        raise PreconditionError(f"need an odd number (>= 3) of odd components, got {odd}")
    if not g.is_connected():
        raise PreconditionError("graph must be connected")

    def ids(start=g.next_edge_id() + 10):
        n = start
        while True:
            yield n
            n += 1

    values = _solve5(_Instance(g, tau, support), ids())
    flow = make_flow(g, {eid: values.get(eid, 0) for eid in g.edge_ids}, tau, k=5)
    bad = odd_component_flow_violations(g, support, flow)
    if bad or flow.max_abs > 4:
        raise AssertionError(f"5-flow construction broke its postconditions: {bad}")
    return flow
