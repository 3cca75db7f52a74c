"""A 4-flow covering an unbalanced circuit whose complement is balanced.

After switching ``G - E(C)`` to all-positive, every component ``M`` of
``G - E(C)`` cuts ``C`` into segments at its attachments.  If some ``M``
yields three or more negative segments, two balanced circuits through ``M``
(or a tripod inside ``M``) give the flow.  Otherwise every component yields
exactly one negative segment and the complementary arcs (cosegments) cover
``C``; closing each arc of a minimal cover with a path through its
component gives balanced circuits whose 2-flows add up to a 4-flow.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Mapping

import networkx as nx

from ..analysis import edge_components, is_balanced, is_flow_admissible
from ..core import (Circuit, HalfEdge, IntFlow, Path, PreconditionError, SignedGraph, circuit_from_edges,
                    default_orientation, make_flow, switch, walk_flow)


@dataclass(frozen=True)
class Component:
    edges: frozenset[int]
    vertices: tuple
    attachments: tuple[int, ...]          # positions on C, increasing
    segments: tuple[tuple[int, int, int], ...]  # (start position, length, negatives)

    @property
    def negative_segments(self) -> list[tuple[int, int, int]]:
        return [s for s in self.segments if s[2] % 2]


@dataclass(frozen=True)
class Cosegment:
    component: int
    start: int    # position of x on C
    length: int   # number of C edges from x to y
    edges: frozenset[int]


@dataclass(frozen=True)
class CosegmentCover:
    circuit: Circuit
    components: tuple[Component, ...]
    cover: tuple[Cosegment, ...]
    paths: tuple[Path, ...] = ()

    @property
    def t(self) -> int:
        return len(self.cover)

    def multiplicity(self) -> dict[int, int]:
        out = {e: 0 for e in self.circuit.edges}
        for s in self.cover:
            for e in s.edges:
                out[e] += 1
        return out


# -- geometry on the circuit ----------------------------------------------------

def _arc_edges(C: Circuit, start: int, length: int) -> list[int]:
    r = len(C)
    return [C.edges[(start + j) % r] for j in range(length)]


def _arc_steps(C: Circuit, start: int, length: int) -> list:
    r = len(C)
    return [(C.edges[(start + j) % r], C.vertices[(start + j) % r]) for j in range(length)]


def _arc_vertex(C: Circuit, pos: int):
    return C.vertices[pos % len(C)]


def _prepare(g: SignedGraph, C: Circuit, tau):
    """Switch so that ``G - E(C)`` is all-positive; returns (g2, tau2)."""
    if len(set(C.vertices)) != len(C.vertices) or len(set(C.edges)) != len(C.edges):
        raise PreconditionError("C is not a circuit")
    try:
        circuit_from_edges(g, C.edges)
    except PreconditionError as exc:
        raise PreconditionError(f"C is not a circuit: {exc}") from None
    if C.is_balanced(g):
        raise PreconditionError("C is balanced")
    rest = set(g.edge_ids) - C.edge_set
    witness = is_balanced(g, rest)
    if not witness:
        raise PreconditionError("G - E(C) is unbalanced")
    g2, tau2, _ = switch(g, witness.switching, tau)
    return g2, tau2


def circuit_components(g: SignedGraph, C: Circuit) -> list[Component]:
    """Components of ``G - E(C)`` meeting ``C``, with their segments.

    ``g`` must already be switched so that ``G - E(C)`` is all-positive.
    A vertex of ``C`` with no other edge is a trivial component with a single
    attachment; its only segment is the whole circuit.
    """
    pos = {v: i for i, v in enumerate(C.vertices)}
    rest = set(g.edge_ids) - C.edge_set
    pieces = [(es, vs) for es, vs in edge_components(g, rest)]
    covered = {v for _, vs in pieces for v in vs}
    pieces += [(frozenset(), (v,)) for v in C.vertices if v not in covered]
    r = len(C)
    neg = [1 if g.sign(e) == -1 else 0 for e in C.edges]
    out = []
    for es, vs in pieces:
        att = sorted(pos[v] for v in vs if v in pos)
        if not att:
            continue
        segs = []
        for j, a in enumerate(att):
            b = att[(j + 1) % len(att)]
            length = (b - a) % r or r
            segs.append((a, length, sum(neg[(a + i) % r] for i in range(length))))
        out.append(Component(frozenset(es), tuple(vs), tuple(att), tuple(segs)))
    out.sort(key=lambda m: m.attachments[0])
    return out


def minimal_cosegment_cover(g: SignedGraph, C: Circuit, components: list[Component] | None = None,
                            tau: Mapping[HalfEdge, int] | None = None) -> CosegmentCover:
    """Minimal set of cosegments covering ``E(C)``, in cyclic order.

    Starts from every nonempty cosegment and drops redundant ones (latest
    start first) until none can go.  Raises when some component has more
    than one negative segment, when the cosegments fail to cover ``C`` (the
    graph is then not flow-admissible) or when an edge lies in three
    cosegments.
    """
    if components is None:
        g, _ = _prepare(g, C, tau)
        components = circuit_components(g, C)
    r = len(C)
    cosegs = []
    for i, m in enumerate(components):
        negs = m.negative_segments
        if len(negs) != 1:
            raise PreconditionError(f"component {i} determines {len(negs)} negative segments")
        a, length, _ = negs[0]
        if length == r:
            continue
        start = (a + length) % r
        cosegs.append(Cosegment(i, start, r - length, frozenset(_arc_edges(C, start, r - length))))
    everything = set(C.edges)
    union = set().union(*(s.edges for s in cosegs)) if cosegs else set()
    if union != everything:
        raise PreconditionError("negative segments share an edge; the graph is not flow-admissible")
    # identical arcs are redundant; keep the first
    seen, chosen = set(), []
    for s in sorted(cosegs, key=lambda s: (s.start, -s.length, s.component)):
        if s.edges not in seen:
            seen.add(s.edges)
            chosen.append(s)
    changed = True
    while changed:
        changed = False
        for s in sorted(chosen, key=lambda s: (-s.start, s.length)):
            others = [x for x in chosen if x is not s]
            if others and set().union(*(x.edges for x in others)) == everything:
                chosen = others
                changed = True
                break
    chosen.sort(key=lambda s: s.start)
    cover = CosegmentCover(C, tuple(components), tuple(chosen))
    if max(cover.multiplicity().values()) > 2:
        raise AssertionError("an edge lies in three cosegments of a minimal cover")
    return cover


# -- paths inside a component ----------------------------------------------------

def _bfs_path(g: SignedGraph, edges: Iterable[int], src, targets: set, blocked: set = frozenset()):
    """Shortest path from ``src`` to the nearest target, avoiding ``blocked``
    as inner vertices.  Returns a :class:`Path` or None."""
    adj: dict = {}
    for eid in sorted(edges):
        e = g.edge(eid)
        if e.is_loop:
            continue
        adj.setdefault(e.u, []).append(eid)
        adj.setdefault(e.v, []).append(eid)
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x in targets and x != src:
            verts, es = [x], []
            while prev[x] is not None:
                eid, y = prev[x]
                es.append(eid)
                verts.append(y)
                x = y
            return Path(tuple(reversed(verts)), tuple(reversed(es)))
        if x != src and x in blocked:
            continue
        for eid in adj.get(x, []):
            y = g.neighbors(x, eid)
            if y not in prev:
                prev[y] = (eid, x)
                queue.append(y)
    return None


def _path_through(g: SignedGraph, m: Component, a, b, mid) -> Path | None:
    """An (a, b)-path in ``m`` through ``mid`` (vertex-disjoint halves)."""
    simple = nx.Graph()
    for eid in sorted(m.edges):
        e = g.edge(eid)
        if not e.is_loop and not simple.has_edge(e.u, e.v):
            simple.add_edge(e.u, e.v, eid=eid)
    if not all(simple.has_node(x) for x in (a, b, mid)):
        return None
    sink = ("__sink__",)
    simple.add_edge(a, sink)
    simple.add_edge(b, sink)
    try:
        halves = list(nx.node_disjoint_paths(simple, mid, sink))
    except nx.NetworkXNoPath:
        return None
    if len(halves) < 2:
        return None
    halves = [h[:-1] for h in halves[:2]]
    first = next(h for h in halves if h[-1] == a)
    second = next(h for h in halves if h[-1] == b)
    verts = list(reversed(first)) + second[1:]
    edges = [simple.edges[x, y]["eid"] for x, y in zip(verts, verts[1:])]
    return Path(tuple(verts), tuple(edges))


# -- the constructions --------------------------------------------------------------

@dataclass(frozen=True)
class CoverResult:
    flow: IntFlow
    branch: str
    cover: CosegmentCover | None = None
    legs: tuple[Path, ...] = ()
    arcs: tuple[tuple[int, ...], ...] = ()


def _closed(C: Circuit, start: int, length: int, back: Path) -> list:
    return _arc_steps(C, start, length) + back.steps()


def _branch_a(g, tau, C: Circuit, m: Component) -> CoverResult:
    r = len(C)
    negs = m.negative_segments
    n = len(negs)
    triples = [(negs[i], negs[(i + 1) % n], negs[(i + 2) % n]) for i in range(n)]
    for triple in triples:
        starts = [s[0] for s in triple]
        for i, j, k in permutations(range(3)):
            P = _path_through(g, m, _arc_vertex(C, starts[i]), _arc_vertex(C, starts[j]),
                              _arc_vertex(C, starts[k]))
            if P is None:
                continue
            cut = P.vertices.index(_arc_vertex(C, starts[k]))
            p1 = Path(P.vertices[:cut + 1], P.edges[:cut])   # u_i .. u_k
            p2 = Path(P.vertices[cut:], P.edges[cut:])       # u_k .. u_j
            f1 = walk_flow(g, _even_arc_closure(C, starts[i], starts[k], starts[j], p1), tau)
            f2 = walk_flow(g, _even_arc_closure(C, starts[k], starts[j], starts[i], p2), tau)
            vals = {e: 2 * f1.get(e, 0) + f2.get(e, 0) for e in set(f1) | set(f2)}
            return CoverResult(make_flow(g, vals, tau, k=4), "path through a third attachment")
    return _tripod(g, tau, C, m, [s[0] for s in triples[0]])


def _even_arc_closure(C: Circuit, a: int, b: int, other: int, path_ab: Path) -> list:
    """Closed walk: the arc of C from b to a that contains ``other``, then the path a -> b."""
    r = len(C)
    # arc from b clockwise to a contains ``other`` iff other is strictly between them that way
    if (other - b) % r < (a - b) % r:
        steps = _arc_steps(C, b, (a - b) % r or r)
        return steps + path_ab.steps()
    steps = _arc_steps(C, a, (b - a) % r or r)
    return path_ab.reversed().steps() + steps


def _tripod(g, tau, C: Circuit, m: Component, starts: list[int]) -> CoverResult:
    r = len(C)
    u = [_arc_vertex(C, s) for s in starts]
    P1 = _bfs_path(g, m.edges, u[0], {u[1]})
    if P1 is None:
        raise PreconditionError("component has no path between two attachments")
    P2 = _bfs_path(g, m.edges, u[2], set(P1.vertices))
    if P2 is None:
        raise PreconditionError("component is disconnected")
    v = P2.vertices[-1]
    cut = P1.vertices.index(v)
    legs = (Path(tuple(reversed(P1.vertices[:cut + 1])), tuple(reversed(P1.edges[:cut]))),   # v -> u1
            Path(P1.vertices[cut:], P1.edges[cut:]),                                         # v -> u2
            P2.reversed())                                                                   # v -> u3
    order = sorted(range(3), key=lambda i: starts[i])
    arcs = []
    for idx in range(3):
        a, b = starts[order[idx]], starts[order[(idx + 1) % 3]]
        arcs.append((order[idx], order[(idx + 1) % 3], tuple(_arc_edges(C, a, (b - a) % r))))

    def closure(i, j):
        # leg i reversed, leg j, then C from u_j the long way round to u_i
        a, b = starts[j], starts[i]
        return legs[i].reversed().steps() + legs[j].steps() + _arc_steps(C, a, (b - a) % r)

    # clockwise arcs run u_o0 -> u_o1 -> u_o2 -> u_o0; the long way from u_j to u_i
    # avoids the arc u_i -> u_j exactly when that arc is clockwise
    pairs = [(order[x], order[(x + 1) % 3]) for x in range(3)]
    flows = {p: walk_flow(g, closure(*p), tau) for p in pairs}
    best = None
    for (p, q), s in product(permutations(pairs, 2), (1, -1)):
        vals = {e: 2 * flows[p].get(e, 0) + s * flows[q].get(e, 0) for e in set(flows[p]) | set(flows[q])}
        leg_vals = sorted({abs(vals[l.edges[0]]) for l in legs if l.edges})
        arc_vals = sorted({abs(vals[a[2][0]]) for a in arcs if a[2]})
        score = (leg_vals != [1, 2, 3]) + (arc_vals != [1, 2, 3])
        if best is None or score < best[0]:
            best = (score, vals)
    flow = make_flow(g, best[1], tau, k=4)
    return CoverResult(flow, "tripod", legs=legs, arcs=tuple(a[2] for a in arcs))


def _branch_b(g, tau, C: Circuit, comps: list[Component]) -> CoverResult:
    cover = minimal_cosegment_cover(g, C, comps)
    cvert = set(C.vertices)
    paths = []
    for s in cover.cover:
        m = comps[s.component]
        x, y = _arc_vertex(C, s.start), _arc_vertex(C, s.start + s.length)
        P = _bfs_path(g, m.edges, y, {x}, blocked=cvert) or _bfs_path(g, m.edges, y, {x})
        if P is None:
            raise PreconditionError("component has no path between the ends of its cosegment")
        paths.append(P)
    cover = CosegmentCover(cover.circuit, cover.components, cover.cover, tuple(paths))
    unit = [walk_flow(g, _closed(C, s.start, s.length, P), tau) for s, P in zip(cover.cover, paths)]
    t = len(unit)
    # propagate signs so consecutive flows agree where their arcs overlap
    eps = [1] * t
    for i in range(1, t):
        common = sorted(cover.cover[i - 1].edges & cover.cover[i].edges)
        if common:
            e = common[0]
            eps[i] = 1 if eps[i - 1] * unit[i - 1][e] * unit[i][e] > 0 else -1

    def combine(signs, heavy):
        vals: dict[int, int] = {}
        for i in range(t):
            c = signs[i] * (2 if i == heavy else 1)
            for e, x in unit[i].items():
                vals[e] = vals.get(e, 0) + c * x
        return vals

    def ok(vals):
        return all(vals.get(e, 0) for e in C.edges) and all(abs(x) <= 3 for x in vals.values()) \
            and all(vals.get(e, 0) for P in paths for e in P.edges)

    vals = combine(eps, t - 1)
    if not ok(vals):
        for signs in product((1, -1), repeat=t - 1):
            for heavy in range(t - 1, -1, -1):
                vals = combine((1,) + signs, heavy)
                if ok(vals):
                    break
            else:
                continue
            break
        else:
            raise AssertionError("no sign pattern makes the cosegment flows nowhere-zero on C")
    return CoverResult(make_flow(g, vals, tau, k=4), "cosegment cover", cover=cover)


def cover_circuit_4flow(g: SignedGraph, C: Circuit, tau: Mapping[HalfEdge, int] | None = None,
                        check_admissible: bool = True, detail: bool = False):
    """4-flow whose support contains ``E(C)``.

    Preconditions: ``C`` unbalanced, ``G - E(C)`` balanced, ``g``
    flow-admissible.  Outside ``V(C)`` the support has maximum degree 3 with
    at most one vertex of degree 3.  The returned flow is expressed under
    ``tau`` (default: canonical orientation of ``g``).  With ``detail`` a
    :class:`CoverResult` naming the branch is returned instead.
    """
    tau = dict(tau) if tau is not None else default_orientation(g)
    if check_admissible:
        verdict = is_flow_admissible(g)
        if not verdict:
            raise PreconditionError(f"graph is not flow-admissible ({verdict.reason})")
    g2, tau2 = _prepare(g, C, tau)
    comps = circuit_components(g2, C)
    heavy = next((m for m in comps if len(m.negative_segments) >= 3), None)
    res = _branch_a(g2, tau2, C, heavy) if heavy else _branch_b(g2, tau2, C, comps)
    # switching leaves values alone, so the valuation is valid under (g, tau)
    flow = IntFlow(tau, dict(res.flow.values), 4)
    problems = cover_violations(g, C, flow)
    if problems:
        raise AssertionError("; ".join(problems))
    res = CoverResult(flow, res.branch, res.cover, res.legs, res.arcs)
    return res if detail else flow


def cover_violations(g: SignedGraph, C: Circuit, flow: IntFlow) -> list[str]:
    out = []
    for e in C.edges:
        if flow[e] == 0:
            out.append(f"circuit edge {e} carries 0")
    if flow.max_abs > 3:
        out.append(f"value {flow.max_abs} exceeds 3")
    deg: dict = {}
    for eid in flow.support:
        e = g.edge(eid)
        for x in (e.u, e.v):
            deg[x] = deg.get(x, 0) + 1
    cv = set(C.vertices)
    outside = {v: d for v, d in deg.items() if v not in cv}
    if any(d > 3 for d in outside.values()):
        out.append("a vertex off C has support degree above 3")
    if sum(1 for d in outside.values() if d == 3) > 1:
        out.append("more than one vertex off C has support degree 3")
    return out
