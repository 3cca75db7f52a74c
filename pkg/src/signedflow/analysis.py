"""Balance, unbalanced circuits, bridges and flow-admissibility."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable

from .core import Circuit, PreconditionError, SignedGraph


@dataclass(frozen=True)
class BalanceWitness:
    """Either a switching set making the edges positive, or an unbalanced circuit."""

    switching: frozenset | None = None
    circuit: Circuit | None = None

    @property
    def balanced(self) -> bool:
        return self.circuit is None

    def __bool__(self) -> bool:
        return self.balanced


def _tree_path(parent, depth, x, y):
    """Vertices/edges of the tree path x -> lca -> y."""
    up_x, ex = [x], []
    up_y, ey = [y], []
    while depth[x] > depth[y]:
        ex.append(parent[x][0])
        x = parent[x][1]
        up_x.append(x)
    while depth[y] > depth[x]:
        ey.append(parent[y][0])
        y = parent[y][1]
        up_y.append(y)
    while x != y:
        ex.append(parent[x][0])
        x = parent[x][1]
        up_x.append(x)
        ey.append(parent[y][0])
        y = parent[y][1]
        up_y.append(y)
    verts = up_x + list(reversed(up_y[:-1]))
    edges = ex + list(reversed(ey))
    return verts, edges


def is_balanced(g: SignedGraph, within: Iterable[int] | None = None) -> BalanceWitness:
    """Decide balance of ``g`` (or of the edge subset ``within``).

    Breadth-first search assigns a potential of ±1 to every vertex so that
    each tree edge satisfies ``p(u) p(v) = sign``.  A violated non-tree edge
    closes an unbalanced circuit with the tree path between its ends.
    """
    eids = set(g.edge_ids) if within is None else set(within)
    adj = defaultdict(list)
    for eid in sorted(eids):
        e = g.edge(eid)
        if e.is_loop:
            if e.sign == -1:
                return BalanceWitness(circuit=Circuit((e.u,), (eid,)))
            continue
        adj[e.u].append(eid)
        adj[e.v].append(eid)
    pot: dict = {}
    parent: dict = {}
    depth: dict = {}
    for root in g.vertices:
        if root in pot or root not in adj:
            continue
        pot[root], depth[root], parent[root] = 1, 0, None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for eid in adj[x]:
                if parent[x] is not None and parent[x][0] == eid:
                    continue
                y = g.neighbors(x, eid)
                s = g.sign(eid)
                if y not in pot:
                    pot[y] = pot[x] * s
                    depth[y] = depth[x] + 1
                    parent[y] = (eid, x)
                    queue.append(y)
                elif pot[y] != pot[x] * s:
                    verts, edges = _tree_path(parent, depth, x, y)
                    return BalanceWitness(circuit=Circuit(tuple(verts), tuple(edges) + (eid,)))
    return BalanceWitness(switching=frozenset(v for v, p in pot.items() if p == -1))


def find_unbalanced_circuit(g: SignedGraph, within: Iterable[int] | None = None) -> Circuit | None:
    return is_balanced(g, within).circuit


# -- eulerian supports ---------------------------------------------------------

@dataclass(frozen=True)
class SupportComponent:
    edges: frozenset[int]
    vertices: tuple
    negatives: int

    @property
    def odd(self) -> bool:
        return self.negatives % 2 == 1


@dataclass(frozen=True)
class SupportComponents:
    components: tuple[SupportComponent, ...]

    @property
    def odd(self) -> list[SupportComponent]:
        return [c for c in self.components if c.odd]

    @property
    def even(self) -> list[SupportComponent]:
        return [c for c in self.components if not c.odd]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def edge_components(g: SignedGraph, edge_ids: Iterable[int]) -> list[tuple[frozenset[int], tuple]]:
    """Connected pieces of an edge set as (edges, vertices in vertex order)."""
    eids = sorted(set(edge_ids))
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in eids:
        e = g.edge(eid)
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[b] = a
    groups: dict = defaultdict(set)
    for eid in eids:
        groups[find(g.edge(eid).u)].add(eid)
    out = []
    for es in groups.values():
        vs = {x for eid in es for x in (g.edge(eid).u, g.edge(eid).v)}
        out.append((frozenset(es), tuple(v for v in g.vertices if v in vs)))
    out.sort(key=lambda item: min(item[0]))
    return out


def support_components(g: SignedGraph, support: Iterable[int]) -> SupportComponents:
    support = set(support)
    deg: dict = defaultdict(int)
    for eid in support:
        e = g.edge(eid)
        deg[e.u] += 1
        deg[e.v] += 1
    odd = [v for v, d in deg.items() if d % 2]
    if odd:
        raise PreconditionError(f"support is not eulerian: odd degree at {odd}")
    comps = []
    for es, vs in edge_components(g, support):
        comps.append(SupportComponent(es, vs, sum(1 for e in es if g.sign(e) == -1)))
    return SupportComponents(tuple(comps))


# -- bridges and admissibility -------------------------------------------------

def bridges(g: SignedGraph, within: Iterable[int] | None = None) -> list[int]:
    """Bridge edge ids via iterative low-link DFS (parallel edges handled by id)."""
    eids = set(g.edge_ids) if within is None else set(within)
    adj = defaultdict(list)
    for eid in sorted(eids):
        e = g.edge(eid)
        if not e.is_loop:
            adj[e.u].append(eid)
            adj[e.v].append(eid)
    pre: dict = {}
    low: dict = {}
    out = []
    counter = 0
    for root in g.vertices:
        if root in pre:
            continue
        pre[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == via:
                    continue
                w = g.neighbors(v, eid)
                if w not in pre:
                    pre[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                low[v] = min(low[v], pre[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] > pre[u]:
                    out.append(via)
    return sorted(out)


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    reason: str
    edge: int | None = None

    def __bool__(self) -> bool:
        return self.admissible


ONE_NEGATIVE = "one-negative-edge equivalent"
BALANCED_BRIDGE = "bridge with balanced component"


def _component_admissibility(g: SignedGraph, comp_edges: set[int]) -> Admissibility:
    for b in bridges(g, comp_edges):
        e = g.edge(b)
        sides = edge_components(g, comp_edges - {b})
        for end in (e.u, e.v):
            side = next((es for es, vs in sides if end in vs), frozenset())
            if is_balanced(g, side):
                return Admissibility(False, BALANCED_BRIDGE, b)
    if not is_balanced(g, comp_edges):
        for eid in sorted(comp_edges):
            if is_balanced(g, comp_edges - {eid}):
                return Admissibility(False, ONE_NEGATIVE, eid)
    return Admissibility(True, "admissible")


def is_flow_admissible(g: SignedGraph) -> Admissibility:
    """Bouchet's characterization, applied to every connected component.

    A component fails when it switches to a single negative edge (tested as:
    unbalanced, yet balanced after deleting some edge) or when deleting a
    bridge leaves a balanced side.  An edgeless side counts as balanced.
    """
    for es, _ in edge_components(g, g.edge_ids):
        verdict = _component_admissibility(g, set(es))
        if not verdict:
            return verdict
    return Admissibility(True, "admissible")


def check_balanced_extension(g: SignedGraph, tree: Iterable[int]) -> bool:
    """True iff every fundamental circuit of the spanning tree is balanced."""
    tree = set(tree)
    adj = defaultdict(list)
    for eid in tree:
        e = g.edge(eid)
        if e.is_loop:
            raise PreconditionError("a spanning tree cannot contain a loop")
        adj[e.u].append(eid)
        adj[e.v].append(eid)
    comps = g.components()
    if len(tree) != len(g.vertices) - len(comps):
        raise PreconditionError("edge set is not a spanning tree")
    pot: dict = {}
    for c in comps:
        pot[c[0]] = 1
        stack = [c[0]]
        while stack:
            x = stack.pop()
            for eid in adj[x]:
                y = g.neighbors(x, eid)
                if y not in pot:
                    pot[y] = pot[x] * g.sign(eid)
                    stack.append(y)
        if any(v not in pot for v in c):
            raise PreconditionError("edge set is not a spanning tree")
    # the fundamental circuit of e has sign pot(u) * pot(v) * sign(e)
    return all(pot[e.u] * pot[e.v] * e.sign == 1 for e in g.edges if e.id not in tree)
