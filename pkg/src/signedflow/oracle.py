"""Exhaustive ground truth for small signed graphs.

Nothing here calls the constructive modules: flows are found by a
self-contained backtracking search, and signature classes come from linear
algebra over GF(2).
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

import networkx as nx
import numpy as np

from .core import IntFlow, SignedGraph, build_graph, default_orientation, verify_flow


@dataclass
class SearchStats:
    nodes: int = 0
    seconds: float = 0.0


def _incidence(g: SignedGraph, tau) -> np.ndarray:
    idx = {v: i for i, v in enumerate(g.vertices)}
    B = np.zeros((len(g.vertices), len(g.edges)))
    for j, e in enumerate(g.edges):
        B[idx[e.u], j] += tau[(e.id, 0)]
        B[idx[e.v], j] += tau[(e.id, 1)]
    return B


def forced_zero_edges(g: SignedGraph) -> list[int]:
    """Edges that vanish in every real flow.

    Edge ``e`` is zero on the kernel of the incidence matrix exactly when the
    unit vector of ``e`` lies in its row space, i.e. appending it does not
    raise the rank.  A graph with such an edge has no nowhere-zero flow.
    """
    if not g.edges:
        return []
    B = _incidence(g, default_orientation(g))
    r = np.linalg.matrix_rank(B) if B.size else 0
    out = []
    for j, e in enumerate(g.edges):
        unit = np.zeros((1, len(g.edges)))
        unit[0, j] = 1
        if np.linalg.matrix_rank(np.vstack([B, unit])) == r:
            out.append(e.id)
    return out


def exists_k_flow(g: SignedGraph, k: int, stats: SearchStats | None = None,
                  node_limit: int | None = None) -> IntFlow | None:
    """A nowhere-zero k-flow under the canonical orientation, or None.

    Depth-first search over values ``±1..±(k-1)``.  The next edge is taken
    at the vertex with fewest unassigned edges; a vertex with one open edge
    forces its value; partial sums exceeding what the open edges can still
    cancel are cut.  The first constrained edge is fixed positive, since
    negating a flow gives a flow.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    stats = stats if stats is not None else SearchStats()
    start = time.perf_counter()
    tau = default_orientation(g)
    values: dict[int, int] = {}
    coef: dict[int, dict] = {}
    for e in g.edges:
        c: dict = defaultdict(int)
        c[e.u] += tau[(e.id, 0)]
        c[e.v] += tau[(e.id, 1)]
        coef[e.id] = {v: x for v, x in c.items() if x}
    free_edges = [e.id for e in g.edges if not coef[e.id]]   # positive loops
    for eid in free_edges:
        values[eid] = 1
    if forced_zero_edges(g):
        stats.seconds += time.perf_counter() - start
        return None
    open_at = {v: [eid for eid in g.incident(v) if coef[eid].get(v)] for v in g.vertices}
    n_open = {v: len(open_at[v]) for v in g.vertices}
    cap = {v: sum(abs(coef[eid][v]) for eid in open_at[v]) * (k - 1) for v in g.vertices}
    partial = {v: 0 for v in g.vertices}
    order = list(g.vertices)
    first = [True]

    def assign(eid, x):
        values[eid] = x
        for v, c in coef[eid].items():
            partial[v] += c * x
            n_open[v] -= 1
            cap[v] -= abs(c) * (k - 1)

    def undo(eid):
        x = values.pop(eid)
        for v, c in coef[eid].items():
            partial[v] -= c * x
            n_open[v] += 1
            cap[v] += abs(c) * (k - 1)

    def feasible(eid):
        for v in coef[eid]:
            if abs(partial[v]) > cap[v]:
                return False
            if n_open[v] == 0 and partial[v]:
                return False
        return True

    def pick():
        best = None
        for v in order:
            n = n_open[v]
            if n and (best is None or n < n_open[best]):
                best = v
                if n == 1:
                    break
        if best is None:
            return None
        return next(eid for eid in open_at[best] if eid not in values)

    def rec():
        stats.nodes += 1
        if node_limit is not None and stats.nodes > node_limit:
            raise TimeoutError("node limit reached")
        eid = pick()
        if eid is None:
            return True
        cands = None
        for v, c in coef[eid].items():
            if n_open[v] == 1:
                if partial[v] % c:
                    return False
                x = -partial[v] // c
                cands = [x] if 0 < abs(x) < k else []
                break
        if cands is None:
            if first[0]:
                cands = list(range(1, k))
            else:
                cands = [s * m for m in range(1, k) for s in (1, -1)]
        was_first = first[0]
        first[0] = False
        for x in cands:
            assign(eid, x)
            if feasible(eid) and rec():
                return True
            undo(eid)
        first[0] = was_first
        return False

    found = rec()
    stats.seconds += time.perf_counter() - start
    if not found:
        return None
    flow = IntFlow(tau, {e.id: values[e.id] for e in g.edges}, k)
    if not verify_flow(g, flow):
        raise AssertionError("oracle produced an invalid witness")
    return flow


@dataclass
class OracleReport:
    minimum: int | None
    witness: IntFlow | None
    table: dict[int, bool]
    stats: SearchStats = field(default_factory=SearchStats)

    def lines(self) -> list[str]:
        out = [f"k={k} {'yes' if ok else 'no'}" for k, ok in sorted(self.table.items())]
        out.append(f"minimum={self.minimum if self.minimum is not None else 'none'}")
        return out


def min_flow_number(g: SignedGraph, kmax: int = 11) -> OracleReport:
    """Smallest k <= kmax with a nowhere-zero k-flow, by ascending search."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    stats = SearchStats()
    table: dict[int, bool] = {}
    witness = None
    minimum = None
    if forced_zero_edges(g):
        return OracleReport(None, None, {k: False for k in range(2, kmax + 1)}, stats)
    for k in range(2, kmax + 1):
        w = exists_k_flow(g, k, stats)
        if w is not None:
            minimum, witness = k, w
            break
        table[k] = False
    if minimum is not None:
        for k in range(minimum, kmax + 1):
            table[k] = True
    ks = sorted(table)
    assert all(table[a] <= table[b] for a, b in zip(ks, ks[1:])), "feasibility not monotone"
    return OracleReport(minimum, witness, table, stats)


# -- signature classes ------------------------------------------------------------

def _cut_basis(g: SignedGraph) -> tuple[list[int], list[int]]:
    """Reduced GF(2) basis of the cut space; bit ``m-1-i`` stands for edge i.

    Returns (basis vectors, their leading bit positions).
    """
    m = len(g.edges)
    pos = {e.id: i for i, e in enumerate(g.edges)}
    rows = []
    for v in g.vertices:
        x = 0
        for e in g.edges:
            if not e.is_loop and v in (e.u, e.v):
                x ^= 1 << (m - 1 - pos[e.id])
        if x:
            rows.append(x)
    basis: list[int] = []
    for x in rows:
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis = [min(b, b ^ x) for b in basis]
            basis.append(x)
            basis.sort(reverse=True)
    return basis, [b.bit_length() - 1 for b in basis]


def canonical_signature(g: SignedGraph, negative: Iterable[int]) -> frozenset[int]:
    """Lexicographically least negative set switching-equivalent to ``negative``."""
    m = len(g.edges)
    pos = {e.id: i for i, e in enumerate(g.edges)}
    x = 0
    for eid in negative:
        x ^= 1 << (m - 1 - pos[eid])
    basis, _ = _cut_basis(g)
    for b in basis:
        x = min(x, x ^ b)
    return frozenset(e.id for i, e in enumerate(g.edges) if x >> (m - 1 - i) & 1)


class SignatureClassIterator:
    """Switching-class representatives of the signatures on one base graph.

    Classes are cosets of the cut space; each is represented by its
    lexicographically least member, edge 0 being the most significant.
    """

    def __init__(self, base: SignedGraph):
        self.base = base
        m = len(base.edges)
        _, leads = _cut_basis(base)
        lead = set(leads)
        self._free = [i for i in range(m) if (m - 1 - i) not in lead]

    def __len__(self) -> int:
        return 2 ** len(self._free)

    def __iter__(self) -> Iterator[SignedGraph]:
        for bits in product((0, 1), repeat=len(self._free)):
            neg = [self.base.edges[i].id for i, b in zip(self._free, bits) if b]
            yield self.base.with_negative(neg)


def signature_classes(g: SignedGraph) -> SignatureClassIterator:
    return SignatureClassIterator(g)


def _nx(g: SignedGraph) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(g.vertices)
    for e in g.edges:
        G.add_edge(e.u, e.v, sign=e.sign)
    return G


def _iso_key(g: SignedGraph) -> str:
    G = _nx(g)
    H = nx.Graph()
    for u, v in G.edges():
        H.add_edge(u, v)
    labels = {}
    for u, v in H.edges:
        signs = sorted(d["sign"] for d in G.get_edge_data(u, v).values())
        labels[(u, v)] = str(signs)
    nx.set_edge_attributes(H, labels, "lab")
    for v in G.nodes:
        H.add_node(v)
    return nx.weisfeiler_lehman_graph_hash(H, edge_attr="lab") if H.number_of_edges() else str(len(G))


def enumerate_signed(bases: Iterable[SignedGraph], nmax: int | None = None,
                     up_to_isomorphism: bool = False) -> Iterator[tuple[SignedGraph, SignedGraph]]:
    """Stream ``(base, representative)`` pairs, one per switching class.

    Bases with more than ``nmax`` vertices are skipped.  With
    ``up_to_isomorphism`` representatives isomorphic as signed graphs (same
    signs after relabeling vertices) are reported once.
    """
    seen: dict[str, list[nx.MultiGraph]] = defaultdict(list)
    match = nx.algorithms.isomorphism.categorical_multiedge_match("sign", 0)
    for base in bases:
        if nmax is not None and len(base.vertices) > nmax:
            continue
        for g in SignatureClassIterator(base):
            if up_to_isomorphism:
                key = _iso_key(g)
                G = _nx(g)
                if any(nx.is_isomorphic(G, H, edge_match=match) for H in seen[key]):
                    continue
                seen[key].append(G)
            yield base, g


# -- small multigraphs ---------------------------------------------------------------

def connected_multigraphs(max_edges: int, loops: bool = True) -> Iterator[SignedGraph]:
    """All connected multigraphs with 1..max_edges edges, up to isomorphism, all-positive.

    Grown edge by edge: every connected graph arises from a smaller one by
    adding an edge between present vertices (or a loop) or a pendant edge to
    a new vertex.  Duplicates are removed with a hash plus an isomorphism
    test.
    """
    level = [(1, ())]
    for m in range(1, max_edges + 1):
        buckets: dict = defaultdict(list)
        nxt = []
        for n, edges in level:
            cands = [(u, v) for u in range(n) for v in range(u, n) if loops or u != v] + [(0, n)]
            extra = [(u, n) for u in range(1, n)]
            for u, v in cands + extra:
                n2 = max(n, v + 1)
                e2 = tuple(sorted(edges + ((u, v),)))
                G = nx.MultiGraph()
                G.add_nodes_from(range(n2))
                G.add_edges_from(e2)
                key = (n2, tuple(sorted(d for _, d in G.degree())),
                       nx.weisfeiler_lehman_graph_hash(nx.Graph(G)), sum(1 for a, b in e2 if a == b))
                if any(nx.is_isomorphic(G, H) for H in buckets[key]):
                    continue
                buckets[key].append(G)
                nxt.append((n2, e2))
        level = nxt
        for n, edges in level:
            yield build_graph([(u, v, "+") for u, v in edges], vertices=range(n))


def is_eulerian(g: SignedGraph) -> bool:
    return all(g.degree(v) % 2 == 0 for v in g.vertices)
