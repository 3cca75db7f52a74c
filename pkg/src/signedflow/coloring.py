"""Proper 3-edge-colorings of cubic (multi)graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .analysis import edge_components
from .core import Circuit, PreconditionError, SignedGraph, circuit_from_edges


class NotColorable(Exception):
    """The cubic graph has no proper 3-edge-coloring (it is class two)."""


@dataclass(frozen=True)
class EdgeColoring:
    R: frozenset[int]
    B: frozenset[int]
    Y: frozenset[int]

    @property
    def classes(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
        return (self.R, self.B, self.Y)

    def color_of(self, eid: int) -> int:
        for i, c in enumerate(self.classes):
            if eid in c:
                return i
        raise KeyError(eid)

    def parities(self, g: SignedGraph) -> tuple[int, int, int]:
        neg = g.negative_edges
        return tuple(len(c & neg) % 2 for c in self.classes)


def check_cubic(g: SignedGraph) -> None:
    for e in g.edges:
        if e.is_loop:
            raise PreconditionError(f"loop {e.id} in a graph that must be cubic and loopless")
    bad = [v for v in g.vertices if g.degree(v) != 3]
    if bad:
        raise PreconditionError(f"graph is not cubic at vertices {bad[:5]}")


def is_proper(g: SignedGraph, coloring: EdgeColoring) -> bool:
    for v in g.vertices:
        colors = [coloring.color_of(eid) for eid, _ in g.half_edges(v)]
        if len(set(colors)) != len(colors):
            return False
    return len(coloring.R | coloring.B | coloring.Y) == len(g.edges)


def three_edge_color(g: SignedGraph) -> EdgeColoring:
    """Backtracking 3-edge-coloring, most constrained edge first.

    Raises :class:`NotColorable` when the search is exhausted.  The result is
    deterministic for a given graph.
    """
    check_cubic(g)
    if not g.edges:
        return EdgeColoring(frozenset(), frozenset(), frozenset())
    color: dict[int, int] = {}
    used = {v: set() for v in g.vertices}
    neighbours = {e.id: sorted({x for w in (e.u, e.v) for x in g.incident(w)} - {e.id}) for e in g.edges}

    def available(eid):
        e = g.edge(eid)
        return [c for c in range(3) if c not in used[e.u] and c not in used[e.v]]

    def pick():
        best, best_opts = None, None
        for e in g.edges:
            if e.id in color:
                continue
            opts = available(e.id)
            if best is None or len(opts) < len(best_opts):
                best, best_opts = e.id, opts
                if len(opts) <= 1:
                    break
        return best, best_opts

    def assign(eid, c):
        e = g.edge(eid)
        color[eid] = c
        used[e.u].add(c)
        used[e.v].add(c)

    def unassign(eid):
        e = g.edge(eid)
        c = color.pop(eid)
        used[e.u].discard(c)
        used[e.v].discard(c)

    # the three edges at the first vertex may be colored 0, 1, 2 without loss
    first = g.incident(g.vertices[0])
    for c, eid in enumerate(first):
        assign(eid, c)

    def solve():
        eid, opts = pick()
        if eid is None:
            return True
        for c in opts:
            assign(eid, c)
            if all(available(n) or n in color for n in neighbours[eid]) and solve():
                return True
            unassign(eid)
        return False

    if not solve():
        raise NotColorable("no proper 3-edge-coloring exists")
    classes = [frozenset(e for e, c in color.items() if c == i) for i in range(3)]
    return EdgeColoring(*classes)


def order_classes(coloring: EdgeColoring, g: SignedGraph) -> EdgeColoring:
    """Relabel so that R and B carry the same number of negative edges mod 2.

    Among the admissible relabelings the lexicographically smallest
    permutation of the current (R, B, Y) positions is taken.
    """
    par = coloring.parities(g)
    cls = coloring.classes
    for perm in permutations(range(3)):
        if par[perm[0]] == par[perm[1]]:
            return EdgeColoring(cls[perm[0]], cls[perm[1]], cls[perm[2]])
    raise AssertionError("three parities always contain an equal pair")


def two_factor(g: SignedGraph, class1, class2) -> list[Circuit]:
    """Circuits of the union of two color classes, ordered by smallest edge id."""
    union = set(class1) | set(class2)
    return [circuit_from_edges(g, es) for es, _ in edge_components(g, union)]


def swap_on_circuit(coloring: EdgeColoring, circuit: Circuit) -> EdgeColoring:
    """Exchange R and B along a circuit of the RB 2-factor."""
    c = circuit.edge_set
    return EdgeColoring((coloring.R - c) | (coloring.B & c), (coloring.B - c) | (coloring.R & c), coloring.Y)
