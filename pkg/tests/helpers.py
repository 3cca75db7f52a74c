"""Shared instance builders for the test suite."""

from signedflow.analysis import is_balanced
from signedflow.core import build_graph


def loaded_vertex(d, t, negative_edge=False):
    """Vertex 0 of degree d carrying t negative loops; its other d - 2t edges go to cubic neighbours.

    With ``negative_edge`` the edge 0-1 is negative as well.
    """
    r = d - 2 * t
    triples = [(0, 0, "-")] * t + [(0, i, "-" if negative_edge and i == 1 else "+") for i in range(1, r + 1)]
    if r == 1:
        triples.append((1, 1, "-"))
    elif r == 2:
        triples += [(1, 2, "+"), (1, 2, "-")]
    else:
        triples += [(i, i % r + 1, "+") for i in range(1, r + 1)]
    return build_graph(triples, vertices=range(r + 1))


def same_up_to_switching(g, h, rename=None):
    """Same vertices and edge ends, with signatures equivalent under switching."""
    rename = rename or {}
    if set(g.vertices) != set(h.vertices):
        return False
    mine = {rename.get(e.id, e.id): e for e in h.edges}
    if set(mine) != set(g.edge_ids):
        return False
    diff = []
    for e in g.edges:
        f = mine[e.id]
        if {e.u, e.v} != {f.u, f.v}:
            return False
        diff.append((e.u, e.v, e.sign * f.sign))
    return bool(is_balanced(build_graph(diff, vertices=g.vertices)))
