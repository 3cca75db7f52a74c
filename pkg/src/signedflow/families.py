"""Named graph families and random instance generators.

All builders return graphs on integer vertices ``0..n-1`` so they serialize
directly.  Signs default to positive; pass ``negative`` edge ids or use
:meth:`SignedGraph.with_negative`.
"""

from __future__ import annotations

import random
from typing import Iterable

import networkx as nx

from .coloring import EdgeColoring
from .core import Circuit, PreconditionError, SignedGraph, build_graph


def _graph(pairs, n, negative: Iterable[int] = ()) -> SignedGraph:
    neg = set(negative)
    return build_graph([(u, v, "-" if i in neg else "+") for i, (u, v) in enumerate(pairs)], vertices=range(n))


def circuit(n: int, negative: Iterable[int] = ()) -> SignedGraph:
    """Circuit of length n; n = 1 is a loop, n = 2 a digon."""
    if n < 1:
        raise PreconditionError("circuit length must be positive")
    return _graph([(i, (i + 1) % n) for i in range(n)], n, negative)


def short_barbell(a: int = 1, b: int = 1) -> SignedGraph:
    """Two unbalanced circuits of lengths a and b sharing vertex 0."""
    pairs = [(i, (i + 1) % a) for i in range(a)]
    off = a - 1
    ring = [0] + [off + i for i in range(1, b)]
    pairs += [(ring[i], ring[(i + 1) % b]) for i in range(b)]
    return _graph(pairs, a + b - 1, [0, a])


def long_barbell(path: int = 1, a: int = 1, b: int = 1) -> SignedGraph:
    """Two unbalanced circuits joined by a path with ``path`` edges."""
    if path < 1:
        raise PreconditionError("path length must be positive")
    pairs = [(i, (i + 1) % a) for i in range(a)]
    verts = list(range(a))
    p = [0] + [a + i for i in range(path)]
    pairs += list(zip(p, p[1:]))
    x = p[-1]
    start = p[-1] + 1
    ring = [x] + [start + i for i in range(b - 1)]
    neg_b = len(pairs)
    pairs += [(ring[i], ring[(i + 1) % b]) for i in range(b)]
    n = len(verts) + path + b - 1
    return _graph(pairs, n, [0, neg_b])


def theta(a: int, b: int, c: int) -> SignedGraph:
    """Three internally disjoint paths of lengths a, b, c between vertices 0 and 1."""
    pairs, n = [], 2
    for length in (a, b, c):
        inner = list(range(n, n + length - 1))
        n += length - 1
        seq = [0] + inner + [1]
        pairs += list(zip(seq, seq[1:]))
    return _graph(pairs, n)


def complete(n: int) -> SignedGraph:
    return _graph([(i, j) for i in range(n) for j in range(i + 1, n)], n)


def k4() -> SignedGraph:
    return complete(4)


def k33() -> SignedGraph:
    return _graph([(i, 3 + j) for i in range(3) for j in range(3)], 6)


def prism(n: int = 3) -> SignedGraph:
    """Circular ladder: rims 0..n-1 and n..2n-1, rungs last."""
    pairs = [(i, (i + 1) % n) for i in range(n)] + [(n + i, n + (i + 1) % n) for i in range(n)]
    pairs += [(i, n + i) for i in range(n)]
    return _graph(pairs, 2 * n)


def prism_hamilton_order(n: int) -> list[int]:
    return list(range(n)) + [n + (n - 1 - i) for i in range(n)]


def cube() -> SignedGraph:
    pairs = [(a, a ^ (1 << i)) for a in range(8) for i in range(3) if a < a ^ (1 << i)]
    return _graph(pairs, 8)


def wheel(n: int) -> SignedGraph:
    """Rim 0..n-1 then spokes to hub n."""
    if n < 3:
        raise PreconditionError("a wheel needs at least 3 rim vertices")
    pairs = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return _graph(pairs, n + 1)


def circulant(n: int, jumps: Iterable[int]) -> SignedGraph:
    pairs = [(i, (i + j) % n) for j in jumps for i in range(n)]
    return _graph(pairs, n)


def ladder_coloring(n: int) -> EdgeColoring:
    """Proper coloring of ``prism(n)``, n even: alternate rim edges R/B, rungs Y."""
    if n % 2:
        raise PreconditionError("ladder coloring needs an even rim")
    R = [i for i in range(0, n, 2)] + [n + i for i in range(0, n, 2)]
    B = [i for i in range(1, n, 2)] + [n + i for i in range(1, n, 2)]
    return EdgeColoring(frozenset(R), frozenset(B), frozenset(range(2 * n, 3 * n)))


def exceptional_ladder() -> tuple[SignedGraph, EdgeColoring]:
    """Prism on 12 vertices whose coloring has RB balanced and 3 odd circuits in RY and BY."""
    n = 6
    return prism(n).with_negative([2 * n, 2 * n + 2, 2 * n + 4]), ladder_coloring(n)


def bouquet(loops: int, negative: int | None = None) -> SignedGraph:
    negative = loops if negative is None else negative
    return _graph([(0, 0)] * loops, 1, range(negative))


def blowup_fixture() -> SignedGraph:
    """Vertex 0 of degree 7: two negative loops plus a triangle through 1, 2, 3."""
    pairs = [(0, 0), (0, 0), (0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]
    return _graph(pairs, 4, [0, 1])


def tripod_fixture() -> tuple[SignedGraph, Circuit]:
    """Negative triangle C = 0 1 2 with a star from vertex 3 to each corner."""
    g = _graph([(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)], 4, [0, 1, 2])
    return g, Circuit((0, 1, 2), (0, 1, 2))


def cosegment_fixture() -> tuple[SignedGraph, Circuit]:
    """Ten-vertex circuit with five two-edge paths whose cosegments interleave.

    Points on C in order: x1 y5 x2 y1 x3 y2 x4 y3 x5 y4, each path joining
    x_i to y_i through a new vertex.  Arcs 0, 1, 9 are negative so every
    cosegment x_i..y_i is even and C is odd.
    """
    order = ["x1", "y5", "x2", "y1", "x3", "y2", "x4", "y3", "x5", "y4"]
    pos = {p: i for i, p in enumerate(order)}
    pairs = [(i, (i + 1) % 10) for i in range(10)]
    for i in range(1, 6):
        m = 9 + i
        pairs += [(pos[f"x{i}"], m), (m, pos[f"y{i}"])]
    g = _graph(pairs, 15, [0, 1, 9])
    return g, Circuit(tuple(range(10)), tuple(range(10)))


FAMILIES = {
    "circuit": lambda n: circuit(n),
    "negative-circuit": lambda n: circuit(n, [0]),
    "barbell": lambda n: long_barbell(max(n, 1)),
    "short-barbell": lambda n: short_barbell(max(n, 1), max(n, 1)),
    "k4": lambda n: k4(),
    "k33": lambda n: k33(),
    "prism": lambda n: prism(max(n, 3)),
    "cube": lambda n: cube(),
    "wheel": lambda n: wheel(max(n, 3)),
    "blowup": lambda n: blowup_fixture(),
    "bouquet": lambda n: bouquet(max(n, 1)),
}


def family(name: str, n: int) -> SignedGraph:
    if name not in FAMILIES:
        raise PreconditionError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILIES))}")
    return FAMILIES[name](n)


# -- random instances ------------------------------------------------------------

def random_signs(g: SignedGraph, rng: random.Random, p: float = 0.5) -> SignedGraph:
    return g.with_negative([e.id for e in g.edges if rng.random() < p])


def random_connected(rng: random.Random, n: int, m: int, loops: int = 0) -> SignedGraph:
    """Random connected multigraph: a random tree plus extra edges and loops, random signs."""
    pairs = [(rng.randrange(i), i) for i in range(1, n)]
    while len(pairs) < m - loops:
        pairs.append((rng.randrange(n), rng.randrange(n)))
    pairs += [(v, v) for v in (rng.randrange(n) for _ in range(loops))]
    g = _graph(pairs, n)
    return random_signs(g, rng)


def random_planar(rng: random.Random, n: int, loops: int = 0) -> SignedGraph:
    while True:
        G = nx.gnm_random_graph(n, rng.randint(n, 2 * n), seed=rng.randrange(2 ** 31))
        if nx.is_connected(G) and nx.check_planarity(G)[0]:
            break
    pairs = list(G.edges()) + [(v, v) for v in (rng.randrange(n) for _ in range(loops))]
    return random_signs(_graph(pairs, n), rng, 0.4)


def random_hamiltonian(rng: random.Random) -> tuple[SignedGraph, list[int]]:
    """Wheel, circulant or prism with random signs, plus a Hamilton vertex order."""
    kind = rng.choice("wcp")
    if kind == "w":
        n = rng.randint(3, 8)
        g, order = wheel(n), list(range(n)) + [n]
    elif kind == "c":
        n = rng.randint(5, 10)
        jumps = [1] + rng.sample(range(2, n // 2 + 1), k=min(2, n // 2 - 1))
        g, order = circulant(n, jumps), list(range(n))
    else:
        n = rng.randint(3, 6)
        g, order = prism(n), prism_hamilton_order(n)
    return random_signs(g, rng, 0.4), order


def random_odd_components(rng: random.Random, odd: int | None = None,
                          even: int | None = None) -> tuple[SignedGraph, frozenset[int]]:
    """Connected signed graph with an eulerian support having an odd number (>= 3) of odd components.

    Each support component is a short circuit, a loop, or two circuits
    sharing a vertex; components are tied together (and to a few extra
    vertices) by non-support edges with random signs.
    """
    odd = odd if odd is not None else rng.choice([3, 3, 5, 7])
    even = even if even is not None else rng.randint(0, 3)
    pairs: list[tuple[int, int]] = []
    neg: set[int] = set()
    support: set[int] = set()
    anchors: list[list[int]] = []
    n = 0

    def ring(length, verts):
        out = []
        for i in range(length):
            out.append((verts[i], verts[(i + 1) % length]))
        return out

    for parity in [1] * odd + [0] * even:
        shape = rng.choice(["ring", "ring", "loop", "figure8"])
        if shape == "loop":
            verts = [n]
            es = [(n, n)]
            n += 1
        elif shape == "ring":
            length = rng.randint(2, 4)
            verts = list(range(n, n + length))
            es = ring(length, verts)
            n += length
        else:
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            verts = list(range(n, n + a + b - 1))
            first = verts[:a]
            second = [verts[0]] + verts[a:]
            es = ring(a, first) + ring(b, second)
            n += a + b - 1
        ids = list(range(len(pairs), len(pairs) + len(es)))
        pairs += es
        support |= set(ids)
        k = parity if parity else rng.choice([0, 2])
        for eid in rng.sample(ids, k=min(k, len(ids))):
            neg.add(eid)
        if len(neg & set(ids)) % 2 != parity:
            neg ^= {ids[0]}
        anchors.append(verts)
    extra = rng.randint(0, 3)
    anchors += [[n + i] for i in range(extra)]
    n += extra
    rng.shuffle(anchors)
    for i in range(1, len(anchors)):
        a = rng.choice(anchors[rng.randrange(i)])
        b = rng.choice(anchors[i])
        if rng.random() < 0.5:
            neg.add(len(pairs))
        pairs.append((a, b))
    for _ in range(rng.randint(0, 3)):
        a, b = rng.randrange(n), rng.randrange(n)
        if rng.random() < 0.5:
            neg.add(len(pairs))
        pairs.append((a, b))
    return _graph(pairs, n, neg), frozenset(support)


def random_cover_instance(rng: random.Random) -> tuple[SignedGraph, Circuit]:
    """Unbalanced circuit 0..r-1 plus random all-positive attachments."""
    while True:
        r = rng.randint(2, 7)
        n = r + rng.randint(0, 4)
        pairs = [(i, (i + 1) % r) for i in range(r)]
        for _ in range(rng.randint(1, 5)):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                pairs.append((a, b))
        neg = [i for i in range(r) if rng.random() < 0.5]
        if len(neg) % 2 == 0:
            neg = neg[1:] if neg else [0]
        g = _graph(pairs, n, neg)
        if g.is_connected():
            return g, Circuit(tuple(range(r)), tuple(range(r)))


def random_branch_b_instance(rng: random.Random) -> tuple[SignedGraph, Circuit]:
    """Odd circuit 0..r-1 plus vertex-disjoint positive paths, each joining two circuit vertices.

    A component attached at exactly two points determines exactly one
    negative segment, so admissible instances take the cosegment-cover route.
    """
    r = rng.randint(4, 12)
    pairs = [(i, (i + 1) % r) for i in range(r)]
    n = r
    free = list(range(r))
    rng.shuffle(free)
    for _ in range(rng.randint(2, r // 2)):
        a, b = free.pop(), free.pop()
        inner = rng.randint(0, 2)
        seq = [a] + list(range(n, n + inner)) + [b]
        n += inner
        pairs += list(zip(seq, seq[1:]))
    neg = [i for i in range(r) if rng.random() < 0.4]
    if len(neg) % 2 == 0:
        neg = neg[1:] if neg else [0]
    g = _graph(pairs, n, neg)
    return g, Circuit(tuple(range(r)), tuple(range(r)))
