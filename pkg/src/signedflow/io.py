"""Text formats: GraphFile, FlowFile and DOT export.

GraphFile::

    sg <n> <m>
    e <u> <v> <+|->      (m lines, 0-based vertices)

FlowFile::

    flow <k>
    f <edge-index> <value>   (one line per edge)

Flow values are read and written under :func:`default_orientation`.
Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

from .core import IntFlow, SignedFlowError, SignedGraph, build_graph, default_orientation


class ParseError(SignedFlowError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield no, s.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", no) from None


def parse_graph(text: str) -> SignedGraph:
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty graph file")
    no, head = rows[0]
    if head[0] != "sg" or len(head) != 3:
        raise ParseError("expected header 'sg <n> <m>'", no)
    n, m = _int(head[1], no, "n"), _int(head[2], no, "m")
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", no)
    triples = []
    for no, tok in rows[1:]:
        if tok[0] != "e" or len(tok) != 4:
            raise ParseError("expected 'e <u> <v> <+|->'", no)
        u, v = _int(tok[1], no, "u"), _int(tok[2], no, "v")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1}", no)
        if tok[3] not in ("+", "-"):
            raise ParseError(f"sign must be '+' or '-', got {tok[3]!r}", no)
        triples.append((u, v, tok[3]))
    if len(triples) != m:
        raise ParseError(f"header promises {m} edges, found {len(triples)}", rows[-1][0])
    return build_graph(triples, vertices=range(n))


def _index(g: SignedGraph) -> dict:
    return {v: i for i, v in enumerate(g.vertices)}


def emit_graph(g: SignedGraph) -> str:
    idx = _index(g)
    out = [f"sg {len(g.vertices)} {len(g.edges)}"]
    for e in g.edges:
        out.append(f"e {idx[e.u]} {idx[e.v]} {'-' if e.sign == -1 else '+'}")
    return "\n".join(out) + "\n"


def normalize(g: SignedGraph) -> SignedGraph:
    """Copy of ``g`` on vertices 0..n-1 (vertex order kept) with edge ids 0..m-1."""
    idx = _index(g)
    return build_graph([(idx[e.u], idx[e.v], e.sign) for e in g.edges], vertices=range(len(g.vertices)))


def emit_flow(g: SignedGraph, flow: IntFlow) -> str:
    """FlowFile for ``flow``, re-expressed under the canonical orientation."""
    flow = flow.under(default_orientation(g))
    out = [f"flow {flow.k}"]
    for i, e in enumerate(g.edges):
        out.append(f"f {i} {flow[e.id]}")
    return "\n".join(out) + "\n"


def parse_flow(text: str, g: SignedGraph) -> IntFlow:
    rows = list(_lines(text))
    if not rows:
        raise ParseError("empty flow file")
    no, head = rows[0]
    if head[0] != "flow" or len(head) != 2:
        raise ParseError("expected header 'flow <k>'", no)
    k = _int(head[1], no, "k")
    if k < 2:
        raise ParseError("k must be at least 2", no)
    vals: dict[int, int] = {}
    m = len(g.edges)
    for no, tok in rows[1:]:
        if tok[0] != "f" or len(tok) != 3:
            raise ParseError("expected 'f <edge-index> <value>'", no)
        i, x = _int(tok[1], no, "edge index"), _int(tok[2], no, "value")
        if not 0 <= i < m:
            raise ParseError(f"edge index out of range 0..{m - 1}", no)
        if i in vals:
            raise ParseError(f"edge {i} listed twice", no)
        if abs(x) > k - 1:
            raise ParseError(f"|{x}| exceeds k-1 = {k - 1}", no)
        vals[i] = x
    missing = [i for i in range(m) if i not in vals]
    if missing:
        raise ParseError(f"no value for edges {missing}", rows[-1][0])
    return IntFlow(default_orientation(g), {e.id: vals[i] for i, e in enumerate(g.edges)}, k)


def to_dot(g: SignedGraph, flow: IntFlow | None = None, name: str = "G") -> str:
    idx = _index(g)
    out = [f"graph {name} {{"]
    for v in g.vertices:
        out.append(f'  {idx[v]} [label="{v}"];')
    for e in g.edges:
        attrs = [f'label="{e.id}' + (f": {flow[e.id]}" if flow is not None else "") + '"']
        if e.sign == -1:
            attrs.append("style=dashed")
        out.append(f"  {idx[e.u]} -- {idx[e.v]} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"
