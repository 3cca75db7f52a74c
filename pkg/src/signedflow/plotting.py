"""Static figures for reports, rendered to files with matplotlib (Agg backend)."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from .core import IntFlow, SignedGraph  # noqa: E402

POSITIVE = "#1f4e79"
NEGATIVE = "#b22222"


def _layout(g: SignedGraph) -> dict:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from((e.u, e.v) for e in g.edges if not e.is_loop)
    if G.number_of_nodes() <= 2:
        return {v: (float(i), 0.0) for i, v in enumerate(g.vertices)}
    planar, _ = nx.check_planarity(G)
    if planar and nx.is_connected(G):
        try:
            return nx.planar_layout(G)
        except nx.NetworkXException:
            pass
    return nx.circular_layout(G)


def draw_signed_graph(g: SignedGraph, flow: IntFlow | None = None, path: str = "graph.png",
                      title: str | None = None, highlight=()) -> str:
    """Draw ``g`` with negative edges dashed and, if given, flow values as labels.

    Parallel edges are bent apart and loops drawn as small circles.  Edges
    in ``highlight`` are drawn thicker.  Returns ``path``.
    """
    pos = _layout(g)
    fig, ax = plt.subplots(figsize=(6, 6))
    seen: dict = {}
    highlight = set(highlight)
    for e in g.edges:
        color = NEGATIVE if e.sign == -1 else POSITIVE
        style = "--" if e.sign == -1 else "-"
        lw = 2.8 if e.id in highlight else 1.4
        label = f"{flow[e.id]}" if flow is not None else str(e.id)
        x0, y0 = pos[e.u]
        if e.is_loop:
            n = seen.setdefault((e.u, e.u), 0)
            seen[(e.u, e.u)] += 1
            r = 0.08 + 0.04 * n
            circ = plt.Circle((x0, y0 + r), r, fill=False, ls=style, color=color, lw=lw)
            ax.add_patch(circ)
            ax.text(x0, y0 + 2 * r + 0.02, label, ha="center", fontsize=9)
            continue
        key = tuple(sorted((g.order(e.u), g.order(e.v))))
        n = seen.setdefault(key, 0)
        seen[key] += 1
        x1, y1 = pos[e.v]
        bend = 0.0 if n == 0 else 0.25 * math.ceil(n / 2) * (1 if n % 2 else -1)
        ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="-", color=color, ls=style, lw=lw,
                                    connectionstyle=f"arc3,rad={bend}"))
        mx, my = (x0 + x1) / 2, (y0 + y1) / 2
        dx, dy = y0 - y1, x1 - x0
        ax.text(mx + bend * dx / 2, my + bend * dy / 2, label, ha="center", va="center", fontsize=9,
                bbox=dict(boxstyle="round,pad=0.15", fc="white", ec="none"))
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    ax.scatter(xs, ys, s=260, c="white", edgecolors="black", zorder=3)
    for v, (x, y) in pos.items():
        ax.text(x, y, str(v), ha="center", va="center", fontsize=8, zorder=4)
    if title:
        ax.set_title(title, fontsize=11)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.margins(0.15)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_feasibility(table: dict[int, bool], path: str = "oracle.png", title: str | None = None) -> str:
    """Bar strip of the per-k feasibility table from the oracle."""
    ks = sorted(table)
    fig, ax = plt.subplots(figsize=(max(3, 0.5 * len(ks) + 1), 1.8))
    colors = ["#2e8b57" if table[k] else "#d3d3d3" for k in ks]
    ax.bar(ks, [1] * len(ks), color=colors, edgecolor="black", width=0.9)
    ax.set_xticks(ks)
    ax.set_yticks([])
    ax.set_xlabel("k")
    ax.set_title(title or "nowhere-zero k-flow exists", fontsize=10)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
