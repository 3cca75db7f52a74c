"""Backtracking over per-edge candidate values with zero-boundary constraints."""

from __future__ import annotations

from collections import defaultdict
from typing import Mapping, Sequence

from ..core import HalfEdge, SignedGraph


def solve_domains(g: SignedGraph, tau: Mapping[HalfEdge, int], domains: Mapping[int, Sequence[int]],
                  fixed: Mapping[int, int] | None = None, node_limit: int = 2_000_000) -> dict[int, int] | None:
    """Pick one value per edge from ``domains`` so every touched vertex balances.

    ``fixed`` edges contribute to boundaries but are not searched.  Vertices
    incident only with fixed edges are not constrained.  Returns ``None`` when
    no assignment exists (or the node budget runs out).
    """
    fixed = dict(fixed or {})
    coef: dict[int, dict] = {}
    partial: dict = defaultdict(int)
    at_vertex: dict = defaultdict(list)
    for e in g.edges:
        c: dict = defaultdict(int)
        c[e.u] += tau[(e.id, 0)]
        c[e.v] += tau[(e.id, 1)]
        c = {v: x for v, x in c.items() if x}
        if e.id in domains:
            coef[e.id] = c
            for v in c:
                at_vertex[v].append(e.id)
        elif e.id in fixed:
            for v, x in c.items():
                partial[v] += x * fixed[e.id]
    constrained = [v for v in g.vertices if v in at_vertex]
    free: dict = {v: len(at_vertex[v]) for v in constrained}
    reach: dict = {v: sum(abs(coef[eid][v]) * max(map(abs, domains[eid])) for eid in at_vertex[v])
                   for v in constrained}
    assign: dict[int, int] = {}
    nodes = 0

    def set_value(eid, x):
        assign[eid] = x
        for v, c in coef[eid].items():
            partial[v] += c * x
            free[v] -= 1
            reach[v] -= abs(c) * max(map(abs, domains[eid]))

    def unset(eid):
        x = assign.pop(eid)
        for v, c in coef[eid].items():
            partial[v] -= c * x
            free[v] += 1
            reach[v] += abs(c) * max(map(abs, domains[eid]))

    def consistent(eid):
        for v in coef[eid]:
            if free[v] == 0 and partial[v] != 0:
                return False
            if abs(partial[v]) > reach[v]:
                return False
        return True

    unconstrained = [eid for eid in domains if not coef[eid]]

    def choose():
        best_v, best_n = None, None
        for v in constrained:
            n = free[v]
            if n and (best_n is None or n < best_n):
                best_v, best_n = v, n
                if n == 1:
                    break
        if best_v is None:
            return None
        return min(eid for eid in at_vertex[best_v] if eid not in assign)

    def rec():
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            return False
        eid = choose()
        if eid is None:
            return True
        # a vertex with a single open edge forces that edge's value
        forced = None
        for v, c in coef[eid].items():
            if free[v] == 1:
                if partial[v] % c:
                    return False
                forced = -partial[v] // c
                break
        cands = domains[eid] if forced is None else ([forced] if forced in domains[eid] else [])
        for x in cands:
            set_value(eid, x)
            if consistent(eid) and rec():
                return True
            unset(eid)
        return False

    if any(free[v] == 0 and partial[v] for v in constrained):
        return None
    if not rec():
        return None
    for eid in unconstrained:
        assign[eid] = next((x for x in domains[eid] if x != 0), domains[eid][0])
    return assign
