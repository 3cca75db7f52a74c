"""Recompute the frozen reference values in frozen.json by brute force.

Run from the repository root:  python3 tests/oracles/derive.py

Everything here works on raw edge lists with plain enumeration.  It uses no
module of the package, so agreement with the package is a real cross-check.
"""

from __future__ import annotations

import json
from collections import Counter
from itertools import permutations, product
from pathlib import Path

OUT = Path(__file__).with_name("frozen.json")


def boundary_ok(n, edges, values):
    """edges: (u, v, sign); canonical orientation: positive u->v, negative both +1."""
    b = [0] * n
    for (u, v, s), x in zip(edges, values):
        if s > 0:
            lo, hi = (u, v) if u <= v else (v, u)
            b[lo] += x
            b[hi] -= x
        else:
            b[u] += x
            b[v] += x
    return not any(b)


def all_nzf(n, edges, k):
    vals = [s * x for x in range(1, k) for s in (1, -1)]
    return [f for f in product(vals, repeat=len(edges)) if boundary_ok(n, edges, f)]


def min_k(n, edges, kmax):
    for k in range(2, kmax + 1):
        vals = [s * x for x in range(1, k) for s in (1, -1)]
        for f in product(vals, repeat=len(edges)):
            if boundary_ok(n, edges, f):
                return k
    return None


def switch(edges, U):
    return [(u, v, -s if (u in U) != (v in U) else s) for u, v, s in edges]


def balanced(n, edges):
    for bits in range(2 ** n):
        U = {i for i in range(n) if bits >> i & 1}
        if all(s > 0 for _, _, s in switch(edges, U)):
            return sorted(U)
    return None


def proper_colorings(edges):
    out = []
    for col in product(range(3), repeat=len(edges)):
        ok = True
        seen = set()
        for (u, v, _), c in zip(edges, col):
            for x in (u, v):
                if (x, c) in seen:
                    ok = False
                    break
                seen.add((x, c))
            if not ok:
                break
        if ok:
            out.append(col)
    return out


def cycle_lengths(edges, chosen):
    adj = {}
    for i in chosen:
        u, v, _ = edges[i]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen, lens = set(), []
    for s in adj:
        if s in seen:
            continue
        stack, size = [s], 0
        seen.add(s)
        while stack:
            x = stack.pop()
            size += 1
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        lens.append(size)
    return sorted(lens)


def perfect_matchings(n, edges):
    def rec(free, used):
        if not free:
            yield tuple(sorted(used))
            return
        x = min(free)
        for i, (u, v, _) in enumerate(edges):
            if x in (u, v) and u != v:
                y = v if u == x else u
                if y in free:
                    yield from rec(free - {x, y}, used + [i])
    return set(rec(frozenset(range(n)), []))


def orbit_count(n, edges):
    """Switching classes of all 2^m signatures, by explicit orbit enumeration."""
    m = len(edges)
    seen, classes = set(), 0
    for signs in product((1, -1), repeat=m):
        if signs in seen:
            continue
        classes += 1
        base = [(u, v, s) for (u, v, _), s in zip(edges, signs)]
        for bits in range(2 ** n):
            U = {i for i in range(n) if bits >> i & 1}
            seen.add(tuple(s for _, _, s in switch(base, U)))
    return classes


def multigraph_counts(max_edges):
    """Connected loopy multigraphs up to isomorphism, by canonical form over all permutations."""
    counts = {}
    for m in range(1, max_edges + 1):
        forms = set()
        for n in range(1, m + 2):
            pairs = [(i, j) for i in range(n) for j in range(i, n)]

            def multisets(start, left):
                if left == 0:
                    yield ()
                    return
                for i in range(start, len(pairs)):
                    for rest in multisets(i, left - 1):
                        yield (pairs[i],) + rest
            for es in multisets(0, m):
                verts = {x for e in es for x in e}
                if len(verts) != n:
                    continue
                parent = list(range(n))

                def find(x):
                    while parent[x] != x:
                        x = parent[x]
                    return x
                for u, v in es:
                    parent[find(u)] = find(v)
                if len({find(x) for x in range(n)}) != 1:
                    continue
                canon = min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in es))
                            for p in permutations(range(n)))
                forms.add((n, canon))
        counts[m] = len(forms)
    return counts


P, M = 1, -1


def main():
    out = {}
    d2 = [(0, 1, P), (0, 1, M)]
    out["d2_valid_pm1_patterns"] = sum(boundary_ok(2, d2, f) for f in product((1, -1), repeat=2))
    out["d2_min_k_11"] = min_k(2, d2, 5)   # k <= 5 exhausts 8^2 patterns; inadmissible anyway
    sq = [(0, 1, M), (1, 2, P), (2, 3, M), (3, 0, P)]
    out["square_two_negative_switching"] = balanced(4, sq)
    sb = [(0, 0, M), (0, 0, M)]
    out["sb_2flows"] = [list(f) for f in all_nzf(1, sb, 2)]
    lb = [(0, 0, M), (0, 1, P), (1, 1, M)]
    out["long_barbell_2flows"] = len(all_nzf(2, lb, 2))
    out["long_barbell_3flows"] = sorted(list(f) for f in all_nzf(2, lb, 3))
    out["long_barbell_min_k"] = min_k(2, lb, 4)
    k4 = [(0, 1, P), (0, 2, P), (0, 3, P), (1, 2, P), (1, 3, P), (2, 3, P)]
    k4neg = [(u, v, M) for u, v, _ in k4]
    out["k4_all_negative_min_k"] = min_k(4, k4neg, 6)
    out["k4_all_positive_min_k"] = min_k(4, k4, 6)
    out["k4_classes"] = orbit_count(4, k4)
    k33 = [(i, 3 + j, P) for i in range(3) for j in range(3)]
    out["k33_proper_colorings"] = len(proper_colorings(k33))
    prism = [(0, 1, P), (1, 2, P), (2, 0, P), (3, 4, P), (4, 5, P), (5, 3, P), (0, 3, P), (1, 4, P), (2, 5, P)]
    shapes = Counter()
    for col in proper_colorings(prism):
        for a, b in ((0, 1), (0, 2), (1, 2)):
            shapes[str(cycle_lengths(prism, [i for i, c in enumerate(col) if c in (a, b)]))] += 1
    out["prism_two_factor_shapes"] = sorted(shapes)
    outer = [(i, (i + 1) % 5, P) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5, P) for i in range(5)]
    spokes = [(i, 5 + i, P) for i in range(5)]
    pet = outer + inner + spokes
    pms = perfect_matchings(10, pet)
    out["petersen_perfect_matchings"] = len(pms)
    out["petersen_complement_cycles"] = sorted({str(cycle_lengths(pet, [i for i in range(15) if i not in pm]))
                                               for pm in pms})
    out["multigraph_counts"] = multigraph_counts(5)
    out["tree_classes"] = orbit_count(4, [(0, 1, P), (1, 2, P), (1, 3, P)])
    out["circuit5_classes"] = orbit_count(5, [(i, (i + 1) % 5, P) for i in range(5)])
    # wheel W4 (rim 0..3, hub 4), two adjacent negative spokes
    w4 = [(i, (i + 1) % 4, P) for i in range(4)] + [(i, 4, M if i in (0, 1) else P) for i in range(4)]
    out["w4_mixed_min_k"] = min_k(5, w4, 6)
    OUT.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(json.dumps(out, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
