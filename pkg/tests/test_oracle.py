import itertools

import pytest

from signedflow.analysis import is_balanced, is_flow_admissible
from signedflow.core import build_graph, switch, verify_flow
from signedflow.families import circuit, k4
from signedflow.oracle import (SearchStats, canonical_signature, connected_multigraphs, enumerate_signed,
                               exists_k_flow, forced_zero_edges, min_flow_number, signature_classes)

from helpers import same_up_to_switching


def brute_force_exists(g, k):
    """Plain enumeration with the verifier, for cross-checking the search."""
    from signedflow.core import IntFlow, default_orientation
    tau = default_orientation(g)
    vals = [s * x for x in range(1, k) for s in (1, -1)]
    for f in itertools.product(vals, repeat=len(g.edges)):
        if verify_flow(g, IntFlow(tau, dict(zip(g.edge_ids, f)), k)):
            return True
    return False


def test_sb_two_flow(sb):
    w = exists_k_flow(sb, 2)
    assert w is not None and sorted(w.values.values()) == [-1, 1]


def test_long_barbell_table(lb, frozen):
    assert exists_k_flow(lb, 2) is None
    w = exists_k_flow(lb, 3)
    assert [w[0], w[1], w[2]] in frozen["long_barbell_3flows"]
    r = min_flow_number(lb)
    assert r.minimum == frozen["long_barbell_min_k"] == 3


def test_d2_never(d2):
    r = min_flow_number(d2, 11)
    assert r.minimum is None and not any(r.table.values()) and len(r.table) == 10
    assert r.lines()[-1] == "minimum=none"


def test_balanced_circuit_min_2():
    assert min_flow_number(circuit(5)).minimum == 2


def test_k4_values(frozen):
    assert min_flow_number(k4()).minimum == frozen["k4_all_positive_min_k"]
    assert min_flow_number(k4().with_negative(range(6))).minimum == frozen["k4_all_negative_min_k"]


def test_report_monotone_and_witness():
    g = k4().with_negative([0, 5])
    r = min_flow_number(g, 8)
    ks = sorted(r.table)
    assert [r.table[k] for k in ks] == sorted(r.table[k] for k in ks)
    assert verify_flow(g, r.witness) and r.witness.k == r.minimum


def test_search_matches_brute_force():
    count = 0
    for base, g in enumerate_signed(connected_multigraphs(4)):
        for k in (2, 3, 4):
            assert (exists_k_flow(g, k) is not None) == brute_force_exists(g, k), (g, k)
            count += 1
    assert count > 100


def test_forced_zero_edges(d2, lb):
    assert forced_zero_edges(d2) == [0, 1]
    assert forced_zero_edges(lb) == []
    pendant = build_graph([(0, 0, "-"), (0, 1, "+"), (1, 2, "+"), (2, 1, "+")])
    assert 1 in forced_zero_edges(pendant)


def test_node_limit(k4):
    with pytest.raises(TimeoutError):
        exists_k_flow(k4.with_negative([0, 5]), 11, node_limit=1, stats=SearchStats())


def test_class_counts(frozen):
    tree = build_graph([(0, 1, "+"), (1, 2, "+"), (1, 3, "+")])
    assert len(signature_classes(tree)) == frozen["tree_classes"] == 1
    assert len(list(signature_classes(circuit(5)))) == frozen["circuit5_classes"] == 2
    assert len(list(signature_classes(k4()))) == frozen["k4_classes"] == 8


def test_every_signature_hits_exactly_one_class(k4):
    reps = {frozenset(g.negative_edges) for g in signature_classes(k4)}
    hits = {r: 0 for r in reps}
    for bits in range(64):
        neg = [i for i in range(6) if bits >> i & 1]
        canon = canonical_signature(k4, neg)
        assert canon in reps
        g = k4.with_negative(neg)
        assert same_up_to_switching(g, k4.with_negative(canon))
        hits[canon] += 1
    assert set(hits.values()) == {8}


def test_multigraph_counts(frozen):
    got = {}
    for g in connected_multigraphs(5):
        got[str(len(g.edges))] = got.get(str(len(g.edges)), 0) + 1
    assert got == frozen["multigraph_counts"]


def test_isomorphism_filter():
    plain = list(enumerate_signed([k4()]))
    reduced = list(enumerate_signed([k4()], up_to_isomorphism=True))
    assert len(plain) == 8 and len(reduced) < len(plain)


def test_nmax_filter():
    assert list(enumerate_signed([k4()], nmax=3)) == []


def test_switching_invariance_spot_check():
    g = k4().with_negative([0, 5])
    m = min_flow_number(g).minimum
    for U in ([0], [1, 2], [0, 3]):
        g2, _, _ = switch(g, U)
        assert min_flow_number(g2).minimum == m
    assert bool(is_flow_admissible(g)) and not is_balanced(g)
