import pytest

from signedflow.core import (Circuit, IntFlow, PreconditionError, boundary, build_graph, combine_flows, contract,
                             default_orientation, orientation_errors, switch, verify_flow, walk_flow)


def test_build_graph_examples(d2, sb, k4):
    assert len(d2.negative_edges) == 1 and len(d2.vertices) == 2
    assert [e.is_loop for e in sb.edges] == [True, True] and sb.negative_edges == {0, 1}
    assert (len(k4.vertices), len(k4.edges), k4.negative_edges) == (4, 6, frozenset())


def test_bad_sign_rejected():
    with pytest.raises(PreconditionError):
        build_graph([(0, 1, "x")])


def test_default_orientation():
    g = build_graph([("a", "b", "+"), ("a", "b", "-"), ("v", "v", "-")], vertices=["a", "b", "v"])
    tau = default_orientation(g)
    assert (tau[(0, 0)], tau[(0, 1)]) == (1, -1)
    assert (tau[(1, 0)], tau[(1, 1)]) == (1, 1)
    assert (tau[(2, 0)], tau[(2, 1)]) == (1, 1)
    assert orientation_errors(g, tau) == []


def test_boundary_examples(sb):
    g = build_graph([("a", "b", "+")])
    tau = default_orientation(g)
    assert boundary(g, tau, {0: 3}, "a") == 3 and boundary(g, tau, {0: 3}, "b") == -3
    loop = build_graph([("v", "v", "-")])
    assert boundary(loop, default_orientation(loop), {0: 1}, "v") == 2
    assert boundary(sb, default_orientation(sb), {0: 1, 1: -1}, "v") == 0


def test_verify_examples(sb, d2):
    assert verify_flow(sb, IntFlow(default_orientation(sb), {0: 1, 1: -1}, 2))
    sq = build_graph([(i, (i + 1) % 4, "+") for i in range(4)])
    f = walk_flow(sq, Circuit((0, 1, 2, 3), (0, 1, 2, 3)).steps(), default_orientation(sq))
    assert verify_flow(sq, IntFlow(default_orientation(sq), dict(f), 2))
    tau = default_orientation(d2)
    for a in (1, -1):
        for b in (1, -1):
            assert not verify_flow(d2, IntFlow(tau, {0: a, 1: b}, 2))


def test_verify_reports_large_values(sb):
    v = verify_flow(sb, IntFlow(default_orientation(sb), {0: 2, 1: -2}, 2))
    assert not v and v.lines()


def test_switch_examples(d2, sb):
    g2, tau2, _ = switch(d2, {"a"})
    assert len(g2.negative_edges) == 1 and g2.negative_edges != d2.negative_edges
    assert orientation_errors(g2, tau2) == []
    g3, _, _ = switch(sb, {"v"})
    assert g3 == sb


def test_switch_involution(k4):
    g = k4.with_negative([0, 4])
    tau = default_orientation(g)
    g2, tau2, _ = switch(g, {0, 2}, tau)
    g3, tau3, _ = switch(g2, {0, 2}, tau2)
    assert g3 == g and tau3 == tau


def test_combine_flows(sb):
    f = IntFlow(default_orientation(sb), {0: 1, 1: -1}, 2)
    z = combine_flows([(1, f), (-1, f)])
    assert all(x == 0 for x in z.values.values())


def test_contract_examples(d2, k4):
    h = contract(d2, [0]).graph
    assert len(h.vertices) == 1 and [(e.is_loop, e.sign) for e in h.edges] == [(True, -1)]
    # a contracted negative edge survives as a negative loop next to the positive one
    h = contract(d2, [1]).graph
    assert len(h.vertices) == 1 and sorted(e.sign for e in h.edges) == [-1, 1]
    assert all(e.is_loop for e in h.edges)
    h = contract(k4, [0, 1, 3]).graph
    assert len(h.vertices) == 2 and len(h.edges) == 3 and not any(e.is_loop for e in h.edges)


def test_walk_flow_needs_even_parity(lb):
    tau = default_orientation(lb)
    f = walk_flow(lb, [(0, 0), (1, 0), (2, 1), (1, 1)], tau)
    assert verify_flow(lb, IntFlow(tau, dict(f), 3))
    assert sorted(abs(x) for x in f.values()) == [1, 1, 2]
