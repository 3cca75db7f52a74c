import random

import pytest

from signedflow.analysis import bridges, is_balanced, is_flow_admissible
from signedflow.coloring import three_edge_color
from signedflow.core import Circuit, PreconditionError, build_graph, verify_flow
from signedflow.families import circulant, cube, exceptional_ladder, k4, wheel
from signedflow.oracle import min_flow_number
from signedflow.theorems import blow_up, cubic_flow, hamiltonian_flow, is_exceptional, planar_flow

from helpers import loaded_vertex, same_up_to_switching


# -- cubic graphs -------------------------------------------------------------------

def test_all_negative_k4(frozen):
    g = k4().with_negative(range(6))
    r = cubic_flow(g)
    assert r.trace_text == "Case 2 / Subcase 2.1" and r.k == 6 and not r.exceptional
    assert verify_flow(g, r.flow) and r.flow.max_abs <= 5
    assert frozen["k4_all_negative_min_k"] <= r.k


def test_subcase_11_instances():
    # K4 cannot reach Case 1 (its RB 2-factor is one even 4-cycle); the cube can
    rng = random.Random(6)
    g0 = cube()
    col = three_edge_color(g0)
    hits = 0
    for _ in range(300):
        g = g0.with_negative([e for e in g0.edge_ids if rng.random() < 0.5])
        if not is_flow_admissible(g):
            continue
        r = cubic_flow(g, col)
        assert verify_flow(g, r.flow) and r.k <= 8
        if r.trace[:2] == ("Case 1", "Subcase 1.1"):
            hits += 1
    assert hits >= 5


def test_exceptional_ladder():
    g, col = exceptional_ladder()
    assert is_exceptional(g, col)
    r = cubic_flow(g, col)
    assert r.exceptional and r.k == 10 and r.trace_text == "Case 2 / Subcase 2.3"
    assert verify_flow(g, r.flow)
    report = min_flow_number(g, 11)
    assert report.minimum is not None and report.minimum <= r.k


def test_cubic_rejects_inadmissible():
    g = k4().with_negative([0])
    assert not is_flow_admissible(g)
    with pytest.raises(PreconditionError):
        cubic_flow(g)


# -- planar reduction -----------------------------------------------------------------

def test_blow_up_degree7_two_loops():
    g = loaded_vertex(7, 2)
    bu = blow_up(g)
    (gd,) = bu.gadgets
    assert gd.cycle_length == 3 and len(gd.digons) == 2
    assert all(bu.graph.degree(v) == 3 for v in bu.graph.vertices)
    con, rename = bu.contract_back()
    assert same_up_to_switching(g, con.graph, rename)


def test_blow_up_identity_on_cubic():
    g = k4().with_negative([1, 2])
    bu = blow_up(g)
    assert bu.gadgets == () and bu.graph == g


def test_blow_up_degree4_plain_cycle():
    bu = blow_up(loaded_vertex(4, 0))
    (gd,) = bu.gadgets
    assert gd.cycle_length == 4 and gd.digons == () and gd.chain_vertices == ()


@pytest.mark.parametrize("neg", [[], [0, 1, 2], [0, 5], [1, 4], [3, 4, 5], list(range(6))])
def test_planar_k4_variants(neg):
    g = k4().with_negative(neg)
    assert is_flow_admissible(g)
    r = planar_flow(g)
    assert r.k <= 10 and verify_flow(g, r.flow)


def test_planar_k4_one_negative_rejected():
    with pytest.raises(PreconditionError):
        planar_flow(k4().with_negative([0]))


def test_planar_w4_mixed(frozen):
    g = wheel(4).with_negative([4, 5])
    assert is_flow_admissible(g)
    r = planar_flow(g)
    assert r.k <= 10 and verify_flow(g, r.flow)
    assert frozen["w4_mixed_min_k"] <= r.k


def test_planar_triangle_gadget_extension():
    # two degree-3 loop-free vertices joined through a degree-5 hub: the hub becomes a triangle plus chain
    g = loaded_vertex(5, 1, negative_edge=True)
    assert is_flow_admissible(g)
    r = planar_flow(g)
    assert verify_flow(g, r.flow) and r.k <= 10


def test_planar_rejects_bridge():
    g = build_graph([(0, 0, "-"), (0, 0, "-"), (0, 1, "+"), (1, 1, "-"), (1, 1, "-")])
    assert bridges(g) == [2]
    with pytest.raises(PreconditionError):
        planar_flow(g)


# -- hamiltonian graphs -----------------------------------------------------------------

def test_hamiltonian_all_positive():
    g = wheel(6)
    r = hamiltonian_flow(g, list(range(7)))
    assert r.trace_text == "Case 1 / balanced graph" and r.k == 4 and verify_flow(g, r.flow)


def test_hamiltonian_negative_spoke_pair():
    # C0 = 0..5 then the hub; spokes 7, 8 are off C0 and negative, so C0 is balanced, g is not
    g = wheel(6).with_negative([7, 8])
    assert not is_balanced(g)
    r = hamiltonian_flow(g, list(range(6)) + [6])
    assert r.trace_text == "Case 1 / unbalanced graph" and r.k <= 8 and verify_flow(g, r.flow)


def test_hamiltonian_h_unbalanced_circulant():
    rng = random.Random(3)
    hits = 0
    for _ in range(400):
        g = circulant(8, [1, 3]).with_negative([e for e in range(16) if rng.random() < 0.4])
        if not is_flow_admissible(g):
            continue
        r = hamiltonian_flow(g, list(range(8)))
        assert verify_flow(g, r.flow) and r.k <= 8
        if r.trace_text == "Case 2 / H unbalanced":
            assert r.flow.max_abs < 8
            hits += 1
    assert hits >= 10


def test_hamiltonian_rejects_non_circuit():
    with pytest.raises(PreconditionError):
        hamiltonian_flow(wheel(4), [0, 2, 1, 3, 4])
