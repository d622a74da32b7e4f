"""GraphRegister: tableau/shadow lock-step, gate accounting, ancillas."""

import random

import pytest

from conftest import apply_random_op, shadow_matches_state
from graphstates.graphmodel import Graph, GraphError
from graphstates.graphstate import GraphRegister, PreconditionError
from graphstates.tableau import PauliString


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


# -- preparation -------------------------------------------------------


def test_prepare_empty_graph():
    r = GraphRegister.prepare(Graph.empty(3))
    assert [repr(p) for p in r.tableau.generators()] == ["+XII", "+IXI", "+IIX"]
    assert r.counters.as_dict() == {
        "one_qubit_gates": 0,
        "two_qubit_gates": 0,
        "measurements": 0,
        "ancillas_used": 0,
    }


def test_prepare_single_edge():
    r = GraphRegister.prepare(Graph.from_edges(2, [(0, 1)]))
    assert [repr(p) for p in r.tableau.generators()] == ["+XZ", "+ZX"]
    assert r.counters.two_qubit_gates == 1


def test_prepare_counts_edges_and_loops():
    rng = random.Random(37)
    for _ in range(20):
        g = Graph.random(rng.randrange(1, 9), rng)
        r = GraphRegister.prepare(g)
        assert r.counters.two_qubit_gates == g.edge_count()
        assert r.counters.one_qubit_gates == g.loop_count()
        assert r.shadow == g
        assert r.verify()


def test_prepare_complete_shadow_and_bound():
    for n in range(1, 12):
        r = GraphRegister.prepare_complete(n)
        assert r.shadow == Graph.complete(n)
        assert r.counters.two_qubit_gates <= 2 * n + 1
        assert r.verify()
    with pytest.raises(ValueError):
        GraphRegister.prepare_complete(0)


def test_prepare_complete_verifies_at_scale():
    assert GraphRegister.prepare_complete(64).verify()


# -- vertex management -------------------------------------------------


def test_add_vertex_isolated():
    r = GraphRegister.prepare(Graph.from_edges(2, [(0, 1)]))
    assert r.add_vertex() == 2
    assert r.shadow == Graph.from_edges(3, [(0, 1)])
    assert r.verify()


def test_tensor_disjoint_union():
    edge = GraphRegister.prepare(Graph.from_edges(2, [(0, 1)]))
    r = GraphRegister.tensor(edge, edge.copy())
    assert r.shadow == Graph.from_edges(4, [(0, 1), (2, 3)])
    assert r.counters.two_qubit_gates == 2
    assert r.verify()


def test_tensor_with_empty_register():
    g = Graph.random(4, random.Random(2))
    r = GraphRegister.tensor(
        GraphRegister.prepare(g), GraphRegister.prepare(Graph.empty(0))
    )
    assert r.shadow == g


# -- basic manipulations ------------------------------------------------


def test_cz_builds_edge_state():
    r = GraphRegister.prepare(Graph.empty(2))
    r.cz(0, 1)
    assert r.shadow == Graph.from_edges(2, [(0, 1)])
    assert shadow_matches_state(r)


def test_cz_loop_routes_to_z():
    r = GraphRegister.prepare(Graph.empty(2))
    r.cz(1, 1)
    assert r.shadow.loops == 0b10
    assert r.counters.one_qubit_gates == 1
    assert r.counters.two_qubit_gates == 0
    assert shadow_matches_state(r)


def test_cnot_on_single_edge_flips_generator_sign():
    r = GraphRegister.prepare(Graph.from_edges(2, [(0, 1)]))
    r.cnot(0, 1)
    assert r.shadow.has_loop(0)
    assert r.tableau.contains_stabilizer(r.stabilizer_generator(0)) == 1
    assert r.stabilizer_generator(0).sign == -1
    assert shadow_matches_state(r)


def test_x_on_star_center_signs_leaves():
    r = GraphRegister.prepare(star(3))
    r.apply_pauli("X", 0)
    assert r.shadow.loops == 0b1110
    for leaf in (1, 2, 3):
        assert r.stabilizer_generator(leaf).sign == -1
    assert r.verify()
    assert shadow_matches_state(r)


def test_apply_pauli_rejects_unknown():
    with pytest.raises(GraphError):
        GraphRegister.prepare(Graph.empty(1)).apply_pauli("H", 0)


def test_cnot_rejects_equal_vertices():
    with pytest.raises(PreconditionError):
        GraphRegister.prepare(Graph.empty(2)).cnot(0, 0)


# -- fx ----------------------------------------------------------------


def test_fx_private_neighbors():
    r = GraphRegister.prepare(Graph.from_edges(4, [(0, 2), (1, 3)]))
    r.fx(0, 1)
    assert r.shadow == Graph.from_edges(4, [(0, 2), (1, 3), (2, 3)])
    assert r.counters.one_qubit_gates == 4
    assert r.counters.two_qubit_gates == 3
    assert shadow_matches_state(r)


def test_fx_isolated_pair_noop():
    r = GraphRegister.prepare(Graph.empty(2))
    r.fx(0, 1)
    assert r.shadow == Graph.empty(2)
    assert shadow_matches_state(r)


def test_fx_guard_names_wrapped_form():
    r = GraphRegister.prepare(Graph.from_edges(2, [(0, 1)]))
    with pytest.raises(PreconditionError, match="fx_wrapped"):
        r.fx(0, 1)
    with pytest.raises(PreconditionError):
        r.fx(1, 1)


def test_fx_wrapped_restores_edge():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
    r = GraphRegister.prepare(g)
    r.fx_wrapped(0, 1)
    assert r.shadow.has_edge(0, 1)
    assert r.shadow.has_edge(2, 3)
    assert r.counters.two_qubit_gates == 3 + 3  # prepare + CZ.FX.CZ
    assert r.verify()
    assert shadow_matches_state(r)


def test_fx_wrapped_without_edge_is_plain_fx():
    r1 = GraphRegister.prepare(Graph.from_edges(4, [(0, 2), (1, 3)]))
    r2 = GraphRegister.prepare(Graph.from_edges(4, [(0, 2), (1, 3)]))
    r1.fx(0, 1)
    r2.fx_wrapped(0, 1)
    assert r1.shadow == r2.shadow
    assert r1.counters.as_dict() == r2.counters.as_dict()


# -- local complementation ---------------------------------------------


def test_local_complement_star_center():
    r = GraphRegister.prepare(star(3))
    r.local_complement(0)
    expected = star(3)
    expected.local_comp_rule(0)
    assert r.shadow == expected
    assert r.counters.one_qubit_gates == 4  # one sqrt(-iX) plus three sqrt(iZ)
    assert r.verify()
    assert shadow_matches_state(r)


def test_local_complement_isolated_noop():
    r = GraphRegister.prepare(Graph.empty(2))
    r.local_complement(0)
    assert r.shadow == Graph.empty(2)
    assert r.counters.one_qubit_gates == 1


def test_local_complement_twice_restores_edges():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    r = GraphRegister.prepare(g)
    r.local_complement(0)
    r.local_complement(0)
    assert r.shadow == g
    assert r.verify()


# -- ancilla-driven complementations -----------------------------------


def test_interset_equals_cz_sequence():
    rng = random.Random(41)
    g = Graph.random(6, rng)
    r = GraphRegister.prepare(g)
    r.interset_complement([0, 1, 2], [4, 5])
    expected = g.copy()
    expected.iac_rule([0, 1, 2], [4, 5])
    assert r.shadow == expected
    assert r.n == 6
    assert r.verify()
    assert shadow_matches_state(r)


def test_interset_counters():
    r = GraphRegister.prepare(Graph.empty(7))
    base = r.counters.as_dict()
    r.interset_complement([0, 1, 2], [3, 4])
    assert r.counters.two_qubit_gates - base["two_qubit_gates"] == 2 * 5 + 1
    assert r.counters.one_qubit_gates - base["one_qubit_gates"] == 4
    assert r.counters.ancillas_used == 2


def test_interset_rejects_overlap():
    with pytest.raises(PreconditionError):
        GraphRegister.prepare(Graph.empty(3)).interset_complement([0, 1], [1, 2])


def test_intraset_builds_complete_graph():
    r = GraphRegister.prepare(Graph.empty(5))
    r.intraset_complement(range(5))
    assert r.shadow == Graph.complete(5)
    assert r.counters.two_qubit_gates == 10
    assert r.counters.one_qubit_gates == 6
    assert r.verify()


def test_intraset_empty_set_noop():
    r = GraphRegister.prepare(Graph.empty(3))
    r.intraset_complement([])
    assert r.shadow == Graph.empty(3)
    assert r.n == 3
    assert r.verify()


def test_iac_singletons_equals_cz():
    r = GraphRegister.prepare(Graph.empty(2))
    r.interset_complement([0], [1])
    assert r.shadow == Graph.from_edges(2, [(0, 1)])
    assert shadow_matches_state(r)


# -- deletion ----------------------------------------------------------


def test_delete_isolated_vertex_either_outcome():
    outcomes = set()
    for seed in range(30):
        r = GraphRegister.prepare(Graph.from_edges(3, [(1, 2)]), seed=seed)
        outcomes.add(r.delete_vertex(0, "blind"))
        assert r.shadow == Graph.from_edges(2, [(0, 1)])
        assert r.verify()
    assert outcomes == {0, 1}


def test_corrected_delete_of_star_center():
    for seed in range(20):
        r = GraphRegister.prepare(star(3), seed=seed)
        r.delete_vertex(0, "corrected")
        assert r.shadow == Graph.empty(3)
        assert r.verify()
        assert shadow_matches_state(r)


def test_blind_delete_keeps_residue():
    for seed in range(30):
        r = GraphRegister.prepare(star(3), seed=seed)
        outcome = r.delete_vertex(0, "blind")
        assert r.shadow.loops == (0b111 if outcome else 0)
        assert r.counters.measurements == 1
        assert r.verify()
        assert shadow_matches_state(r)


def test_delete_rejects_bad_mode():
    with pytest.raises(ValueError):
        GraphRegister.prepare(Graph.empty(2)).delete_vertex(0, "maybe")


# -- verification ------------------------------------------------------


def test_verify_after_random_ops():
    rng = random.Random(43)
    r = GraphRegister.prepare(Graph.random(6, rng))
    for _ in range(50):
        apply_random_op(r, rng, max_n=10)
        assert r.verify()


def test_verify_detects_injected_sign_fault():
    r = GraphRegister.prepare(Graph.from_edges(3, [(0, 1), (1, 2)]))
    assert r.verify()
    r.tableau.phases[1] = (r.tableau.phases[1] + 2) % 4
    assert not r.verify()


def test_stabilizer_generator_form():
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    g.loops = 0b001
    r = GraphRegister.prepare(g)
    k = r.stabilizer_generator(0)
    assert (k.x, k.z, k.sign) == (0b001, 0b110, -1)
    assert r.verify()
