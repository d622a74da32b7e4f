"""Comparison and parity protocols: exact distributions plus sampling."""

import random
from fractions import Fraction

import pytest

from graphstates.densesim import graph_state_vector, measurement_probability
from graphstates.gf2 import BitMatrix, BitVector, quad_char_sum
from graphstates.graphmodel import Graph
from graphstates.graphstate import GraphRegister, PreconditionError
from graphstates.protocols import (
    DIFFERENT,
    EQUAL,
    MISMATCH,
    TrialRecord,
    automorphism_test,
    degree_parity_test,
    equality_test,
    overlap_mag2,
    vertex_compare,
)
from graphstates.tableau import PauliString


def reg(g: Graph, seed: int = 0) -> GraphRegister:
    return GraphRegister.prepare(g, seed=seed)


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


EDGE2 = Graph.from_edges(2, [(0, 1)])
PATH3 = Graph.from_edges(3, [(0, 1), (1, 2)])


# -- overlap -----------------------------------------------------------


def test_overlap_same_graph_is_one():
    g = Graph.random(5, random.Random(1))
    assert overlap_mag2(reg(g), reg(g)) == 1


def test_overlap_empty_vs_edge():
    assert overlap_mag2(reg(Graph.empty(2)), reg(EDGE2)) == Fraction(1, 4)


def test_overlap_distinct_graphs_at_most_half():
    rng = random.Random(47)
    for _ in range(100):
        n = rng.randrange(1, 7)
        g1, g2 = Graph.random(n, rng), Graph.random(n, rng)
        if g1 == g2:
            continue
        assert overlap_mag2(reg(g1), reg(g2)) <= Fraction(1, 2)


def test_overlap_size_mismatch_is_zero():
    assert overlap_mag2(reg(Graph.empty(2)), reg(Graph.empty(3))) == 0


def test_overlap_matches_character_sum():
    # |<G'|G>|^2 = (S / 2^n)^2 with S the character sum of the
    # symmetric-difference graph (edge XOR in the form, loop XOR linear).
    rng = random.Random(53)
    for _ in range(60):
        n = rng.randrange(1, 7)
        g1, g2 = Graph.random(n, rng), Graph.random(n, rng)
        u = BitMatrix.zeros(n, n)
        for i in range(n):
            u.data[i] = (g1.adj[i] ^ g2.adj[i]) & ~((1 << (i + 1)) - 1)
        d = BitVector(n, g1.loops ^ g2.loops)
        s = quad_char_sum(u, d)
        assert Fraction(s.value, 1 << n) ** 2 == overlap_mag2(reg(g1), reg(g2))


# -- equality test -----------------------------------------------------


def test_equality_equal_graphs_is_one_sided():
    g = Graph.random(4, random.Random(3))
    for seed in range(300):
        record = equality_test(reg(g, seed), reg(g, seed + 1), seed)
        assert record.outcome == EQUAL
        assert record.deterministic
        assert record.probability_of(DIFFERENT) == 0


def test_equality_empty_vs_edge_distribution():
    record = equality_test(reg(Graph.empty(2)), reg(EDGE2), seed=0)
    assert record.probability_of(DIFFERENT) == Fraction(3, 8)
    assert not record.deterministic
    assert record.copies == 2


def test_equality_size_mismatch_rejects():
    record = equality_test(reg(Graph.empty(2)), reg(Graph.empty(3)), seed=0)
    assert record.outcome == DIFFERENT
    assert record.deterministic


def test_equality_distinct_graphs_at_least_quarter():
    rng = random.Random(59)
    for _ in range(60):
        n = rng.randrange(1, 7)
        g1, g2 = Graph.random(n, rng), Graph.random(n, rng)
        if g1 == g2:
            continue
        record = equality_test(reg(g1), reg(g2), seed=0)
        assert record.probability_of(DIFFERENT) >= Fraction(1, 4)


# -- automorphism test -------------------------------------------------


def test_automorphism_identity_always_plus():
    g = Graph.random(5, random.Random(5))
    for seed in range(200):
        record = automorphism_test(reg(g, seed), list(range(5)), seed)
        assert record.outcome == "+1" and record.deterministic


def test_automorphism_edge_swap_always_plus():
    for seed in range(200):
        record = automorphism_test(reg(EDGE2, seed), [1, 0], seed)
        assert record.outcome == "+1"


def test_automorphism_path_end_center_swap():
    # ov^2 between P3 and its (0 1)-relabeling, from the dense oracle.
    permuted = PATH3.permute([1, 0, 2])
    v1 = graph_state_vector(PATH3)
    v2 = graph_state_vector(permuted)
    dense_ov2 = abs(complex((v1.conj() * v2).sum())) ** 2
    record = automorphism_test(reg(PATH3), [1, 0, 2], seed=0)
    expected = (1 - Fraction(dense_ov2).limit_denominator(1 << 12)) / 2
    assert record.probability_of("-1") == expected


def test_automorphism_orthogonal_case_is_fair():
    # Loop on one of two vertices; the swap maps the state to an
    # orthogonal one, so -1 appears with probability exactly 1/2.
    g = Graph(2, loops=0b01)
    record = automorphism_test(reg(g), [1, 0], seed=0)
    assert record.probability_of("-1") == Fraction(1, 2)


# -- vertex compare ----------------------------------------------------


def test_vertex_compare_star_leaves_plus():
    for seed in range(100):
        record = vertex_compare(reg(star(3), seed), 1, 2, seed)
        assert record.outcome == "+1" and record.deterministic


def test_vertex_compare_triangle_adjacent_plus():
    for seed in range(100):
        record = vertex_compare(reg(Graph.complete(3), seed), 0, 1, seed)
        assert record.outcome == "+1" and record.deterministic


def test_vertex_compare_asymmetric_pair_is_fair():
    record = vertex_compare(reg(star(3)), 0, 1, seed=0)
    assert record.probabilities == {
        "+1": Fraction(1, 2),
        "-1": Fraction(1, 2),
    }
    assert not record.deterministic


def test_vertex_compare_counts_two_measurements():
    r = reg(star(3))
    vertex_compare(r, 1, 2, seed=0)
    assert r.counters.measurements == 2


def test_vertex_compare_rejects_equal_vertices():
    with pytest.raises(PreconditionError):
        vertex_compare(reg(EDGE2), 1, 1, seed=0)


# -- degree parity test ------------------------------------------------


def euler_sign(g: Graph) -> int:
    """Deterministic all-X sign on an even-degree graph: (-1)^(s + |E|)."""
    return -1 if (g.loop_count() + g.edge_count()) & 1 else 1


def test_degree_parity_triangle_deterministic():
    # Triangle: s=0, |E|=3, so the consistent outcome carries sign -1.
    for seed in range(100):
        record = degree_parity_test(
            reg(Graph.complete(3), seed), reg(Graph.complete(3), seed + 1), "even", seed
        )
        assert record.outcome == "consistent(-1)"
        assert record.deterministic


def test_degree_parity_triangle_with_loop():
    g = Graph.complete(3)
    g.loops = 0b001  # s=1, |E|=3: sign flips back to +1
    record = degree_parity_test(reg(g), reg(g, 1), "even", seed=0)
    assert record.outcome == "consistent(+1)"
    assert record.deterministic


def test_degree_parity_sign_matches_dense_born_rule():
    rng = random.Random(61)
    checked = 0
    while checked < 25:
        g = Graph.random(rng.randrange(2, 7), rng)
        all_even, all_odd, _ = g.degree_parity()
        record = degree_parity_test(reg(g), reg(g, 1), "even", seed=checked)
        pr_plus, pr_minus = measurement_probability(
            graph_state_vector(g), PauliString.all_x(g.n)
        )
        if all_even:
            sign = euler_sign(g)
            assert record.deterministic
            assert record.outcome == f"consistent({'+1' if sign > 0 else '-1'})"
            assert pr_plus == pytest.approx(1.0 if sign > 0 else 0.0, abs=1e-9)
        else:
            assert pr_plus == pytest.approx(0.5, abs=1e-9)
            assert record.probability_of(MISMATCH) == Fraction(1, 2)
        checked += 1


def test_degree_parity_odd_variant_single_edge():
    # Both vertices have odd degree; the all-Y product is +1 certain.
    record = degree_parity_test(reg(EDGE2), reg(EDGE2, 1), "odd", seed=0)
    assert record.outcome == "consistent(+1)"
    pr_plus, _ = measurement_probability(
        graph_state_vector(EDGE2), PauliString.all_y(2)
    )
    assert pr_plus == pytest.approx(1.0, abs=1e-9)


def test_degree_parity_path_mismatch_rate():
    mismatches = 0
    trials = 2000
    for seed in range(trials):
        record = degree_parity_test(reg(PATH3, seed), reg(PATH3, seed + 1), "even", seed)
        if record.outcome == MISMATCH:
            mismatches += 1
    assert abs(mismatches / trials - 0.5) < 3 * (0.25 / trials) ** 0.5


def test_degree_parity_rejects_bad_arguments():
    with pytest.raises(ValueError):
        degree_parity_test(reg(EDGE2), reg(EDGE2, 1), "prime", seed=0)
    with pytest.raises(ValueError):
        degree_parity_test(reg(EDGE2), reg(Graph.empty(3)), "even", seed=0)


# -- trial records -----------------------------------------------------


def test_trial_record_validates_distribution():
    with pytest.raises(ValueError):
        TrialRecord("t", "a", {"a": Fraction(1, 2)}, False, 0, 1)
    with pytest.raises(ValueError):
        TrialRecord(
            "t",
            "a",
            {"a": Fraction(1, 2), "b": Fraction(1, 2)},
            True,
            0,
            1,
        )


def test_trial_record_replay_is_deterministic():
    first = equality_test(reg(Graph.empty(2)), reg(EDGE2), seed=123)
    second = equality_test(reg(Graph.empty(2)), reg(EDGE2), seed=123)
    assert first.outcome == second.outcome
