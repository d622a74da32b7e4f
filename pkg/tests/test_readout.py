"""Linked-round readout: recovery of adjacency and loops from copies."""

import random

import pytest

from graphstates.gf2 import BitMatrix, BitVector
from graphstates.graphmodel import Graph
from graphstates.readout import (
    CopyFactory,
    ReadoutIntegrityError,
    ResourceExhausted,
    linked_round,
    readout,
    recover_lambda,
)


def test_single_loop_recovered():
    run = readout(CopyFactory(Graph(1, loops=1), seed=0), seed=0)
    assert run.recovered == Graph(1, loops=1)
    assert run.d == BitVector(1, 1)


def test_single_vertex_round_relation():
    # With no edges the data outcomes agree: c = a for every round.
    factory = CopyFactory(Graph.empty(1), seed=3)
    rng = random.Random(3)
    for _ in range(5):
        a, b, c = linked_round(factory, rng)
        assert c == a


def test_round_relation_single_edge():
    # Kept rounds satisfy c_k[i] = b_k . x_i xor a_k[i] for Lambda columns.
    g = Graph.from_edges(2, [(0, 1)])
    run = readout(CopyFactory(g, seed=5), seed=5)
    for a, b, c in run.rounds:
        for i in range(2):
            x_i = BitVector(2, g.adj[i])
            assert c.get(i) == b.dot(x_i) ^ a.get(i)
    assert run.recovered == g


def test_fixed_seed_replays_identically():
    g = Graph.random(5, random.Random(9))
    run1 = readout(CopyFactory(g, seed=4), seed=7)
    run2 = readout(CopyFactory(g, seed=4), seed=7)
    assert run1.rounds == run2.rounds
    assert run1.recovered == run2.recovered
    assert run1.copies_used == run2.copies_used


def test_round_trip_random_graphs():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randrange(1, 11)
        g = Graph.random(n, rng)
        run = readout(CopyFactory(g, seed=rng.getrandbits(32)), seed=rng.getrandbits(32))
        assert run.recovered == g
        assert run.copies_used == 2 * run.loop_iterations + 1
        assert len(run.rounds) == n
        assert BitMatrix(n, n, [b.bits for _, b, _ in run.rounds]).rows == n


def test_kept_rounds_form_a_basis():
    from graphstates.gf2 import rank

    g = Graph.random(6, random.Random(15))
    run = readout(CopyFactory(g, seed=1), seed=1)
    b = BitMatrix(6, 6, [b.bits for _, b, _ in run.rounds])
    assert rank(b) == 6


def test_factory_cap_raises():
    factory = CopyFactory(Graph.random(4, random.Random(17)), seed=0, max_copies=2)
    with pytest.raises(ResourceExhausted):
        readout(factory, seed=0)


def test_round_cap_raises():
    factory = CopyFactory(Graph.random(4, random.Random(19)), seed=0)
    with pytest.raises(ResourceExhausted):
        readout(factory, seed=0, max_rounds=0)


def test_recover_lambda_checks_input():
    rounds = [(BitVector(2), BitVector(2, 0b01), BitVector(2))]
    with pytest.raises(ValueError):
        recover_lambda(rounds)
    # a diagonal difference on an identity basis signals a broken record
    bad = [
        (BitVector(2, 0b01), BitVector(2, 0b01), BitVector(2)),
        (BitVector(2), BitVector(2, 0b10), BitVector(2)),
    ]
    with pytest.raises(ReadoutIntegrityError):
        recover_lambda(bad)


def test_recover_lambda_zero_differences():
    rounds = [
        (BitVector(2), BitVector(2, 0b01), BitVector(2)),
        (BitVector(2), BitVector(2, 0b10), BitVector(2)),
    ]
    assert recover_lambda(rounds) == BitMatrix.zeros(2, 2)
