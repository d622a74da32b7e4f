"""Graph recovery from copies of the state: the linked-round readout.

Two copies at a time are linked through a |+> ancilla register with CZ
rungs, everything is measured in the X basis, and each round whose
ancilla outcome vector extends a GF(2) basis contributes one linear
equation set.  Once the basis is complete the off-diagonal adjacency
falls out of a linear solve, and one final adapted measurement recovers
the self-loops.  Recovery is exact once the loop terminates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from .gf2 import BitMatrix, BitVector, Echelon, solve
from .graphmodel import Graph
from .graphstate import GraphRegister
from .tableau import PauliString, Tableau


class ResourceExhausted(RuntimeError):
    """The copy factory ran out before the algorithm finished."""


class ReadoutIntegrityError(AssertionError):
    """The measurement record contradicts itself; simulation bug."""


class CopyFactory:
    """Produces identically prepared copies of one graph state.

    An optional cap models a finite supply; exceeding it raises
    ResourceExhausted so callers can report it cleanly.
    """

    def __init__(self, graph: Graph, seed: int = 0, max_copies: Optional[int] = None):
        self.graph = graph.copy()
        self.seed = seed
        self.max_copies = max_copies
        self.produced = 0

    def take(self) -> GraphRegister:
        if self.max_copies is not None and self.produced >= self.max_copies:
            raise ResourceExhausted(
                f"copy factory exhausted after {self.produced} copies"
            )
        self.produced += 1
        return GraphRegister.prepare(self.graph, seed=self.seed + self.produced)


@dataclass
class ReadoutRun:
    """Result of one full readout: the graph plus the measurement record."""

    recovered: Graph
    copies_used: int
    loop_iterations: int
    rounds: List[Tuple[BitVector, BitVector, BitVector]]
    d: BitVector


def linked_round(
    factory: CopyFactory, rng: random.Random
) -> Tuple[BitVector, BitVector, BitVector]:
    """One pass of the main loop; consumes two copies.

    Returns the X-outcome vectors (a, b, c) of the data registers and
    the |+> ancilla register, outcome -1 recorded as bit 1.
    """
    first = factory.take()
    second = factory.take()
    n = first.n
    combined = Tableau.tensor(first.tableau, second.tableau, seed=rng.getrandbits(64))
    for i in range(n):
        combined.add_qubit_plus()
    # Layout: data copy A at 0..n-1, data copy C at n..2n-1, ancillas
    # B at 2n..3n-1.
    a_bits = BitVector(n)
    b_bits = BitVector(n)
    c_bits = BitVector(n)
    for i in range(n):
        combined.cz(i, 2 * n + i)
        combined.cz(2 * n + i, n + i)
        for reg, offset in ((a_bits, 0), (b_bits, 2 * n), (c_bits, n)):
            outcome, _ = combined.measure_pauli(
                PauliString.single(3 * n, "X", offset + i)
            )
            if outcome < 0:
                reg.flip(i)
    return a_bits, b_bits, c_bits


def recover_lambda(
    rounds: List[Tuple[BitVector, BitVector, BitVector]]
) -> BitMatrix:
    """Solve b_k . x_i = a_k[i] xor c_k[i] for every column of Lambda."""
    n = rounds[0][0].n
    if len(rounds) != n:
        raise ValueError(f"need {n} rounds, got {len(rounds)}")
    b_rows = BitMatrix(n, n, [b.bits for _, b, _ in rounds])
    lam = BitMatrix.zeros(n, n)
    for i in range(n):
        rhs = BitVector(
            n,
            sum(
                ((a.get(i) ^ c.get(i)) << k)
                for k, (a, _, c) in enumerate(rounds)
            ),
        )
        x_i = solve(b_rows, rhs)
        if x_i is None:
            raise ReadoutIntegrityError("independent basis gave an unsolvable system")
        if x_i.get(i):
            raise ReadoutIntegrityError("recovered adjacency has a diagonal entry")
        for j in range(n):
            if x_i.get(j):
                lam.set(j, i, 1)
    if not lam.is_symmetric():
        raise ReadoutIntegrityError("recovered adjacency is not symmetric")
    return lam


def readout(factory: CopyFactory, seed: int = 0, max_rounds: Optional[int] = None) -> ReadoutRun:
    """Full recovery of the encoded graph, self-loops included."""
    rng = random.Random(seed)
    probe = factory.graph
    n = probe.n
    basis = Echelon()
    kept: List[Tuple[BitVector, BitVector, BitVector]] = []
    iterations = 0
    while basis.rank < n:
        if max_rounds is not None and iterations >= max_rounds:
            raise ResourceExhausted(f"no basis after {iterations} rounds")
        a_bits, b_bits, c_bits = linked_round(factory, rng)
        iterations += 1
        if basis.add(b_bits.bits):
            kept.append((a_bits, b_bits, c_bits))
    lam = recover_lambda(kept) if n else BitMatrix.zeros(0, 0)

    final = factory.take()
    t = final.tableau
    for i in range(n):
        for j in range(i + 1, n):
            if lam.get(i, j):
                t.cz(i, j)
    d = BitVector(n)
    for i in range(n):
        outcome, deterministic = t.measure_pauli(PauliString.single(n, "X", i))
        if not deterministic:
            raise ReadoutIntegrityError(
                "final-copy X measurement was random; state is not a product"
            )
        if outcome < 0:
            d.flip(i)

    recovered = Graph(n, list(lam.data), d.bits)
    return ReadoutRun(
        recovered=recovered,
        copies_used=2 * iterations + 1,
        loop_iterations=iterations,
        rounds=kept,
        d=d,
    )
