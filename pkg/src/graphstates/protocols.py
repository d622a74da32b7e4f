"""Probabilistic comparison and parity protocols.

Each protocol produces a TrialRecord holding both the exact outcome
distribution (dyadic Fractions, derived from stabilizer inner products
and group membership) and one seeded sample from it.  The swap-test and
controlled-permutation circuits are non-Clifford, so they are not
simulated gate by gate; their exact outcome distributions are computed
instead, which is what every claim is about.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .graphmodel import Graph
from .graphstate import GraphRegister, PreconditionError
from .tableau import PauliString, inner_product_mag2

EQUAL = "equal"
DIFFERENT = "different"
MISMATCH = "mismatch"


@dataclass
class TrialRecord:
    """One protocol run: sampled outcome plus its exact distribution."""

    protocol: str
    outcome: str
    probabilities: Dict[str, Fraction]
    deterministic: bool
    seed: Optional[int]
    copies: int

    def __post_init__(self):
        total = sum(self.probabilities.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        if self.deterministic and Fraction(1) not in self.probabilities.values():
            raise ValueError("deterministic record needs a certain outcome")

    def probability_of(self, outcome: str) -> Fraction:
        return self.probabilities.get(outcome, Fraction(0))


def _sample(probabilities: Dict[str, Fraction], rng: random.Random) -> str:
    r = Fraction(rng.getrandbits(53), 1 << 53)
    acc = Fraction(0)
    last = None
    for outcome, p in probabilities.items():
        acc += p
        last = outcome
        if r < acc:
            return outcome
    return last


def overlap_mag2(r1: GraphRegister, r2: GraphRegister) -> Fraction:
    """|<G1|G2>|^2 exactly; registers of different size overlap in 0."""
    if r1.n != r2.n:
        return Fraction(0)
    return inner_product_mag2(r1.tableau, r2.tableau)


def equality_test(r1: GraphRegister, r2: GraphRegister, seed: int) -> TrialRecord:
    """Swap-test comparison with one-sided error on unequal graphs.

    Different-size registers are rejected outright (vertex counts are
    classically visible), recorded as a deterministic Different.
    """
    if r1.n != r2.n:
        probs = {EQUAL: Fraction(0), DIFFERENT: Fraction(1)}
        return TrialRecord("equality_test", DIFFERENT, probs, True, seed, 2)
    ov = overlap_mag2(r1, r2)
    p_diff = (1 - ov) / 2
    probs = {EQUAL: 1 - p_diff, DIFFERENT: p_diff}
    rng = random.Random(seed)
    outcome = _sample(probs, rng)
    return TrialRecord("equality_test", outcome, probs, p_diff == 0, seed, 2)


def automorphism_test(r: GraphRegister, perm: Sequence[int], seed: int) -> TrialRecord:
    """Controlled-permutation test: is perm an automorphism of the graph?"""
    permuted = r.shadow.permute(perm)
    other = GraphRegister.prepare(permuted, seed=0)
    ov = overlap_mag2(r, other)
    p_minus = (1 - ov) / 2
    probs = {"+1": 1 - p_minus, "-1": p_minus}
    rng = random.Random(seed)
    outcome = _sample(probs, rng)
    return TrialRecord("automorphism_test", outcome, probs, p_minus == 0, seed, 1)


def vertex_compare(r: GraphRegister, a: int, b: int, seed: int) -> TrialRecord:
    """Swap-automorphism test for two vertices via one two-point Pauli.

    Measures X_a X_b when a, b are non-adjacent (read from the shadow),
    else Y_a Y_b.  +1 is certain exactly when swapping a and b is an
    automorphism.  Mutates the register (it measures it).
    """
    if a == b:
        raise PreconditionError("vertex_compare needs distinct vertices")
    kind = "Y" if r.shadow.has_edge(a, b) else "X"
    obs = PauliString(
        r.n,
        (1 << a) | (1 << b),
        ((1 << a) | (1 << b)) if kind == "Y" else 0,
    )
    sign = r.tableau.contains_stabilizer(obs)
    if sign is None:
        probs = {"+1": Fraction(1, 2), "-1": Fraction(1, 2)}
    else:
        probs = {"+1": Fraction(1 if sign > 0 else 0), "-1": Fraction(1 if sign < 0 else 0)}
    r.tableau.rng.seed(seed)
    outcome_val, deterministic = r.tableau.measure_pauli(obs)
    r.counters.measurements += 2  # two single-qubit measurements
    outcome = "+1" if outcome_val > 0 else "-1"
    return TrialRecord("vertex_compare", outcome, probs, deterministic, seed, 1)


def degree_parity_test(
    r1: GraphRegister, r2: GraphRegister, kind: str, seed: int
) -> TrialRecord:
    """Two-copy all-even (or all-odd) degree test.

    Measures the product of X (or Y) over all vertices on both copies.
    On a qualifying graph both outcomes equal (-1)^s for s self-loops,
    so the record's Consistent outcome carries that sign; otherwise the
    two outcomes are independent fair coins and mismatch half the time.

    The caller must supply two copies of the same graph; loop-free
    callers may prepare both from one classical description (the
    single-copy shortcut: with s = 0 the even test is one-sided already
    on one copy).
    """
    if kind not in ("even", "odd"):
        raise ValueError(f"unknown parity kind {kind!r}")
    if r1.n != r2.n:
        raise ValueError("register sizes differ")
    obs = PauliString.all_x(r1.n) if kind == "even" else PauliString.all_y(r1.n)
    sign = r1.tableau.contains_stabilizer(obs)
    if sign is not None:
        certain = f"consistent({'+1' if sign > 0 else '-1'})"
        probs = {
            "consistent(+1)": Fraction(1 if sign > 0 else 0),
            "consistent(-1)": Fraction(1 if sign < 0 else 0),
            MISMATCH: Fraction(0),
        }
        deterministic = True
    else:
        probs = {
            "consistent(+1)": Fraction(1, 4),
            "consistent(-1)": Fraction(1, 4),
            MISMATCH: Fraction(1, 2),
        }
        deterministic = False
    r1.tableau.rng.seed(seed)
    r2.tableau.rng.seed(seed + 1)
    o1, _ = r1.tableau.measure_pauli(obs)
    o2, _ = r2.tableau.measure_pauli(obs)
    r1.counters.measurements += 1
    r2.counters.measurements += 1
    if o1 == o2:
        outcome = f"consistent({'+1' if o1 > 0 else '-1'})"
    else:
        outcome = MISMATCH
    return TrialRecord("degree_parity_test", outcome, probs, deterministic, seed, 2)
