"""The quantum graph register: a tableau in lock-step with a shadow graph.

Every public operation drives the tableau through elementary Clifford
gates (with gate accounting) and applies the matching rewrite rule to
the shadow.  verify() checks the correspondence by testing every
shadow-derived generator against the stabilizer group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from .graphmodel import Graph, GraphError, _bits
from .tableau import PauliString, Tableau


class PreconditionError(ValueError):
    """Operation called outside its domain of validity."""


@dataclass
class GateCounters:
    """Elementary-gate accounting in the circuit-model sense."""

    one_qubit_gates: int = 0
    two_qubit_gates: int = 0
    measurements: int = 0
    ancillas_used: int = 0

    def as_dict(self) -> dict:
        return {
            "one_qubit_gates": self.one_qubit_gates,
            "two_qubit_gates": self.two_qubit_gates,
            "measurements": self.measurements,
            "ancillas_used": self.ancillas_used,
        }


class GraphRegister:
    """A graph held as a stabilizer state plus its classical shadow."""

    __slots__ = ("tableau", "shadow", "counters")

    def __init__(self, tableau: Tableau, shadow: Graph, counters: Optional[GateCounters] = None):
        if tableau.n != shadow.n:
            raise ValueError("tableau and shadow sizes differ")
        self.tableau = tableau
        self.shadow = shadow
        self.counters = counters if counters is not None else GateCounters()

    @property
    def n(self) -> int:
        return self.shadow.n

    # -- preparation --------------------------------------------------

    @classmethod
    def prepare(cls, g: Graph, seed: int = 0) -> "GraphRegister":
        """Constructive preparation: |+>^n, a CZ per edge, a Z per loop."""
        r = cls(Tableau.new_plus(g.n, seed), Graph.empty(g.n))
        for u in range(g.n):
            for v in _bits(g.adj[u] & ~((1 << (u + 1)) - 1)):
                r.cz(u, v)
        for v in _bits(g.loops):
            r.apply_pauli("Z", v)
        return r

    @classmethod
    def prepare_complete(cls, n: int, seed: int = 0) -> "GraphRegister":
        """K_n in O(n) gates via intraset complementation over all vertices."""
        if n < 1:
            raise ValueError("need at least one vertex")
        r = cls.prepare(Graph.empty(n), seed)
        r.intraset_complement(range(n))
        return r

    def copy(self, reseed: Optional[int] = None) -> "GraphRegister":
        return GraphRegister(
            self.tableau.copy(reseed),
            self.shadow.copy(),
            GateCounters(**self.counters.as_dict()),
        )

    # -- internal gate helpers (count + mutate tableau only) ----------

    def _gate1(self, name: str, q: int) -> None:
        self.tableau.apply_gate(name, q)
        self.counters.one_qubit_gates += 1

    def _gate2(self, name: str, a: int, b: int) -> None:
        self.tableau.apply_gate(name, a, b)
        self.counters.two_qubit_gates += 1

    # -- vertex management --------------------------------------------

    def add_vertex(self) -> int:
        """New isolated vertex; returns its index."""
        q = self.tableau.add_qubit_plus()
        self.shadow = Graph(
            self.shadow.n + 1, list(self.shadow.adj) + [0], self.shadow.loops
        )
        return q

    @classmethod
    def tensor(cls, r1: "GraphRegister", r2: "GraphRegister", seed: int = 0) -> "GraphRegister":
        """Disjoint union of two registers; r2's vertices shift up."""
        t = Tableau.tensor(r1.tableau, r2.tableau, seed)
        adj = list(r1.shadow.adj) + [row << r1.n for row in r2.shadow.adj]
        g = Graph(r1.n + r2.n, adj, r1.shadow.loops | (r2.shadow.loops << r1.n))
        c = GateCounters(
            r1.counters.one_qubit_gates + r2.counters.one_qubit_gates,
            r1.counters.two_qubit_gates + r2.counters.two_qubit_gates,
            r1.counters.measurements + r2.counters.measurements,
            r1.counters.ancillas_used + r2.counters.ancillas_used,
        )
        return cls(t, g, c)

    # -- basic manipulations ------------------------------------------

    def apply_pauli(self, p: str, a: int) -> None:
        if p not in ("X", "Y", "Z"):
            raise GraphError(f"unknown Pauli {p!r}")
        self._gate1(p, a)
        self.shadow.pauli_rule(p, a)

    def cz(self, u: int, v: int) -> None:
        """Edge complementation; u == v is routed to Z (loop toggle)."""
        if u == v:
            self.apply_pauli("Z", u)
            return
        self._gate2("CZ", u, v)
        self.shadow.toggle_edge(u, v)

    def cnot(self, a: int, b: int) -> None:
        if a == b:
            raise PreconditionError("cnot needs distinct vertices")
        self._gate2("CNOT", a, b)
        self.shadow.cnot_rule(a, b)

    def fx(self, a: int, b: int) -> None:
        """Hadamard-conjugated CZ; requires a, b non-adjacent."""
        if a == b:
            raise PreconditionError("fx needs distinct vertices")
        if self.shadow.has_edge(a, b):
            raise PreconditionError(
                f"fx undefined with edge ({a},{b}) present; use fx_wrapped"
            )
        self._fx_gates(a, b)
        self.shadow.fx_rule(a, b)

    def _fx_gates(self, a: int, b: int) -> None:
        self._gate1("H", a)
        self._gate1("H", b)
        self._gate2("CZ", a, b)
        self._gate1("H", a)
        self._gate1("H", b)

    def fx_wrapped(self, a: int, b: int) -> None:
        """Neighbourhood complementation that tolerates the edge (a, b).

        With the edge present this is the 7-gate CZ.FX.CZ sandwich; the
        edge is removed, complemented around, and restored.  Without it
        the sandwich would leave the graph-state space, so the plain
        5-gate fx applies instead.
        """
        if a == b:
            raise PreconditionError("fx_wrapped needs distinct vertices")
        if not self.shadow.has_edge(a, b):
            self.fx(a, b)
            return
        self.cz(a, b)
        self.fx(a, b)
        self.cz(a, b)

    def local_complement(self, a: int) -> None:
        """sqrt(-iX) on a and sqrt(iZ) on each shadow neighbour of a."""
        self.shadow._check(a)
        neighbors = self.shadow.adj[a]
        self._gate1("SQRT_MINUS_IX", a)
        for b in _bits(neighbors):
            self._gate1("SQRT_IZ", b)
        self.shadow.local_comp_rule(a)

    # -- ancilla driven complementations ------------------------------

    def interset_complement(self, s1: Iterable[int], s2: Iterable[int]) -> None:
        """Complement all edges between disjoint sets via two ancillas."""
        m1 = self.shadow._set_mask(s1)
        m2 = self.shadow._set_mask(s2)
        if m1 & m2:
            raise PreconditionError("interset complementation needs disjoint sets")
        a = self.add_vertex()
        b = self.add_vertex()
        self.counters.ancillas_used += 2
        for v in _bits(m1):
            self.cz(a, v)
        for v in _bits(m2):
            self.cz(b, v)
        self.fx(a, b)
        for v in _bits(m1):
            self.cz(a, v)
        for v in _bits(m2):
            self.cz(b, v)
        self._discard_plus_ancilla(b)
        self._discard_plus_ancilla(a)

    def intraset_complement(self, s: Iterable[int]) -> None:
        """Complement all edges inside a set via one ancilla and U_a."""
        m = self.shadow._set_mask(s)
        a = self.add_vertex()
        self.counters.ancillas_used += 1
        for v in _bits(m):
            self.cz(a, v)
        self.local_complement(a)
        for v in _bits(m):
            self.cz(a, v)
        self._discard_plus_ancilla(a)

    def _discard_plus_ancilla(self, q: int) -> None:
        """Drop a provably disentangled ancilla (must carry +X_q)."""
        sign = self.tableau.contains_stabilizer(PauliString.single(self.n, "X", q))
        if sign != 1:
            raise AssertionError(f"ancilla {q} not disentangled in |+>")
        if self.shadow.adj[q] or self.shadow.has_loop(q):
            raise AssertionError(f"ancilla {q} still connected in shadow")
        self.tableau.remove_product_qubit(q, "X")
        self.shadow = self.shadow.z_delete_rule(q, 0)

    # -- deletion -----------------------------------------------------

    def delete_vertex(self, v: int, mode: str = "corrected") -> int:
        """Z-measure vertex v and drop its qubit; returns the outcome bit.

        corrected: Z gates fix the neighbours (known from the shadow) so
        the result is exactly G - v.  blind: the outcome-1 residue stays
        as loop toggles on the former neighbours.
        """
        if mode not in ("blind", "corrected"):
            raise ValueError(f"unknown deletion mode {mode!r}")
        self.shadow._check(v)
        neighbors = self.shadow.adj[v]
        outcome, _ = self.tableau.measure_pauli(PauliString.single(self.n, "Z", v))
        self.counters.measurements += 1
        bit = 0 if outcome == 1 else 1
        if mode == "corrected" and bit == 1:
            for u in _bits(neighbors):
                self._gate1("Z", u)
            bit_for_shadow = 0
        else:
            bit_for_shadow = bit
        self.tableau.remove_product_qubit(v, "Z")
        self.shadow = self.shadow.z_delete_rule(v, bit_for_shadow)
        return bit

    # -- verification -------------------------------------------------

    def stabilizer_generator(self, v: int) -> PauliString:
        """K^v derived from the shadow: (-1)^loop X_v prod Z over N(v)."""
        self.shadow._check(v)
        sign = -1 if self.shadow.has_loop(v) else 1
        return PauliString(self.n, 1 << v, self.shadow.adj[v], sign)

    def verify(self) -> bool:
        """True iff every shadow-derived generator stabilizes the tableau."""
        span = self.tableau.span()
        for v in range(self.n):
            k = self.stabilizer_generator(v)
            phase = self.tableau.resolve(k.x, k.z, span)
            if phase is None or phase % 2:
                return False
            if (1 if phase == 0 else -1) != k.sign:
                return False
        return True
