"""Exact stabilizer simulator on generator tableaus.

The state is held as n commuting, independent Pauli generators with sign
bits; gates act by Heisenberg conjugation and Pauli measurements by the
standard anticommutation update.  Phases are tracked as powers of i mod
4 internally, but a valid tableau only ever exposes +1/-1.

A qubit with x = 1 and z = 1 denotes Y itself (not XZ), so a stored row
with phase 0 is exactly the printed Pauli string.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Tuple

from .gf2 import BitVector, Echelon, ShapeError


class QubitIndexError(IndexError):
    """Qubit index outside the register."""


class GateError(ValueError):
    """Malformed gate application."""


ONE_QUBIT_GATES = ("H", "S", "X", "Y", "Z", "SQRT_MINUS_IX", "SQRT_IZ")
TWO_QUBIT_GATES = ("CZ", "CNOT")

# Phase (power of i) picked up per qubit when multiplying sigma(x1,z1)
# by sigma(x2,z2), e.g. X.Y = iZ.  Keyed by (x1, z1, x2, z2).
_MUL_PHASE = {
    (1, 0, 1, 1): 1,  # X.Y = iZ
    (1, 1, 0, 1): 1,  # Y.Z = iX
    (0, 1, 1, 0): 1,  # Z.X = iY
    (1, 1, 1, 0): 3,  # Y.X = -iZ
    (0, 1, 1, 1): 3,  # Z.Y = -iX
    (1, 0, 0, 1): 3,  # X.Z = -iY
}


def mul_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Power of i from multiplying two Pauli strings given as bitmasks."""
    plus = (
        (x1 & ~z1 & x2 & z2)
        | (x1 & z1 & ~x2 & z2)
        | (~x1 & z1 & x2 & ~z2)
    )
    minus = (
        (x1 & z1 & x2 & ~z2)
        | (~x1 & z1 & x2 & z2)
        | (x1 & ~z1 & ~x2 & z2)
    )
    return (plus.bit_count() - minus.bit_count()) % 4


class PauliString:
    """A signed n-qubit Pauli operator."""

    __slots__ = ("n", "x", "z", "sign")

    def __init__(self, n: int, x: int = 0, z: int = 0, sign: int = 1):
        if x >> n or z >> n:
            raise ShapeError("Pauli bits beyond qubit count")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.n = n
        self.x = x
        self.z = z
        self.sign = sign

    @classmethod
    def single(cls, n: int, kind: str, q: int, sign: int = 1) -> "PauliString":
        if not 0 <= q < n:
            raise QubitIndexError(f"qubit {q} out of range for n={n}")
        x = 1 << q if kind in ("X", "Y") else 0
        z = 1 << q if kind in ("Z", "Y") else 0
        if kind not in ("X", "Y", "Z"):
            raise GateError(f"unknown Pauli {kind!r}")
        return cls(n, x, z, sign)

    @classmethod
    def all_x(cls, n: int, sign: int = 1) -> "PauliString":
        m = (1 << n) - 1
        return cls(n, m, 0, sign)

    @classmethod
    def all_y(cls, n: int, sign: int = 1) -> "PauliString":
        m = (1 << n) - 1
        return cls(n, m, m, sign)

    def commutes_with(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise ShapeError("qubit count mismatch")
        anti = (self.x & other.z).bit_count() + (self.z & other.x).bit_count()
        return anti % 2 == 0

    def x_bits(self) -> BitVector:
        return BitVector(self.n, self.x)

    def z_bits(self) -> BitVector:
        return BitVector(self.n, self.z)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PauliString)
            and (self.n, self.x, self.z, self.sign)
            == (other.n, other.x, other.z, other.sign)
        )

    def __repr__(self) -> str:
        body = "".join(
            "IXZY"[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)]
            for q in range(self.n)
        )
        return ("+" if self.sign > 0 else "-") + body


class Tableau:
    """n stabilizer generators (x bits, z bits, phase mod 4) plus a PRNG."""

    __slots__ = ("n", "xs", "zs", "phases", "rng")

    def __init__(self, n: int, seed: int = 0):
        if n < 0:
            raise ValueError("negative qubit count")
        self.n = n
        self.xs: List[int] = [1 << i for i in range(n)]
        self.zs: List[int] = [0] * n
        self.phases: List[int] = [0] * n
        self.rng = random.Random(seed)

    # -- construction -------------------------------------------------

    @classmethod
    def new_plus(cls, n: int, seed: int = 0) -> "Tableau":
        """All-|+> state: generators X_i with sign +1."""
        return cls(n, seed)

    def copy(self, reseed: Optional[int] = None) -> "Tableau":
        t = Tableau.__new__(Tableau)
        t.n = self.n
        t.xs = list(self.xs)
        t.zs = list(self.zs)
        t.phases = list(self.phases)
        t.rng = random.Random(reseed) if reseed is not None else random.Random()
        if reseed is None:
            t.rng.setstate(self.rng.getstate())
        return t

    @classmethod
    def tensor(cls, t1: "Tableau", t2: "Tableau", seed: int = 0) -> "Tableau":
        """Disjoint union; t2's qubits are shifted above t1's."""
        t = cls(t1.n + t2.n, seed)
        t.xs = list(t1.xs) + [x << t1.n for x in t2.xs]
        t.zs = list(t1.zs) + [z << t1.n for z in t2.zs]
        t.phases = list(t1.phases) + list(t2.phases)
        return t

    def add_qubit_plus(self) -> int:
        """Append a fresh |+> qubit; returns its index."""
        q = self.n
        self.n += 1
        self.xs.append(1 << q)
        self.zs.append(0)
        self.phases.append(0)
        return q

    # -- gates --------------------------------------------------------

    def _check_qubit(self, *qs: int) -> None:
        for q in qs:
            if not 0 <= q < self.n:
                raise QubitIndexError(f"qubit {q} out of range for n={self.n}")

    def apply_gate(self, name: str, *qubits: int) -> None:
        if name in ONE_QUBIT_GATES:
            if len(qubits) != 1:
                raise GateError(f"{name} takes one qubit")
            getattr(self, name.lower())(qubits[0])
        elif name == "CZ":
            if len(qubits) != 2:
                raise GateError("CZ takes two qubits")
            self.cz(*qubits)
        elif name == "CNOT":
            if len(qubits) != 2:
                raise GateError("CNOT takes two qubits")
            self.cnot(*qubits)
        else:
            raise GateError(f"unknown gate {name!r}")

    def h(self, q: int) -> None:
        self._check_qubit(q)
        bit = 1 << q
        for i in range(self.n):
            xb, zb = self.xs[i] & bit, self.zs[i] & bit
            if xb and zb:
                self.phases[i] = (self.phases[i] + 2) % 4
            self.xs[i] ^= xb ^ zb
            self.zs[i] ^= xb ^ zb

    def s(self, q: int) -> None:
        self._check_qubit(q)
        bit = 1 << q
        for i in range(self.n):
            xb, zb = self.xs[i] & bit, self.zs[i] & bit
            if xb and zb:
                self.phases[i] = (self.phases[i] + 2) % 4
            self.zs[i] ^= xb

    def x(self, q: int) -> None:
        self._check_qubit(q)
        bit = 1 << q
        for i in range(self.n):
            if self.zs[i] & bit:
                self.phases[i] = (self.phases[i] + 2) % 4

    def y(self, q: int) -> None:
        self._check_qubit(q)
        bit = 1 << q
        for i in range(self.n):
            if bool(self.zs[i] & bit) != bool(self.xs[i] & bit):
                self.phases[i] = (self.phases[i] + 2) % 4

    def z(self, q: int) -> None:
        self._check_qubit(q)
        bit = 1 << q
        for i in range(self.n):
            if self.xs[i] & bit:
                self.phases[i] = (self.phases[i] + 2) % 4

    def sqrt_minus_ix(self, q: int) -> None:
        """exp(-i pi X/4): X -> X, Z -> -Y, Y -> Z."""
        self._check_qubit(q)
        bit = 1 << q
        for i in range(self.n):
            xb, zb = self.xs[i] & bit, self.zs[i] & bit
            if zb and not xb:
                self.phases[i] = (self.phases[i] + 2) % 4
            self.xs[i] ^= zb
        # (zb stays: Z gains an X bit -> Y; Y loses its X bit -> Z)

    def sqrt_iz(self, q: int) -> None:
        """exp(i pi Z/4): Z -> Z, X -> -Y, Y -> X."""
        self._check_qubit(q)
        bit = 1 << q
        for i in range(self.n):
            xb, zb = self.xs[i] & bit, self.zs[i] & bit
            if xb and not zb:
                self.phases[i] = (self.phases[i] + 2) % 4
            self.zs[i] ^= xb

    def cz(self, a: int, b: int) -> None:
        self._check_qubit(a, b)
        if a == b:
            # CZ with equal control and target is Z by convention.
            self.z(a)
            return
        ba, bb = 1 << a, 1 << b
        for i in range(self.n):
            xa, za = self.xs[i] & ba, self.zs[i] & ba
            xb, zb = self.xs[i] & bb, self.zs[i] & bb
            if xa and xb and (bool(za) != bool(zb)):
                self.phases[i] = (self.phases[i] + 2) % 4
            if xa:
                self.zs[i] ^= bb
            if xb:
                self.zs[i] ^= ba

    def cnot(self, a: int, b: int) -> None:
        """CNOT controlled on a, targeted on b."""
        self._check_qubit(a, b)
        if a == b:
            raise GateError("CNOT needs distinct control and target")
        ba, bb = 1 << a, 1 << b
        for i in range(self.n):
            xa, za = self.xs[i] & ba, self.zs[i] & ba
            xb, zb = self.xs[i] & bb, self.zs[i] & bb
            if xa and zb and (bool(xb) == bool(za)):
                self.phases[i] = (self.phases[i] + 2) % 4
            if xa:
                self.xs[i] ^= bb
            if zb:
                self.zs[i] ^= ba

    # -- row algebra --------------------------------------------------

    def _row_mul(self, i: int, j: int) -> None:
        """row_i := row_i * row_j, with exact phase tracking."""
        self.phases[i] = (
            self.phases[i]
            + self.phases[j]
            + mul_phase(self.xs[i], self.zs[i], self.xs[j], self.zs[j])
        ) % 4
        self.xs[i] ^= self.xs[j]
        self.zs[i] ^= self.zs[j]

    def _symplectic_rows(self) -> List[int]:
        """Each generator as one (z|x) packed 2n-bit int."""
        return [self.zs[i] << self.n | self.xs[i] for i in range(self.n)]

    def _combo_sign(self, combo: int) -> int:
        """Phase (mod 4) of the product of the generators picked by combo."""
        phase = 0
        x = z = 0
        m = combo
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            phase = (phase + self.phases[j] + mul_phase(x, z, self.xs[j], self.zs[j])) % 4
            x ^= self.xs[j]
            z ^= self.zs[j]
        return phase

    def span(self) -> Echelon:
        """Echelon form of the generator rows with combination tracking."""
        ech = Echelon()
        for row in self._symplectic_rows():
            ech.add(row)
        return ech

    def resolve(self, x: int, z: int, span: Optional[Echelon] = None) -> Optional[int]:
        """Phase mod 4 with which the Pauli (x, z) appears in the group.

        Returns None when (x, z) is not in the row span.  A valid
        tableau only produces 0 or 2 here.
        """
        if span is None:
            span = self.span()
        combo = span.membership(z << self.n | x)
        if combo is None:
            return None
        return self._combo_sign(combo)

    def contains_stabilizer(self, p: PauliString) -> Optional[int]:
        """+1 / -1 if +/-P is in the stabilizer group, else None."""
        if p.n != self.n:
            raise ShapeError("qubit count mismatch")
        phase = self.resolve(p.x, p.z)
        if phase is None:
            return None
        if phase % 2:
            raise AssertionError("imaginary sign in stabilizer group")
        sign = 1 if phase == 0 else -1
        return sign * p.sign

    # -- measurement --------------------------------------------------

    def measure_pauli(self, p: PauliString) -> Tuple[int, bool]:
        """Measure the observable P; returns (outcome, deterministic).

        Deterministic when +/-P is already generated; then the tableau
        is untouched.  Otherwise the outcome is a fair coin from the
        tableau's RNG stream and the generators are updated so that
        outcome * P joins the group.
        """
        if p.n != self.n:
            raise ShapeError("qubit count mismatch")
        anti = [
            i
            for i in range(self.n)
            if ((self.xs[i] & p.z).bit_count() + (self.zs[i] & p.x).bit_count()) % 2
        ]
        if not anti:
            sign = self.contains_stabilizer(p)
            if sign is None:
                raise AssertionError(
                    "commuting Pauli outside a full-rank stabilizer group"
                )
            return sign, True
        pivot = anti[0]
        for i in anti[1:]:
            self._row_mul(i, pivot)
        outcome = 1 if self.rng.getrandbits(1) == 0 else -1
        self.xs[pivot] = p.x
        self.zs[pivot] = p.z
        self.phases[pivot] = 0 if outcome * p.sign > 0 else 2
        return outcome, False

    # -- qubit removal ------------------------------------------------

    def remove_product_qubit(self, q: int, kind: str) -> None:
        """Drop qubit q, which must carry +/-X_q or +/-Z_q in the group.

        Row-reduces so one generator is exactly that single-qubit Pauli
        and every other generator acts as identity on q, then deletes
        the row and the column.
        """
        self._check_qubit(q)
        bit = 1 << q
        want_x = bit if kind == "X" else 0
        want_z = bit if kind == "Z" else 0
        if kind not in ("X", "Z"):
            raise GateError(f"unsupported removal basis {kind!r}")
        span = self.span()
        combo = span.membership(want_z << self.n | want_x)
        if combo is None:
            raise GateError(f"qubit {q} is not in a +/-{kind} product state")
        pivot = (combo & -combo).bit_length() - 1
        rest = combo & (combo - 1)
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            self._row_mul(pivot, j)
        assert (self.xs[pivot], self.zs[pivot]) == (want_x, want_z)
        for i in range(self.n):
            if i != pivot and ((self.xs[i] | self.zs[i]) & bit):
                self._row_mul(i, pivot)
        low = bit - 1

        def drop(bits: int) -> int:
            return (bits & low) | ((bits >> 1) & ~low)

        self.xs = [drop(self.xs[i]) for i in range(self.n) if i != pivot]
        self.zs = [drop(self.zs[i]) for i in range(self.n) if i != pivot]
        self.phases = [self.phases[i] for i in range(self.n) if i != pivot]
        self.n -= 1

    # -- global checks ------------------------------------------------

    def is_valid(self) -> bool:
        """Pairwise commuting, full rank, real signs."""
        rows = self._symplectic_rows()
        ech = Echelon()
        for r in rows:
            if not ech.add(r):
                return False
        for ph in self.phases:
            if ph % 2:
                return False
        for i in range(self.n):
            for j in range(i + 1, self.n):
                anti = (self.xs[i] & self.zs[j]).bit_count() + (
                    self.zs[i] & self.xs[j]
                ).bit_count()
                if anti % 2:
                    return False
        return True

    def generators(self) -> List[PauliString]:
        out = []
        for i in range(self.n):
            if self.phases[i] % 2:
                raise AssertionError("imaginary generator phase")
            sign = 1 if self.phases[i] == 0 else -1
            out.append(PauliString(self.n, self.xs[i], self.zs[i], sign))
        return out


def inner_product_mag2(t1: Tableau, t2: Tableau) -> Fraction:
    """|<psi1|psi2>|^2, exactly, as a dyadic Fraction.

    Zero when some Pauli appears with opposite signs in the two groups;
    otherwise 2**(k - n) with k the dimension of the group intersection.
    """
    if t1.n != t2.n:
        raise ShapeError("qubit count mismatch")
    n = t1.n
    table = {}  # pivot -> (row, combo); combo bit i < n tags a t1 row,
    # bit n + j tags t2 row j.

    def reduce(v: int):
        combo = 0
        while v:
            p = v.bit_length() - 1
            entry = table.get(p)
            if entry is None:
                return v, combo
            v ^= entry[0]
            combo ^= entry[1]
        return 0, combo

    for i, row in enumerate(t1._symplectic_rows()):
        residual, combo = reduce(row)
        assert residual, "t1 generators must be independent"
        table[residual.bit_length() - 1] = (residual, combo | (1 << i))
    k = 0
    for j, row in enumerate(t2._symplectic_rows()):
        residual, combo = reduce(row)
        if residual:
            table[residual.bit_length() - 1] = (residual, combo | (1 << (n + j)))
            continue
        # row is in the joint span: combo splits into a t1 part and a
        # part over previously inserted t2 rows; together with row j
        # itself this is one element of the group intersection.
        k += 1
        c1 = combo & ((1 << n) - 1)
        c2 = (combo >> n) | (1 << j)
        phase1 = t1._combo_sign(c1)
        phase2 = t2._combo_sign(c2)
        if phase1 % 2 or phase2 % 2:
            raise AssertionError("imaginary sign in stabilizer group")
        if phase1 != phase2:
            return Fraction(0)
    return Fraction(1, 1 << (n - k))
