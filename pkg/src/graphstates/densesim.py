"""Dense statevector oracle for desk-scale cross-checks (n <= 12).

Never a fallback path: the size cap is enforced with an explicit error.
Basis ordering is little-endian: bit q of the index is qubit q.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .graphmodel import Graph
from .tableau import PauliString, Tableau

MAX_QUBITS = 12
_ATOL = 1e-9

_SQRT2 = math.sqrt(2.0)

GATES_1Q = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "SQRT_MINUS_IX": (
        np.eye(2, dtype=complex) - 1j * np.array([[0, 1], [1, 0]])
    )
    / _SQRT2,
    "SQRT_IZ": (
        np.eye(2, dtype=complex) + 1j * np.array([[1, 0], [0, -1]])
    )
    / _SQRT2,
}


class SizeCapError(ValueError):
    """More qubits than the dense oracle allows."""


def _check_size(n: int, cap: int = MAX_QUBITS) -> None:
    if n > cap:
        raise SizeCapError(f"dense oracle capped at {cap} qubits, got {n}")


def graph_state_vector(g: Graph) -> np.ndarray:
    """Amplitudes of |G>: 2^(-n/2) * (-1)^(induced edges + selected loops)."""
    _check_size(g.n)
    n = g.n
    amps = np.empty(1 << n, dtype=complex)
    norm = 2 ** (-n / 2)
    for s in range(1 << n):
        q = 0
        for v in range(n):
            if (s >> v) & 1:
                q += (g.adj[v] & s).bit_count()
        q //= 2  # each induced edge counted from both ends
        q += (g.loops & s).bit_count()
        amps[s] = norm * (-1) ** (q & 1)
    return amps


def oracle_prepare(g: Graph) -> np.ndarray:
    """Single-query preparation: phase kickback onto a |-> target qubit.

    Enumerates subsets S, applying (-1)^(edges induced by S, loops
    included); the first n qubits then carry |G> with the last qubit
    left exactly in |->.
    """
    _check_size(g.n, MAX_QUBITS - 1)
    n = g.n
    edges = g.edges()
    minus = np.array([1, -1], dtype=complex) / _SQRT2
    norm = 2 ** (-n / 2)
    amps = np.empty(1 << (n + 1), dtype=complex)
    for s in range(1 << n):
        e_s = sum(
            1 for u, v in edges if (s >> u) & 1 and (s >> v) & 1
        )
        kick = norm * (-1) ** (e_s & 1)
        amps[s] = kick * minus[0]
        amps[s | (1 << n)] = kick * minus[1]
    return amps


def apply_gate_dense(state: np.ndarray, name: str, *qubits: int) -> np.ndarray:
    """Apply a named gate; returns a new state vector."""
    n = int(round(math.log2(state.size)))
    _check_size(n)
    if name in GATES_1Q:
        (q,) = qubits
        return _apply_1q(state, GATES_1Q[name], q, n)
    if name == "CZ":
        a, b = qubits
        if a == b:
            return _apply_1q(state, GATES_1Q["Z"], a, n)
        out = state.copy()
        for s in range(state.size):
            if (s >> a) & 1 and (s >> b) & 1:
                out[s] = -out[s]
        return out
    if name == "CNOT":
        a, b = qubits
        out = state.copy()
        for s in range(state.size):
            if (s >> a) & 1:
                out[s] = state[s ^ (1 << b)]
        return out
    raise ValueError(f"unknown gate {name!r}")


def _apply_1q(state: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    psi = state.reshape([2] * n)
    # little-endian: qubit q is axis n-1-q of the reshaped tensor
    axis = n - 1 - q
    psi = np.moveaxis(psi, axis, 0)
    psi = np.tensordot(u, psi, axes=([1], [0]))
    psi = np.moveaxis(psi, 0, axis)
    return psi.reshape(-1).copy()


def apply_pauli_dense(state: np.ndarray, p: PauliString) -> np.ndarray:
    """Apply a signed Pauli string (Y convention: x=z=1 is Y itself)."""
    n = p.n
    if state.size != 1 << n:
        raise ValueError("state size mismatch")
    w = (p.x & p.z).bit_count()
    phase = p.sign * (1j**w)
    out = np.empty_like(state)
    for s in range(state.size):
        src = s ^ p.x
        sgn = -1 if (p.z & src).bit_count() & 1 else 1
        out[s] = phase * sgn * state[src]
    return out


def overlap(v1: np.ndarray, v2: np.ndarray) -> complex:
    if v1.shape != v2.shape:
        raise ValueError("shape mismatch")
    return complex(np.vdot(v1, v2))


def equal_up_to_phase(v1: np.ndarray, v2: np.ndarray, atol: float = _ATOL) -> bool:
    if v1.shape != v2.shape:
        raise ValueError("shape mismatch")
    return abs(abs(overlap(v1, v2)) - 1.0) < atol


def tableau_to_statevector(t: Tableau) -> np.ndarray:
    """Reconstruct the unique joint +1 eigenstate of a tableau's generators.

    Projects a basis vector through (I + s_i P_i)/2 for every generator;
    the projector has rank one, so any basis vector with support works.
    """
    _check_size(t.n)
    dim = 1 << t.n
    gens = t.generators()
    for start in range(dim):
        psi = np.zeros(dim, dtype=complex)
        psi[start] = 1.0
        for p in gens:
            psi = (psi + apply_pauli_dense(psi, p)) / 2.0
        norm = np.linalg.norm(psi)
        if norm > 1e-6:
            return psi / norm
    raise AssertionError("projector annihilated every basis vector")


def measurement_probability(state: np.ndarray, p: PauliString) -> Tuple[float, float]:
    """(P(+1), P(-1)) for measuring the Pauli observable p."""
    plus = (state + apply_pauli_dense(state, p)) / 2.0
    pr_plus = float(np.vdot(plus, plus).real)
    return pr_plus, 1.0 - pr_plus
