"""Shared test helpers: random operation driving and dense comparisons."""

from __future__ import annotations

import random

from graphstates.densesim import (
    equal_up_to_phase,
    graph_state_vector,
    tableau_to_statevector,
)
from graphstates.graphmodel import Graph
from graphstates.graphstate import GraphRegister


def random_register(rng: random.Random, n: int) -> GraphRegister:
    return GraphRegister.prepare(Graph.random(n, rng), seed=rng.getrandbits(32))


def shadow_matches_state(reg: GraphRegister, atol: float = 1e-9) -> bool:
    """Dense check that the register state equals |shadow> up to global phase."""
    return equal_up_to_phase(
        tableau_to_statevector(reg.tableau),
        graph_state_vector(reg.shadow),
        atol,
    )


def apply_random_op(reg: GraphRegister, rng: random.Random, max_n: int = 12) -> str:
    """Apply one random public operation among those currently legal.

    Keeps at least one vertex alive and caps growth so that the two
    transient interset ancillas never push the register past max_n.
    """
    n = reg.n
    ops = ["pauli", "cz_loop", "localcomp"]
    if n < max_n:
        ops.append("addvertex")
    if n >= 2:
        ops += ["cz", "cnot", "fx", "fxw", "delete_blind", "delete_corrected"]
    if n <= max_n - 2:
        ops += ["iec", "iac"]
    op = rng.choice(ops)
    if op == "pauli":
        reg.apply_pauli(rng.choice("XYZ"), rng.randrange(n))
    elif op == "cz_loop":
        v = rng.randrange(n)
        reg.cz(v, v)
    elif op == "cz":
        reg.cz(*rng.sample(range(n), 2))
    elif op == "cnot":
        reg.cnot(*rng.sample(range(n), 2))
    elif op in ("fx", "fxw"):
        a, b = rng.sample(range(n), 2)
        if op == "fx" and not reg.shadow.has_edge(a, b):
            reg.fx(a, b)
        else:
            reg.fx_wrapped(a, b)
    elif op == "localcomp":
        reg.local_complement(rng.randrange(n))
    elif op == "delete_blind":
        reg.delete_vertex(rng.randrange(n), "blind")
    elif op == "delete_corrected":
        reg.delete_vertex(rng.randrange(n), "corrected")
    elif op == "addvertex":
        reg.add_vertex()
    elif op == "iec":
        reg.intraset_complement(rng.sample(range(n), rng.randrange(n + 1)))
    elif op == "iac":
        vs = rng.sample(range(n), rng.randrange(1, n + 1))
        cut = rng.randrange(len(vs) + 1)
        reg.interset_complement(vs[:cut], vs[cut:])
    return op


def all_graphs(n: int):
    """Every graph on n vertices: all edge subsets times all loop subsets."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for edge_bits in range(1 << len(pairs)):
        adj = [0] * n
        for k, (u, v) in enumerate(pairs):
            if (edge_bits >> k) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        for loops in range(1 << n):
            yield Graph(n, list(adj), loops)
