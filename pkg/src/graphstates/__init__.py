"""Graph manipulation on simulated graph states.

A classical graph held as a stabilizer state: an exact tableau engine in
lock-step with a shadow multigraph, plus comparison protocols, the
linked-round readout, and a desk-scale dense oracle for cross-checks.
"""

__version__ = "0.1.0"

from .gf2 import BitMatrix, BitVector, CharSum, quad_char_sum, rank, solve
from .graphmodel import Graph, GraphError
from .graphstate import GateCounters, GraphRegister, PreconditionError
from .protocols import (
    TrialRecord,
    automorphism_test,
    degree_parity_test,
    equality_test,
    overlap_mag2,
    vertex_compare,
)
from .readout import CopyFactory, ReadoutRun, ResourceExhausted, readout
from .tableau import PauliString, Tableau, inner_product_mag2

__all__ = [
    "BitMatrix",
    "BitVector",
    "CharSum",
    "CopyFactory",
    "GateCounters",
    "Graph",
    "GraphError",
    "GraphRegister",
    "PauliString",
    "PreconditionError",
    "ReadoutRun",
    "ResourceExhausted",
    "Tableau",
    "TrialRecord",
    "automorphism_test",
    "degree_parity_test",
    "equality_test",
    "inner_product_mag2",
    "overlap_mag2",
    "quad_char_sum",
    "rank",
    "readout",
    "solve",
    "vertex_compare",
]
