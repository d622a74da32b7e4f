"""Classical multigraph with self-loops and the graph rewrite rules.

This is both the shadow state carried inside a register and the
independent oracle the simulator is checked against.  Off-diagonal
adjacency and self-loops are stored separately: a loop is a different
kind of object (a single Z in the quantum picture) and keeping it out of
the adjacency rows lets every rule read N(v) directly off one bitmask.
"""

from __future__ import annotations

import random
from typing import Iterable, List, Optional, Sequence, Tuple


class GraphError(ValueError):
    """Invalid vertex indices or malformed rule operands."""


def _mask(n: int) -> int:
    return (1 << n) - 1


def _bits(mask: int) -> Iterable[int]:
    while mask:
        yield (mask & -mask).bit_length() - 1
        mask &= mask - 1


class Graph:
    """Undirected graph over GF(2): symmetric adjacency rows plus a loop mask."""

    __slots__ = ("n", "adj", "loops")

    def __init__(self, n: int, adj: Optional[List[int]] = None, loops: int = 0):
        if n < 0:
            raise GraphError("negative vertex count")
        if adj is None:
            adj = [0] * n
        if len(adj) != n:
            raise GraphError("adjacency row count mismatch")
        m = _mask(n)
        for v, row in enumerate(adj):
            if row & ~m:
                raise GraphError("adjacency bits beyond vertex count")
            if (row >> v) & 1:
                raise GraphError("diagonal adjacency bit; self-loops go in loops")
        for u in range(n):
            for v in range(u + 1, n):
                if ((adj[u] >> v) & 1) != ((adj[v] >> u) & 1):
                    raise GraphError("adjacency not symmetric")
        if loops & ~m:
            raise GraphError("loop bits beyond vertex count")
        self.n = n
        self.adj = list(adj)
        self.loops = loops

    # -- constructors -------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        m = _mask(n)
        return cls(n, [m ^ (1 << v) for v in range(n)])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.toggle_edge(u, v)
        return g

    @classmethod
    def random(cls, n: int, rng: random.Random, loop_prob: float = 0.5) -> "Graph":
        g = cls(n)
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.5:
                    g.toggle_edge(u, v)
            if rng.random() < loop_prob:
                g.loops ^= 1 << u
        return g

    # -- basic queries ------------------------------------------------

    def _check(self, *vs: int) -> None:
        for v in vs:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u, v)
        if u == v:
            return bool((self.loops >> u) & 1)
        return bool((self.adj[u] >> v) & 1)

    def has_loop(self, v: int) -> bool:
        self._check(v)
        return bool((self.loops >> v) & 1)

    def neighbors(self, v: int) -> int:
        """Neighbour mask of v, loops excluded."""
        self._check(v)
        return self.adj[v]

    def edges(self) -> List[Tuple[int, int]]:
        """Sorted edge list; a loop appears as (v, v)."""
        out = []
        for u in range(self.n):
            if (self.loops >> u) & 1:
                out.append((u, u))
            for v in _bits(self.adj[u] & ~_mask(u + 1)):
                out.append((u, v))
        return sorted(out)

    def edge_count(self) -> int:
        """Number of non-loop edges."""
        return sum(row.bit_count() for row in self.adj) // 2

    def loop_count(self) -> int:
        return self.loops.bit_count()

    def copy(self) -> "Graph":
        return Graph(self.n, list(self.adj), self.loops)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adj == other.adj
            and self.loops == other.loops
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.adj), self.loops))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    # -- rewrite rules ------------------------------------------------

    def toggle_edge(self, u: int, v: int) -> None:
        """XOR one edge; u == v toggles the self-loop on u."""
        self._check(u, v)
        if u == v:
            self.loops ^= 1 << u
        else:
            self.adj[u] ^= 1 << v
            self.adj[v] ^= 1 << u

    def pauli_rule(self, p: str, a: int) -> None:
        """Loop toggles produced by a Pauli on vertex a.

        X toggles loops on N(a) (a excluded), Y on N(a) and a, Z on a only.
        """
        self._check(a)
        if p == "Z":
            self.loops ^= 1 << a
        elif p == "X":
            self.loops ^= self.adj[a]
        elif p == "Y":
            self.loops ^= self.adj[a] | (1 << a)
        else:
            raise GraphError(f"unknown Pauli {p!r}")

    def cnot_rule(self, a: int, b: int) -> None:
        """Complement edges between a and N(b); v = a lands on a's loop."""
        self._check(a, b)
        if a == b:
            raise GraphError("cnot_rule needs distinct vertices")
        for v in _bits(self.adj[b]):
            self.toggle_edge(a, v)  # v == a toggles the loop on a
        if (self.loops >> b) & 1:
            self.loops ^= 1 << a

    def fx_rule(self, a: int, b: int) -> None:
        """Complement all edges between N(a) and N(b); a, b non-adjacent.

        Implemented literally as the XOR over ordered pairs
        (C u F) x (D u F), so pairs inside F cancel by being toggled
        twice and (f, f) pairs become loop toggles.  Loops on a or b
        additionally toggle loops across the opposite side.
        """
        self._check(a, b)
        if a == b:
            raise GraphError("fx_rule needs distinct vertices")
        if self.has_edge(a, b):
            raise GraphError(
                f"fx_rule undefined with edge ({a},{b}) present; "
                "use the wrapped form"
            )
        na, nb = self.adj[a], self.adj[b]
        c_side = (na & ~nb) & ~(1 << b)
        d_side = (nb & ~na) & ~(1 << a)
        f_side = na & nb
        left = c_side | f_side
        right = d_side | f_side
        for v in _bits(left):
            for u in _bits(right):
                self.toggle_edge(v, u)
        if (self.loops >> b) & 1:
            self.loops ^= left
        if (self.loops >> a) & 1:
            self.loops ^= right

    def local_comp_rule(self, a: int) -> None:
        """Complement edges among N(a); a loop on a toggles loops on N(a)."""
        self._check(a)
        na = self.adj[a]
        for v in _bits(na):
            for u in _bits(na & ~_mask(v + 1)):
                self.toggle_edge(v, u)
        if (self.loops >> a) & 1:
            self.loops ^= na

    def iac_rule(self, s1: Iterable[int], s2: Iterable[int]) -> None:
        """Complement every edge between the disjoint sets s1 and s2."""
        m1 = self._set_mask(s1)
        m2 = self._set_mask(s2)
        if m1 & m2:
            raise GraphError("interset complementation needs disjoint sets")
        for v in _bits(m1):
            self.adj[v] ^= m2
        for u in _bits(m2):
            self.adj[u] ^= m1

    def iec_rule(self, s: Iterable[int]) -> None:
        """Complement every edge between distinct vertices of s."""
        m = self._set_mask(s)
        for v in _bits(m):
            self.adj[v] ^= m & ~(1 << v)

    def _set_mask(self, s: Iterable[int]) -> int:
        mask = 0
        for v in s:
            self._check(v)
            mask |= 1 << v
        return mask

    def z_delete_rule(self, v: int, outcome: int) -> "Graph":
        """Remove vertex v after a Z-basis measurement with the given outcome.

        outcome 1 leaves the uncorrected residue: loops toggled on the
        former neighbours of v.  Vertices above v are reindexed down.
        """
        self._check(v)
        if outcome not in (0, 1):
            raise GraphError("outcome must be 0 or 1")
        loops = self.loops
        if outcome:
            loops ^= self.adj[v]
        low = _mask(v)

        def drop(bits: int) -> int:
            return (bits & low) | ((bits >> 1) & ~low)

        adj = [drop(self.adj[u]) for u in range(self.n) if u != v]
        return Graph(self.n - 1, adj, drop(loops))

    # -- structural queries -------------------------------------------

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabelled copy with vertex i renamed perm[i]."""
        self._check_perm(perm)
        adj = [0] * self.n
        loops = 0
        for i in range(self.n):
            for j in _bits(self.adj[i]):
                adj[perm[i]] |= 1 << perm[j]
            if (self.loops >> i) & 1:
                loops |= 1 << perm[i]
        return Graph(self.n, adj, loops)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        return self.permute(perm) == self

    def _check_perm(self, perm: Sequence[int]) -> None:
        if sorted(perm) != list(range(self.n)):
            raise GraphError(f"not a permutation of 0..{self.n - 1}: {perm!r}")

    def degree_parity(self) -> Tuple[bool, bool, int]:
        """(all_even, all_odd, loop_parity); loops add two to a degree."""
        parities = [self.adj[v].bit_count() & 1 for v in range(self.n)]
        all_even = all(p == 0 for p in parities)
        all_odd = all(p == 1 for p in parities)
        return all_even, all_odd, self.loops.bit_count() & 1
