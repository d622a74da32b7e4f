"""Bit-packed linear algebra over GF(2).

Vectors and matrices are stored as Python ints used as bit sets, so all
row operations are single XORs regardless of width.  Everything here is
pure: rank/solve work on internal copies and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional


class ShapeError(ValueError):
    """Raised when a matrix or vector has the wrong shape for an operation."""


def _mask(n: int) -> int:
    return (1 << n) - 1


class BitVector:
    """A length-n vector over GF(2), packed into a single int."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if n < 0:
            raise ShapeError(f"negative length {n}")
        if bits >> n:
            raise ShapeError(f"bits set beyond length {n}")
        self.n = n
        self.bits = bits

    @classmethod
    def from_bits(cls, seq: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for i, b in enumerate(seq):
            if b:
                bits |= 1 << i
            n = i + 1
        return cls(n, bits)

    def get(self, i: int) -> int:
        self._check(i)
        return (self.bits >> i) & 1

    def set(self, i: int, value: int) -> None:
        self._check(i)
        if value:
            self.bits |= 1 << i
        else:
            self.bits &= ~(1 << i)

    def flip(self, i: int) -> None:
        self._check(i)
        self.bits ^= 1 << i

    def _check(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for length {self.n}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ShapeError("length mismatch in xor")
        return BitVector(self.n, self.bits ^ other.bits)

    def dot(self, other: "BitVector") -> int:
        """Mod-2 inner product."""
        if self.n != other.n:
            raise ShapeError("length mismatch in dot")
        return (self.bits & other.bits).bit_count() & 1

    def popcount(self) -> int:
        return self.bits.bit_count()

    def copy(self) -> "BitVector":
        return BitVector(self.n, self.bits)

    def to_list(self) -> List[int]:
        return [(self.bits >> i) & 1 for i in range(self.n)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitVector)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"BitVector({''.join(str(b) for b in self.to_list())})"


class BitMatrix:
    """A rows x cols matrix over GF(2); each row is a packed int."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[List[int]] = None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimension")
        if data is None:
            data = [0] * rows
        if len(data) != rows:
            raise ShapeError("row count mismatch")
        m = _mask(cols)
        for r in data:
            if r & ~m:
                raise ShapeError("row bits set beyond column count")
        self.rows = rows
        self.cols = cols
        self.data = list(data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_rows(cls, rows: List[List[int]]) -> "BitMatrix":
        n = len(rows)
        cols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != cols:
                raise ShapeError("ragged rows")
            bits = 0
            for j, b in enumerate(row):
                if b:
                    bits |= 1 << j
            data.append(bits)
        return cls(n, cols, data)

    @classmethod
    def symmetric_from_rows(cls, rows: List[List[int]]) -> "BitMatrix":
        m = cls.from_rows(rows)
        if not m.is_symmetric():
            raise ShapeError("matrix is not symmetric")
        return m

    def get(self, i: int, j: int) -> int:
        self._check(i, j)
        return (self.data[i] >> j) & 1

    def set(self, i: int, j: int, value: int) -> None:
        self._check(i, j)
        if value:
            self.data[i] |= 1 << j
        else:
            self.data[i] &= ~(1 << j)

    def _check(self, i: int, j: int) -> None:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index ({i},{j}) out of range")

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column(self, j: int) -> BitVector:
        bits = 0
        for i in range(self.rows):
            bits |= ((self.data[i] >> j) & 1) << i
        return BitVector(self.rows, bits)

    def transpose(self) -> "BitMatrix":
        out = BitMatrix.zeros(self.cols, self.rows)
        for i in range(self.rows):
            r = self.data[i]
            while r:
                j = (r & -r).bit_length() - 1
                out.data[j] |= 1 << i
                r &= r - 1
        return out

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            for j in range(i + 1, self.cols):
                if self.get(i, j) != self.get(j, i):
                    return False
        return True

    def is_strictly_upper(self) -> bool:
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            if self.data[i] & _mask(i + 1):
                return False
        return True

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, list(self.data))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __repr__(self) -> str:
        lines = [
            "".join(str((self.data[i] >> j) & 1) for j in range(self.cols))
            for i in range(self.rows)
        ]
        return "BitMatrix([{}])".format(", ".join(lines))


@dataclass(frozen=True)
class CharSum:
    """Exact value of a +/-1 character sum: sign * 2**exponent, or zero.

    sign == 0 encodes the zero sum (exponent is meaningless then).
    """

    sign: int
    exponent: int

    ZERO: "CharSum" = None  # set below

    @property
    def value(self) -> int:
        if self.sign == 0:
            return 0
        return self.sign * (1 << self.exponent)

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign != 0 and self.exponent < 0:
            raise ValueError("negative exponent")


CharSum.ZERO = CharSum(0, 0)


def rank(m: BitMatrix) -> int:
    """GF(2) row rank via Gaussian elimination on a copy."""
    work = list(m.data)
    r = 0
    for col in range(m.cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and ((work[i] >> col) & 1):
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def solve(a: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """Solve a.x = b over GF(2); returns None when inconsistent.

    With rank(a) < cols the system is underdetermined and free variables
    are fixed to zero, so some solution is always returned when one exists.
    """
    if a.rows != b.n:
        raise ShapeError(f"matrix has {a.rows} rows but rhs has {b.n} bits")
    cols = a.cols
    aug = [a.data[i] | (b.get(i) << cols) for i in range(a.rows)]
    pivots = []  # (row index in echelon order, pivot column)
    r = 0
    for col in range(cols):
        pivot = None
        for i in range(r, len(aug)):
            if (aug[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        for i in range(len(aug)):
            if i != r and ((aug[i] >> col) & 1):
                aug[i] ^= aug[r]
        pivots.append((r, col))
        r += 1
    for i in range(r, len(aug)):
        if aug[i]:  # only the rhs bit can remain: 0 = 1, inconsistent
            return None
    x = 0
    for i, col in pivots:
        if (aug[i] >> cols) & 1:
            x |= 1 << col
    return BitVector(cols, x)


class Echelon:
    """Incremental GF(2) row space with combination tracking.

    Each inserted row gets a tag bit; reduce() reports which tagged rows
    combine to the removed part of a vector.  Used for stabilizer
    membership checks and the readout basis-building loop.
    """

    def __init__(self) -> None:
        self._table = {}  # pivot bit -> (row, combo)
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._table)

    def reduce(self, v: int) -> tuple:
        """Reduce v against the stored rows; returns (residual, combo)."""
        combo = 0
        while v:
            p = v.bit_length() - 1
            entry = self._table.get(p)
            if entry is None:
                break
            v ^= entry[0]
            combo ^= entry[1]
        return v, combo

    def add(self, v: int) -> bool:
        """Insert v if it extends the span; returns True on rank increase."""
        tag = self._count
        self._count += 1
        residual, combo = self.reduce(v)
        if residual == 0:
            return False
        self._table[residual.bit_length() - 1] = (residual, combo | (1 << tag))
        return True

    def membership(self, v: int):
        """Return the combo expressing v over inserted rows, or None."""
        residual, combo = self.reduce(v)
        if residual:
            return None
        return combo


def quad_char_sum(u: BitMatrix, d: BitVector) -> CharSum:
    """Exact character sum S = sum_x (-1)^(x^T u x + d.x) over x in F2^n.

    u must be strictly upper triangular (the quadratic form has no
    diagonal: x_i^2 terms belong in d).  Evaluated by eliminating one
    variable at a time, which keeps the computation polynomial in n.
    """
    n = d.n
    if u.rows != n or u.cols != n:
        raise ShapeError(f"form is {u.rows}x{u.cols} but vector has {d.n} bits")
    if not u.is_strictly_upper():
        raise ShapeError("quadratic form must be strictly upper triangular")

    # Symmetric adjacency view of the coupling terms, no diagonal.
    adj = [0] * n
    for i in range(n):
        r = u.data[i]
        while r:
            j = (r & -r).bit_length() - 1
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            r &= r - 1

    lin = d.bits
    const = 0
    active = _mask(n)
    exponent = 0

    while active:
        i = (active & -active).bit_length() - 1
        active ^= 1 << i
        partners = adj[i] & active
        d_i = (lin >> i) & 1
        if partners == 0:
            if d_i:
                return CharSum.ZERO
            exponent += 1
            continue
        # Summing over x_i forces the affine constraint partners . x = d_i
        # and contributes a factor of 2.
        exponent += 1
        j = (partners & -partners).bit_length() - 1
        active ^= 1 << j
        subst = partners ^ (1 << j)  # x_j = d_i + sum over subst
        lin_j = (lin >> j) & 1
        # Substitute into the linear term of x_j.
        if lin_j:
            const ^= d_i
            lin ^= subst
        # Substitute into every remaining coupling x_j x_k.
        couplings = adj[j] & active
        k_bits = couplings
        while k_bits:
            k = (k_bits & -k_bits).bit_length() - 1
            k_bits &= k_bits - 1
            adj[j] ^= 1 << k
            adj[k] ^= 1 << j
            if d_i:
                lin ^= 1 << k
            m_bits = subst
            while m_bits:
                m = (m_bits & -m_bits).bit_length() - 1
                m_bits &= m_bits - 1
                if m == k:
                    lin ^= 1 << k  # x_k^2 collapses to x_k
                else:
                    adj[m] ^= 1 << k
                    adj[k] ^= 1 << m

    return CharSum(-1 if const else 1, exponent)
