"""Exact integer matrix algebra.

Smith normal form with unimodular transforms, integer kernels and cokernel
presentations. All entries are Python ``int`` so nothing overflows, which
matters because SNF pivoting can grow entries even for 0/1 inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SnfResult",
    "DimensionError",
    "snf",
    "kernel_basis",
    "cokernel_presentation",
    "invariant_factors_via_minors",
    "determinant",
]


class DimensionError(ValueError):
    """Raised when a matrix is too large for a combinatorial routine."""


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match rows * cols")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        data = [[int(x) for x in r] for r in rows]
        if not data or not data[0]:
            raise ValueError("matrix must be at least 1x1")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), ncols, tuple(x for r in data for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        """Matrix whose columns are the given vectors; an empty list gives a zero column."""
        if not columns:
            return cls.zeros(nrows, 1)
        return cls.from_rows([[c[i] for c in columns] for i in range(nrows)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_lists(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)]
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector)) for i in range(self.rows))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()})"


@dataclass(frozen=True)
class SnfResult:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d != 0)


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = M.to_lists()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def snf(M: IntMatrix) -> SnfResult:
    """Smith normal form of ``M``.

    Pivots on the entry of least absolute value in the active block and
    clears its row and column by Euclidean steps. If some remaining entry is
    not divisible by the pivot its row is folded into the pivot row and the
    block is reduced again, so the divisibility chain comes out directly.
    """
    m, n = M.rows, M.cols
    a = M.to_lists()
    u = IntMatrix.identity(m).to_lists()
    v = IntMatrix.identity(n).to_lists()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col_dst += q * col_src
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in v:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                add_row(t, i, -q)
                dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                add_col(t, j, -q)
                dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    factors = tuple(a[i][i] for i in range(min(m, n)))
    return SnfResult(
        U=IntMatrix.from_rows(u),
        D=IntMatrix.from_rows(a),
        V=IntMatrix.from_rows(v),
        factors=factors,
    )


def kernel_basis(M: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel ``{x in Z^cols : M x = 0}``.

    These are the columns of ``V`` sitting over zero (or absent) diagonal
    entries of ``D``; unimodularity of ``V`` makes them a lattice basis,
    not just a rational one.
    """
    res = snf(M)
    return [res.V.column(j) for j in range(M.cols) if j >= len(res.factors) or res.factors[j] == 0]


def cokernel_presentation(M: IntMatrix):
    """The group ``Z^rows / M Z^cols`` with the columns of ``M`` as relations."""
    from ckdual.abgroup import PresentedGroup

    return PresentedGroup(M.rows, M)


def _minors_gcd(M: IntMatrix, k: int) -> int:
    g = 0
    for rows in combinations(range(M.rows), k):
        for cols in combinations(range(M.cols), k):
            sub = IntMatrix.from_rows([[M[i, j] for j in cols] for i in rows])
            g = gcd(g, determinant(sub))
            if g == 1:
                return 1
    return g


def invariant_factors_via_minors(M: IntMatrix, max_dim: int = 6) -> tuple[int, ...]:
    """Invariant factors from determinantal divisors: ``d_k = g_k / g_(k-1)``.

    Independent of :func:`snf`; only meant as a cross-check on small matrices.
    """
    if M.rows > max_dim or M.cols > max_dim:
        raise DimensionError(f"minor enumeration limited to {max_dim}x{max_dim}, got {M.rows}x{M.cols}")
    out = []
    prev = 1
    for k in range(1, min(M.rows, M.cols) + 1):
        g = _minors_gcd(M, k)
        if g == 0:
            out.extend([0] * (min(M.rows, M.cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return tuple(out)
