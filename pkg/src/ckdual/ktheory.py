"""Matrix constructions and the K/Ext invariant sheet of ``O_A`` and its reciprocal dual.

Conventions
-----------
* ``K_0(O_A) = Z^N / (I - A^t) Z^N`` with unit class the image of the
  all-ones vector (the classical Cuntz-Krieger unit ``sum [S_i S_i^*]``;
  this is an assumption taken from background, not derived here).
* ``K_1(O_A) = ker(I - A^t)``.
* ``Ext_w^1(O_A) = Z^N / (I - A) Z^N`` and, by the UCT splitting,
  ``Ext_w^0(O_A) = Free(K_0) (+) Tor(K_1)``.
* ``Ext_s^1(O_A) = Z^N / (I - hatA) Z^N`` pointed by the class of
  ``(I - A) e_1`` (this is ``iota(1)``), and ``Ext_s^0(O_A) = ker(A_T)``.

``ker(A_T)`` is the same lattice as ``{x in ker(I - A) : sum(x) = 0}``; the
literal ``(N+1) x N`` matrix is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from ckdual.abgroup import (
    FgAbGroup,
    GroupElement,
    PresentedGroup,
    direct_sum,
    element_order,
    free_part,
    quotient_by,
    torsion_part,
)
from ckdual.intlinalg import IntMatrix, kernel_basis

__all__ = [
    "AdmissibilityError",
    "BadEntry",
    "NotIrreducible",
    "PermutationMatrix",
    "TruncationTooSmall",
    "AdjacencyMatrix",
    "InvariantSheet",
    "DualityReport",
    "check_admissible",
    "build_hatA",
    "build_AT",
    "build_Ak",
    "build_tildeAinfty",
    "build_hatAinfty",
    "invariant_sheet",
    "reciprocal_kdata",
    "toeplitz_kdata",
    "verify_duality_sheet",
    "chi",
    "w_invariant",
]


class AdmissibilityError(ValueError):
    """Input matrix is not an irreducible non-permutation 0/1 matrix."""


class BadEntry(AdmissibilityError):
    pass


class NotIrreducible(AdmissibilityError):
    pass


class PermutationMatrix(AdmissibilityError):
    pass


class TruncationTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class AdjacencyMatrix:
    """A certified irreducible, non-permutation 0/1 matrix. Build with :func:`check_admissible`."""

    matrix: IntMatrix

    @property
    def N(self) -> int:
        return self.matrix.rows

    def __getitem__(self, ij):
        return self.matrix[ij]

    def to_lists(self):
        return self.matrix.to_lists()

    @property
    def T(self) -> "AdjacencyMatrix":
        return AdjacencyMatrix(self.matrix.T)


def _reachable(adj: list[list[int]], start: int, reverse: bool = False) -> set[int]:
    n = len(adj)
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        for j in range(n):
            edge = adj[j][i] if reverse else adj[i][j]
            if edge and j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def check_admissible(A) -> AdjacencyMatrix:
    """Certify a square 0/1 matrix as irreducible and not a permutation matrix.

    Raises
    ------
    BadEntry
        Non-square input or an entry outside ``{0, 1}``.
    NotIrreducible
        The graph ``i -> j iff A(i, j) = 1`` is not strongly connected; the
        message names a pair of vertices with no path between them.
    PermutationMatrix
        Every row and every column holds exactly one 1.
    """
    if isinstance(A, AdjacencyMatrix):
        return A
    M = A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)
    if M.rows != M.cols:
        raise BadEntry(f"matrix must be square, got {M.rows}x{M.cols}")
    bad = [(i, j) for i in range(M.rows) for j in range(M.cols) if M[i, j] not in (0, 1)]
    if bad:
        i, j = bad[0]
        raise BadEntry(f"entry ({i + 1},{j + 1}) = {M[i, j]} is not 0 or 1")
    rows = M.to_lists()
    if M.rows == 1 and rows[0][0] == 0:
        raise NotIrreducible("a single vertex without a loop lies on no cycle")
    fwd = _reachable(rows, 0)
    if len(fwd) < M.rows:
        j = min(set(range(M.rows)) - fwd)
        raise NotIrreducible(f"no path from vertex 1 to vertex {j + 1}")
    back = _reachable(rows, 0, reverse=True)
    if len(back) < M.rows:
        j = min(set(range(M.rows)) - back)
        raise NotIrreducible(f"no path from vertex {j + 1} to vertex 1")
    if all(sum(r) == 1 for r in rows) and all(sum(M.column(j)) == 1 for j in range(M.cols)):
        raise PermutationMatrix("every row and column has exactly one 1")
    return AdjacencyMatrix(M)


def _as_matrix(A) -> IntMatrix:
    return A.matrix if isinstance(A, AdjacencyMatrix) else check_admissible(A).matrix


def build_hatA(A) -> IntMatrix:
    """``A + R_1 - A R_1`` where ``R_1`` has ones in its first row only.

    Row 1 is ``A(1, .) + 1 - A(1, 1)`` and row ``i >= 2`` is
    ``A(i, .) - A(i, 1)``, so entries lie in ``{-1, 0, 1, 2}``; they are 0/1
    exactly when ``A(1, 1) = 1`` and every row with ``A(i, 1) = 1`` is all ones.
    """
    M = _as_matrix(A)
    n = M.rows
    R1 = IntMatrix.from_rows([[1 if i == 0 else 0 for _ in range(n)] for i in range(n)])
    return M + R1 - M @ R1


def build_AT(A) -> IntMatrix:
    """The ``(N+1) x N`` matrix with a row of ``-1`` stacked over ``I - A``."""
    M = _as_matrix(A)
    n = M.rows
    I_minus = IntMatrix.identity(n) - M
    return IntMatrix.from_rows([[-1] * n] + I_minus.to_lists())


def build_Ak(A, k: int) -> IntMatrix:
    """``(N+k) x (N+k)`` matrix with ``A`` in the top-left block and ones elsewhere."""
    if k < 1:
        raise ValueError("k must be at least 1")
    M = _as_matrix(A)
    n = M.rows
    return IntMatrix.from_rows([[M[i, j] if i < n and j < n else 1 for j in range(n + k)] for i in range(n + k)])


def build_tildeAinfty(A, m: int) -> IntMatrix:
    """Top-left ``m x m`` truncation of the infinite Exel-Laca matrix extending ``A`` by ones."""
    M = _as_matrix(A)
    if m <= M.rows:
        raise TruncationTooSmall(f"truncation m={m} must exceed N={M.rows}")
    return IntMatrix.from_rows([[M[i, j] if i < M.rows and j < M.rows else 1 for j in range(m)] for i in range(m)])


def build_hatAinfty(A, m: int) -> IntMatrix:
    """Top-left ``m x m`` truncation of the infinite matrix presenting the reciprocal dual.

    Blocks (1-based): ``A^t`` on ``i, j <= N``; column ``N+1`` is ones for
    ``i <= N``; row ``N+1`` is all ones; rows ``i >= N+2`` are ones in
    columns ``j <= N+1`` and zero beyond.
    """
    M = _as_matrix(A)
    n = M.rows
    if m < n + 2:
        raise TruncationTooSmall(f"truncation m={m} must be at least N+2={n + 2}")

    def entry(i, j):  # 1-based
        if i <= n and j <= n:
            return M[j - 1, i - 1]
        if i <= n:
            return 1 if j == n + 1 else 0
        if i == n + 1:
            return 1
        return 1 if j <= n + 1 else 0

    return IntMatrix.from_rows([[entry(i, j) for j in range(1, m + 1)] for i in range(1, m + 1)])


def chi(k0: FgAbGroup, k1: FgAbGroup) -> int:
    return k0.free_rank - k1.free_rank


def w_invariant(unit: GroupElement) -> int:
    """``rank K_0 - rank(K_0 / Z[1])``: 1 iff the unit class has infinite order."""
    return unit.owner.free_rank - quotient_by(unit).free_rank


@dataclass(frozen=True)
class InvariantSheet:
    """K-theory and Ext data of ``O_A``; the ``exts`` fields are the K-data of the dual."""

    N: int
    k0: FgAbGroup
    unit_class: GroupElement
    k1: FgAbGroup
    exts1: FgAbGroup
    iota_class: GroupElement
    exts0: FgAbGroup
    extw1: FgAbGroup
    extw0: FgAbGroup
    chi_oa: int
    chi_hat: int
    w_oa: int
    w_hat: int
    k1_alt_rank: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "K0": str(self.k0),
            "K0_group": self.k0.to_dict(),
            "unit": self.unit_class.to_dict(),
            "K1": str(self.k1),
            "K1_group": self.k1.to_dict(),
            "Ext_s^1": str(self.exts1),
            "Ext_s^1_group": self.exts1.to_dict(),
            "iota": self.iota_class.to_dict(),
            "iota_order": _order_str(element_order(self.iota_class)),
            "Ext_s^0": str(self.exts0),
            "Ext_s^0_group": self.exts0.to_dict(),
            "Ext_w^1": str(self.extw1),
            "Ext_w^0": str(self.extw0),
            "chi": self.chi_oa,
            "chi_hat": self.chi_hat,
            "w": self.w_oa,
            "w_hat": self.w_hat,
        }


def _order_str(o) -> str:
    return "inf" if o == inf else str(o)


def invariant_sheet(A) -> InvariantSheet:
    """Assemble the full invariant sheet of ``O_A`` and its reciprocal dual."""
    adj = check_admissible(A)
    M = adj.matrix
    n = M.rows
    I = IntMatrix.identity(n)
    ones = (1,) * n
    e1 = (1,) + (0,) * (n - 1)

    k0_pres = PresentedGroup(n, I - M.T)
    k0 = k0_pres.group
    unit = k0_pres.element(ones)
    k1 = FgAbGroup(len(kernel_basis(I - M.T)))

    hatA = build_hatA(adj)
    exts1_pres = PresentedGroup(n, I - hatA)
    exts1 = exts1_pres.group
    iota = exts1_pres.element((I - M).apply(e1))
    exts0 = FgAbGroup(len(kernel_basis(build_AT(adj))))

    extw1 = PresentedGroup(n, I - M).group
    extw0 = direct_sum(free_part(k0), torsion_part(k1))

    return InvariantSheet(
        N=n,
        k0=k0,
        unit_class=unit,
        k1=k1,
        exts1=exts1,
        iota_class=iota,
        exts0=exts0,
        extw1=extw1,
        extw0=extw0,
        chi_oa=chi(k0, k1),
        chi_hat=chi(exts1, exts0),
        w_oa=w_invariant(unit),
        w_hat=w_invariant(iota),
        k1_alt_rank=len(kernel_basis(I - M)),
    )


def reciprocal_kdata(A) -> tuple[FgAbGroup, GroupElement, FgAbGroup]:
    """``(K_0, [1], K_1)`` of the reciprocal dual, i.e. ``(Ext_s^1, iota(1), Ext_s^0)`` of ``O_A``."""
    s = invariant_sheet(A)
    return s.exts1, s.iota_class, s.exts0


@dataclass(frozen=True)
class ToeplitzKData:
    """K-data of the Toeplitz side; ``epsilon`` records the duality sign instead of negating the unit."""

    k0: FgAbGroup
    unit: GroupElement
    k1: FgAbGroup
    epsilon: int = -1

    def __iter__(self):
        return iter((self.k0, self.unit, self.k1))


def toeplitz_kdata(A) -> ToeplitzKData:
    """K-data of ``O_{A^t infinity}`` (equivalently ``T_{A^t}``) read off the strong Ext groups of ``O_A``.

    The unit class is reported as ``iota(1)`` with ``epsilon = -1`` carried
    alongside; pointed comparisons absorb the sign anyway.
    """
    s = invariant_sheet(A)
    return ToeplitzKData(s.exts1, s.iota_class, s.exts0, -1)


@dataclass
class DualityReport:
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]


def verify_duality_sheet(A, sheet: InvariantSheet | None = None) -> DualityReport:
    """Consistency identities between ``O_A`` and its reciprocal dual."""
    s = sheet or invariant_sheet(A)
    iota_finite = element_order(s.iota_class) != inf
    checks = {
        "chi(O_A) = 0": s.chi_oa == 0,
        "chi(hat O_A) = 1": s.chi_hat == 1,
        "w(O_A) + w(hat O_A) = 1": s.w_oa + s.w_hat == 1,
        "Ext_w^1 = Ext_s^1 / <iota(1)>": s.extw1 == quotient_by(s.iota_class),
        "rank Ext_s^0 = rank Ext_w^0 - [iota torsion]": s.exts0.free_rank == s.extw0.free_rank - (1 if iota_finite else 0),
        "Free(K_0) = K_1": free_part(s.k0) == s.k1,
        "Free(Ext_s^1) = Ext_s^0 (+) Z": free_part(s.exts1) == direct_sum(s.exts0, FgAbGroup(1)),
        "rank ker(I - A^t) = rank ker(I - A)": s.k1.free_rank == s.k1_alt_rank,
    }
    return DualityReport(checks)
