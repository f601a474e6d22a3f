"""Truncated Fock-space representations and exact relation checks.

The Fock space of a 0/1 matrix ``B`` is spanned by the vacuum and the words
``(i_1, ..., i_n)`` with ``B(i_k, i_(k+1)) = 1``. Keeping only words of length
at most ``L`` gives a finite basis on which the creation operators ``T_i``
act as 0/1 matrices; creating past length ``L`` returns zero.

Truncation breaks relations only near the top level. Every operator built
here carries its *headroom*: the largest amount a product of generators
raises word length at any intermediate step. A relation between operators
of headroom ``h`` is exact on words of length ``<= L - h``, and that is the
subspace every check restricts to. Basis words are ordered shortlex, so
this interior subspace is a leading block of indices.

All operator entries are integers held in ``int64`` sparse matrices; the
only products formed are of partial isometries with 0/1 entries, so values
stay tiny and arithmetic is exact. Rational coefficients only enter the
spectral-gap check, which works on sparse vectors of ``Fraction``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from ckdual.intlinalg import IntMatrix
from ckdual.ktheory import build_Ak, build_hatAinfty, check_admissible

__all__ = [
    "FockBasis",
    "SparseOp",
    "MonomialExpr",
    "FockRep",
    "ReciprocalGenerators",
    "RelationRecord",
    "FockReport",
    "HeadroomError",
    "SamplingDepthError",
    "enumerate_basis",
    "creation_op",
    "interior_projector",
    "verify_relation",
    "is_projection_on",
    "is_nonzero_psd_on",
    "verify_toeplitz",
    "verify_oainf",
    "build_reciprocal_generators",
    "verify_thm57",
    "verify_lemma56",
    "ordering_matrix",
    "gauge_gradings",
    "phase_conjugate",
    "phase_conjugate_float",
    "vacuum_state",
    "spectral_gap_check",
]


class HeadroomError(ValueError):
    """Requested depth leaves no headroom-safe subspace for the relations."""


class SamplingDepthError(ValueError):
    """Sampled monomials are too long for the truncation depth."""


# ---------------------------------------------------------------- basis


class FockBasis:
    """Admissible words of length ``<= L`` over a 0/1 matrix, in shortlex order.

    Words of length ``n + 1`` are grouped by first letter; inside a group
    they follow the order of their tails at length ``n``. Only first letters
    are stored per level, the words themselves are rebuilt on demand.
    """

    def __init__(self, matrix, depth: int, n_low: int | None = None):
        if depth < 1:
            raise ValueError("depth must be at least 1")
        M = matrix.matrix if hasattr(matrix, "matrix") else matrix
        M = M if isinstance(M, IntMatrix) else IntMatrix.from_rows(M)
        self.matrix = M
        self.size = M.rows
        self.depth = depth
        self.n_low = self.size if n_low is None else n_low
        B = np.array(M.to_lists(), dtype=bool)

        first = [np.array([-1], dtype=np.int64)]
        # tail_pos[n][a][t] = position of word a.t inside group a at level n+1, or -1
        self._tail_pos: list[list[np.ndarray]] = []
        self._group_start: list[np.ndarray] = [np.zeros(1, dtype=np.int64)]
        for n in range(depth):
            prev = first[-1]
            groups, pos, starts = [], [], []
            start = 0
            for a in range(self.size):
                mask = np.ones(len(prev), dtype=bool) if n == 0 else B[a, prev]
                p = np.cumsum(mask) - 1
                p[~mask] = -1
                pos.append(p)
                starts.append(start)
                cnt = int(mask.sum())
                groups.append(np.full(cnt, a, dtype=np.int64))
                start += cnt
            first.append(np.concatenate(groups) if groups else np.zeros(0, dtype=np.int64))
            self._tail_pos.append(pos)
            self._group_start.append(np.array(starts, dtype=np.int64))
        self._first = first
        counts = [len(f) for f in first]
        self.level_counts = tuple(counts)
        self.offsets = tuple(int(x) for x in np.concatenate([[0], np.cumsum(counts)]))
        self.dim = self.offsets[-1]

    def __len__(self) -> int:
        return self.dim

    def count_upto(self, length: int) -> int:
        """Number of words of length ``<= length`` (the interior dimension)."""
        length = min(max(length, -1), self.depth)
        return self.offsets[length + 1]

    @cached_property
    def lengths(self) -> np.ndarray:
        return np.repeat(np.arange(self.depth + 1), self.level_counts)

    def _tail_index(self, n: int) -> np.ndarray:
        """For each word at level ``n >= 1``, the level-``n-1`` index of its tail."""
        prev_count = self.level_counts[n - 1]
        out = np.empty(self.level_counts[n], dtype=np.int64)
        for a in range(self.size):
            p = self._tail_pos[n - 1][a]
            tails = np.nonzero(p >= 0)[0]
            s = self._group_start[n][a]
            out[s:s + len(tails)] = tails
        assert prev_count >= 0
        return out

    def letter_counts(self, predicate) -> np.ndarray:
        """Per basis word, how many of its letters (0-based) satisfy ``predicate``."""
        out = [np.zeros(1, dtype=np.int64)]
        for n in range(1, self.depth + 1):
            tail = self._tail_index(n)
            hit = np.array([bool(predicate(a)) for a in range(self.size)], dtype=np.int64)
            out.append(hit[self._first[n]] + out[-1][tail])
        return np.concatenate(out)

    def word(self, idx: int) -> tuple[int, ...]:
        """The word (1-based letters) at basis position ``idx``."""
        n = int(np.searchsorted(self.offsets, idx, side="right") - 1)
        local = idx - self.offsets[n]
        letters = []
        while n > 0:
            a = int(self._first[n][local])
            letters.append(a + 1)
            local = int(np.nonzero(self._tail_pos[n - 1][a] == local - self._group_start[n][a])[0][0])
            n -= 1
        return tuple(letters)

    @property
    def words(self) -> list[tuple[int, ...]]:
        return [self.word(i) for i in range(self.dim)]

    def index(self, word: Sequence[int]) -> int:
        """Basis position of a word of 1-based letters; ``KeyError`` if not admissible."""
        word = tuple(word)
        n = len(word)
        if n > self.depth:
            raise KeyError(word)
        local = 0
        for m in range(1, n + 1):
            a = word[n - m] - 1
            if not 0 <= a < self.size:
                raise KeyError(word)
            p = int(self._tail_pos[m - 1][a][local])
            if p < 0:
                raise KeyError(word)
            local = int(self._group_start[m][a]) + p
        return self.offsets[n] + local

    def creation_map(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Source and target basis indices of ``T_i`` (1-based letter)."""
        a = i - 1
        src, dst = [], []
        for n in range(self.depth):
            p = self._tail_pos[n][a]
            tails = np.nonzero(p >= 0)[0]
            src.append(self.offsets[n] + tails)
            dst.append(self.offsets[n + 1] + self._group_start[n + 1][a] + p[tails])
        return np.concatenate(src), np.concatenate(dst)


def enumerate_basis(B, L: int, n_low: int | None = None) -> FockBasis:
    return FockBasis(B, L, n_low)


# ---------------------------------------------------------------- operators


@dataclass(frozen=True)
class SparseOp:
    """Integer sparse operator with truncation bookkeeping.

    ``headroom`` bounds how far above its input length the operator's
    monomials ever reach; ``net_max``/``net_min`` bound their overall
    change in length. Products and sums propagate these bounds.
    """

    mat: sp.csr_array
    headroom: int = 0
    net_max: int = 0
    net_min: int = 0

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __matmul__(self, other: "SparseOp") -> "SparseOp":
        return SparseOp(
            (self.mat @ other.mat).tocsr(),
            max(other.headroom, other.net_max + self.headroom),
            self.net_max + other.net_max,
            self.net_min + other.net_min,
        )

    def _combine(self, other: "SparseOp", mat) -> "SparseOp":
        return SparseOp(
            mat.tocsr(),
            max(self.headroom, other.headroom),
            max(self.net_max, other.net_max),
            min(self.net_min, other.net_min),
        )

    def __add__(self, other: "SparseOp") -> "SparseOp":
        return self._combine(other, self.mat + other.mat)

    def __sub__(self, other: "SparseOp") -> "SparseOp":
        return self._combine(other, self.mat - other.mat)

    def __neg__(self) -> "SparseOp":
        return SparseOp(-self.mat, self.headroom, self.net_max, self.net_min)

    def __rmul__(self, c: int) -> "SparseOp":
        return SparseOp((int(c) * self.mat).tocsr(), self.headroom, self.net_max, self.net_min)

    @property
    def adj(self) -> "SparseOp":
        # suffixes of the adjoint are adjoints of prefixes: excess h - net per monomial
        return SparseOp(self.mat.T.tocsr(), max(0, self.headroom - self.net_min), -self.net_min, -self.net_max)

    def equals(self, other: "SparseOp") -> bool:
        d = (self.mat - other.mat).tocsr()
        d.eliminate_zeros()
        return d.nnz == 0

    @cached_property
    def _csc(self):
        return self.mat.tocsc()

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse vector ``{index: scalar}``; scalars may be ``Fraction``."""
        csc = self._csc
        out: dict = {}
        for j, c in vec.items():
            for p in range(csc.indptr[j], csc.indptr[j + 1]):
                r = int(csc.indices[p])
                out[r] = out.get(r, 0) + c * int(csc.data[p])
        return {k: v for k, v in out.items() if v}


def _identity(dim: int) -> SparseOp:
    return SparseOp(sp.identity(dim, dtype=np.int64, format="csr"))


def _diag(values: np.ndarray) -> SparseOp:
    return SparseOp(sp.diags_array(values.astype(np.int64), format="csr"))


def creation_op(basis: FockBasis, i: int) -> SparseOp:
    """``T_i``: prepend letter ``i`` when admissible and below the top level, else 0."""
    if not 1 <= i <= basis.size:
        raise IndexError(f"generator {i} out of range 1..{basis.size}")
    src, dst = basis.creation_map(i)
    mat = sp.csr_array((np.ones(len(src), dtype=np.int64), (dst, src)), shape=(basis.dim, basis.dim))
    return SparseOp(mat, headroom=1, net_max=1, net_min=1)


def interior_projector(basis: FockBasis, h: int) -> SparseOp:
    """Orthogonal projection onto words of length ``<= L - h``."""
    if not 0 <= h <= basis.depth:
        raise ValueError("headroom must lie in [0, L]")
    vals = np.zeros(basis.dim, dtype=np.int64)
    vals[: basis.count_upto(basis.depth - h)] = 1
    return _diag(vals)


def _interior_cols(op_mat, basis: FockBasis, h: int):
    return op_mat.tocsc()[:, : basis.count_upto(basis.depth - h)]


def verify_relation(lhs: SparseOp, rhs: SparseOp, basis: FockBasis, h: int | None = None) -> bool:
    """``(lhs - rhs) P_h == 0`` exactly, with ``P_h`` the interior projector."""
    if h is None:
        h = max(lhs.headroom, rhs.headroom)
    d = _interior_cols(lhs.mat - rhs.mat, basis, h)
    d.eliminate_zeros()
    return d.nnz == 0


def is_projection_on(op: SparseOp, basis: FockBasis, h: int) -> bool:
    """The compression of ``op`` to the interior is a self-adjoint idempotent."""
    cut = basis.count_upto(basis.depth - h)
    c = op.mat.tocsr()[:cut, :cut]
    return _zero(c - c.T) and _zero(c @ c - c)


def _zero(m) -> bool:
    m = sp.csr_array(m)
    m.eliminate_zeros()
    return m.nnz == 0


def _is_psd_exact(m) -> bool:
    """Exact PSD test for a small symmetric integer matrix (symmetric Gaussian elimination)."""
    a = [[Fraction(int(x)) for x in row] for row in np.asarray(m.todense())]
    n = len(a)
    alive = list(range(n))
    while alive:
        piv = next((i for i in alive if a[i][i] > 0), None)
        for i in alive:
            if a[i][i] < 0:
                return False
            if a[i][i] == 0 and any(a[i][j] for j in alive):
                return False
        if piv is None:
            return True
        alive.remove(piv)
        p = a[piv][piv]
        for i in alive:
            f = a[i][piv] / p
            if f:
                for j in alive:
                    a[i][j] -= f * a[piv][j]
    return True


def is_nonzero_psd_on(op: SparseOp, basis: FockBasis, h: int) -> bool:
    """Compression to the interior is nonzero and positive semidefinite.

    Uses the projection test when it applies (every difference of commuting
    projections met here is one) and an exact elimination otherwise.
    """
    cut = basis.count_upto(basis.depth - h)
    c = op.mat.tocsr()[:cut, :cut]
    c.eliminate_zeros()
    if c.nnz == 0 or not _zero(c - c.T):
        return False
    if _zero(c @ c - c):
        return True
    support = np.unique(c.nonzero()[0])
    if len(support) > 400:
        raise ValueError("exact PSD check limited to 400 active rows")
    return _is_psd_exact(c[support][:, support])


@dataclass(frozen=True)
class MonomialExpr:
    """A word in generators, read as an operator product (rightmost letter acts first).

    Letters are ``("c", i)`` for ``S_i``, ``("a", i)`` for ``S_i^*``,
    ``("PN",)`` and ``("eA",)`` for the two distinguished projections.
    """

    letters: tuple

    @property
    def headroom(self) -> int:
        h = run = 0
        for letter in reversed(self.letters):
            run += {"c": 1, "a": -1}.get(letter[0], 0)
            h = max(h, run)
        return h

    @property
    def net(self) -> int:
        return sum({"c": 1, "a": -1}.get(letter[0], 0) for letter in self.letters)

    def evaluate(self, rep: "FockRep") -> SparseOp:
        out = rep.identity
        for letter in self.letters:
            kind = letter[0]
            if kind == "c":
                out = out @ rep.S(letter[1])
            elif kind == "a":
                out = out @ rep.S(letter[1]).adj
            elif kind == "PN":
                out = out @ rep.P_N
            elif kind == "eA":
                out = out @ rep.e_A
            else:
                raise ValueError(f"unknown letter {letter}")
        return out

    @classmethod
    def from_words(cls, mu: Sequence[int], nu: Sequence[int]) -> "MonomialExpr":
        """``S_mu S_nu^*``."""
        return cls(tuple(("c", i) for i in mu) + tuple(("a", i) for i in reversed(nu)))


class FockRep:
    """Creation operators and standard projections on a truncated Fock space.

    ``n_low`` is the size ``N`` of the original matrix when the basis is
    built on an enlarged matrix ``A_k``; it fixes ``P_N``.
    """

    def __init__(self, matrix, depth: int, n_low: int | None = None):
        self.basis = FockBasis(matrix, depth, n_low)
        self.n_low = self.basis.n_low
        self._gens: dict[int, SparseOp] = {}

    @property
    def size(self) -> int:
        return self.basis.size

    @property
    def depth(self) -> int:
        return self.basis.depth

    def S(self, i: int) -> SparseOp:
        if i not in self._gens:
            self._gens[i] = creation_op(self.basis, i)
        return self._gens[i]

    T = S

    @cached_property
    def identity(self) -> SparseOp:
        return _identity(self.basis.dim)

    @cached_property
    def e_A(self) -> SparseOp:
        vals = np.zeros(self.basis.dim, dtype=np.int64)
        vals[0] = 1
        return _diag(vals)

    def range_proj(self, indices: Iterable[int]) -> SparseOp:
        """``sum_j S_j S_j^*`` over the given generators."""
        out = SparseOp(sp.csr_array((self.basis.dim, self.basis.dim), dtype=np.int64))
        for j in indices:
            out = out + self.S(j) @ self.S(j).adj
        return out

    @cached_property
    def P_N(self) -> SparseOp:
        return self.identity - self.range_proj(range(1, self.n_low + 1))

    def interior(self, h: int) -> SparseOp:
        return interior_projector(self.basis, h)


# ---------------------------------------------------------------- reports


@dataclass
class RelationRecord:
    relation: str
    indices: tuple
    headroom: int
    depth: int
    status: bool
    boundary_fails: bool | None = None

    def to_dict(self) -> dict:
        d = {
            "relation": self.relation,
            "indices": list(self.indices),
            "headroom": self.headroom,
            "depth": self.depth,
            "status": "pass" if self.status else "fail",
        }
        if self.boundary_fails is not None:
            d["boundary_fails"] = self.boundary_fails
        return d


@dataclass
class FockReport:
    suite: str
    records: list[RelationRecord] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def controls(self) -> list[RelationRecord]:
        """Relations designated as negative controls: they must break without the projector."""
        return [r for r in self.records if r.boundary_fails is not None]

    @property
    def ok(self) -> bool:
        return all(r.status for r in self.records) and all(r.boundary_fails for r in self.controls)

    def failures(self) -> list[RelationRecord]:
        return [r for r in self.records if not r.status or r.boundary_fails is False]

    def add(self, relation, indices, headroom, depth, status, boundary_fails=None):
        self.records.append(RelationRecord(relation, tuple(indices), int(headroom), depth, bool(status), boundary_fails))

    def check(self, relation, indices, lhs, rhs, basis, h=None, control=False):
        """Record an equality on the interior.

        With ``control`` the relation is also a negative control: it is
        re-checked at ``h = 0`` and the report only passes if it fails there.
        Relations whose two sides truncate identically hold at every depth
        and are not used as controls.
        """
        h = max(lhs.headroom, rhs.headroom) if h is None else h
        ok = verify_relation(lhs, rhs, basis, h)
        bf = None
        if control:
            bf = not verify_relation(lhs, rhs, basis, 0)
        self.add(relation, indices, h, basis.depth, ok, bf)
        return ok

    def to_list(self) -> list[dict]:
        return [dict(r.to_dict(), suite=self.suite) for r in self.records]

    def to_json(self) -> str:
        return json.dumps(self.to_list(), indent=2)


def _require_depth(L: int, minimum: int, what: str):
    if L < minimum:
        raise HeadroomError(f"{what} needs depth L >= {minimum} (got L={L})")


# ---------------------------------------------------------------- Toeplitz and O_{A infinity}


def verify_toeplitz(A, L: int) -> FockReport:
    """Toeplitz relations of ``T_A`` on its Fock space.

    ``1 = sum_j T_j T_j^* + e_A`` holds even at the top level;
    ``T_i^* T_i = sum_j A(i,j) T_j T_j^* + e_A`` needs headroom 1, and the
    report also records that it fails without the interior projector.
    """
    _require_depth(L, 2, "the Toeplitz suite")
    adj = check_admissible(A)
    n = adj.N
    rep = FockRep(adj, L)
    rpt = FockReport("toeplitz")
    rpt.check("1 = sum T_j T_j* + e_A", (), rep.identity, rep.range_proj(range(1, n + 1)) + rep.e_A, rep.basis)
    for i in range(1, n + 1):
        rhs = rep.range_proj([j for j in range(1, n + 1) if adj[i - 1, j - 1]]) + rep.e_A
        rpt.check("T_i* T_i = sum A(i,j) T_j T_j* + e_A", (i,), rep.S(i).adj @ rep.S(i), rhs, rep.basis, control=True)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                rpt.check("T_i* T_j = 0", (i, j), rep.S(i).adj @ rep.S(j), 0 * rep.identity, rep.basis, h=0)
    rpt.check("e_A rank one", (), rep.e_A, rep.e_A, rep.basis)
    rpt.records[-1].status = int(rep.e_A.mat.sum()) == 1 and int(rep.e_A.mat[0, 0]) == 1
    return rpt


def verify_oainf(A, k: int, L: int) -> FockReport:
    """Defining relations of ``O_{A infinity}`` for its first ``N + k`` generators.

    Realized on the Fock space of ``A_k`` with ``S_i = T_i`` and
    ``P_(N+k) = e_(A_k)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    _require_depth(L, 3, "the O_A-infinity suite")
    adj = check_admissible(A)
    n = adj.N
    rep = FockRep(build_Ak(adj, k), L, n_low=n)
    b = rep.basis
    rpt = FockReport("oainf")
    top = n + k
    for m in range(1, top + 1):
        ok = is_projection_on(rep.range_proj(range(1, m + 1)), b, 0)
        rpt.add("sum_{j<=m} S_j S_j* <= 1", (m,), 0, L, ok)
    low = rep.range_proj(range(1, n + 1))
    for i in range(1, n + 1):
        rhs = rep.range_proj([j for j in range(1, n + 1) if adj[i - 1, j - 1]]) + rep.identity - low
        rpt.check("S_i* S_i = sum A(i,j) S_j S_j* + 1 - sum S_j S_j*", (i,), rep.S(i).adj @ rep.S(i), rhs, b, control=True)
    for i in range(n + 1, top + 1):
        rpt.check("S_i* S_i = 1", (i,), rep.S(i).adj @ rep.S(i), rep.identity, b, control=True)
    rpt.check("sum_{j<=N+k} S_j S_j* + P_(N+k) = 1", (), rep.range_proj(range(1, top + 1)) + rep.e_A, rep.identity, b, h=0)
    diff = rep.P_N - rep.S(n + 1) @ rep.S(n + 1).adj
    rpt.add("P_N > S_(N+1) S_(N+1)*", (n + 1,), 1, L, is_nonzero_psd_on(diff, b, 1))
    return rpt


# ---------------------------------------------------------------- reciprocal dual


@dataclass
class ReciprocalGenerators:
    """Operators ``R_i, S, P_N, p_1, t_i`` realizing the reciprocal dual inside ``O_{A^t infinity}``.

    Indices are 1-based and run up to ``N + k``, the number of generators the
    truncated representation carries.
    """

    rep: FockRep
    N: int
    k: int
    R: dict[int, SparseOp]
    S: SparseOp
    P_N: SparseOp
    p1: SparseOp
    t: dict[int, SparseOp]
    A: IntMatrix

    @property
    def top(self) -> int:
        return self.N + self.k

    @property
    def basis(self) -> FockBasis:
        return self.rep.basis

    def U(self, n: int) -> SparseOp:
        """``S_n S_(N+1)^*`` for ``n > N``."""
        if not self.N < n <= self.top:
            raise IndexError(f"U_n needs N < n <= N+k, got {n}")
        return self.rep.S(n) @ self.rep.S(self.N + 1).adj


def build_reciprocal_generators(A, k: int, L: int) -> ReciprocalGenerators:
    """Generators of the corner ``P_N O_{A^t infinity} P_N`` on the Fock space of ``(A^t)_k``."""
    if k < 2:
        raise IndexError("reciprocal generators need k >= 2 so that S_(N+1) and S_(N+2) exist")
    adj = check_admissible(A)
    n = adj.N
    rep = FockRep(build_Ak(adj.T, k), L, n_low=n)
    Sn1 = rep.S(n + 1)
    R = {i: Sn1 @ rep.S(i) @ Sn1.adj for i in range(1, n + k + 1)}
    S = Sn1 @ rep.P_N
    p1 = R[n + 1].adj @ R[n + 1] - _sum_ops([R[j] @ R[j].adj for j in range(1, n + 1)], rep)
    t = {}
    for i in range(1, n + k + 1):
        if i <= n:
            t[i] = R[i]
        elif i == n + 1:
            t[i] = S
        else:
            t[i] = S.adj @ R[i]
    return ReciprocalGenerators(rep, n, k, R, S, rep.P_N, p1, t, adj.matrix)


def _sum_ops(ops: list[SparseOp], rep: FockRep) -> SparseOp:
    out = SparseOp(sp.csr_array((rep.basis.dim, rep.basis.dim), dtype=np.int64))
    for o in ops:
        out = out + o
    return out


def verify_thm57(A, k: int, L: int, gens: ReciprocalGenerators | None = None) -> FockReport:
    """Universal relations of the reciprocal dual, checked for ``r_i = R_i``, ``s = S``.

    The unit of the corner is ``P_N``. Covers the four relation families of
    the universal presentation, the auxiliary system with ``p_1``, corner
    membership and ``S^* R_n = U_n``.
    """
    if k < 3:
        raise ValueError("k must be at least 3 so that r_(N+1), r_(N+2) and r_(N+3) exist")
    _require_depth(L, 6, "the reciprocal suite")
    g = gens or build_reciprocal_generators(A, k, L)
    b, n, R, S, P_N, p1 = g.basis, g.N, g.R, g.S, g.P_N, g.p1
    rep = g.rep
    rpt = FockReport("reciprocal")
    top = g.top
    low_sum = _sum_ops([R[j] @ R[j].adj for j in range(1, n + 1)], rep)
    RR = R[n + 1].adj @ R[n + 1]
    hmax = 0

    # (1) chain of strict inequalities and equal source projections
    for m in range(1, top + 1):
        diff = RR - _sum_ops([R[j] @ R[j].adj for j in range(1, m + 1)], rep)
        h = max(diff.headroom, RR.headroom)
        hmax = max(hmax, h)
        rpt.add("(1) sum_{j<=m} r_j r_j* < r_(N+1)* r_(N+1)", (m,), h, L, is_nonzero_psd_on(diff, b, h))
    for i in range(n + 2, top + 1):
        rpt.check("(1) r_(N+1)* r_(N+1) = r_i* r_i", (i,), RR, R[i].adj @ R[i], b)
    # (2)
    for i in range(1, n + 1):
        rhs = _sum_ops([R[j] @ R[j].adj for j in range(1, n + 1) if g.A[j - 1, i - 1]], rep) + RR - low_sum
        rpt.check("(2) r_i* r_i = sum A(j,i) r_j r_j* + r_(N+1)* r_(N+1) - sum r_j r_j*", (i,), R[i].adj @ R[i], rhs, b)
    # (3)
    rpt.check("(3) s s* = r_(N+1)* r_(N+1) - sum r_j r_j*", (), S @ S.adj, RR - low_sum, b, control=True)
    rpt.check("(3) s* s = 1 (= P_N)", (), S.adj @ S, P_N, b, control=True)
    # (4)
    rpt.check("(4) s* r_(N+1) = r_(N+1)* r_(N+1)", (), S.adj @ R[n + 1], RR, b)
    rpt.check("(4) s r_(N+1)* = r_(N+1) r_(N+1)*", (), S @ R[n + 1].adj, R[n + 1] @ R[n + 1].adj, b)

    # auxiliary system with p_1
    for i in range(n + 1, top + 1):
        rpt.check("(R1) r_i* r_i = sum_{j<=N} r_j r_j* + p_1", (i,), R[i].adj @ R[i], low_sum + p1, b)
    for i in range(1, n + 1):
        rhs = _sum_ops([R[j] @ R[j].adj for j in range(1, n + 1) if g.A[j - 1, i - 1]], rep) + p1
        rpt.check("(R2) r_i* r_i = sum A(j,i) r_j r_j* + p_1", (i,), R[i].adj @ R[i], rhs, b)
    for m in range(n + 1, top + 1):
        diff = p1 - _sum_ops([R[j] @ R[j].adj for j in range(n + 1, m + 1)], rep)
        h = diff.headroom
        rpt.add("(R3) sum_{N<j<=m} r_j r_j* < p_1", (m,), h, L, is_nonzero_psd_on(diff, b, h))
    rpt.check("(R4) s s* = p_1", (), S @ S.adj, p1, b, control=True)

    # corner membership and the partial isometries U_n
    for i in range(1, top + 1):
        rpt.check("R_i = P_N R_i P_N", (i,), R[i], P_N @ R[i] @ P_N, b)
    rpt.check("S = P_N S P_N", (), S, P_N @ S @ P_N, b)
    for m in range(n + 1, top + 1):
        rpt.check("S* R_n = U_n", (m,), S.adj @ R[m], g.U(m), b, control=True)
    rpt.extra["max_headroom"] = max([hmax] + [r.headroom for r in rpt.records])
    return rpt


def ordering_matrix(gens: ReciprocalGenerators, h: int | None = None) -> np.ndarray:
    """``O(i, j) = 1`` iff ``t_i^* t_i >= t_j t_j^*`` on the interior."""
    t, b = gens.t, gens.basis
    top = gens.top
    src = {i: t[i].adj @ t[i] for i in range(1, top + 1)}
    rng = {j: t[j] @ t[j].adj for j in range(1, top + 1)}
    if h is None:
        h = max(max(o.headroom for o in src.values()), max(o.headroom for o in rng.values()))
    out = np.zeros((top, top), dtype=np.int64)
    for i in range(1, top + 1):
        for j in range(1, top + 1):
            out[i - 1, j - 1] = int(verify_relation(src[i] @ rng[j], rng[j], b, h))
    return out


def verify_lemma56(A, k: int, L: int, gens: ReciprocalGenerators | None = None) -> FockReport:
    """Source/range relations of the ``t_i`` and their ordering matrix versus the infinite matrix corner."""
    if k < 3:
        raise ValueError("k must be at least 3")
    _require_depth(L, 6, "the ordering-matrix suite")
    g = gens or build_reciprocal_generators(A, k, L)
    b, n, t, P_N = g.basis, g.N, g.t, g.P_N
    rep = g.rep
    top = g.top
    rpt = FockReport("lemma56")
    tt = {j: t[j] @ t[j].adj for j in range(1, top + 1)}
    low_sum = _sum_ops([tt[j] for j in range(1, n + 1)], rep)
    for i in range(1, top + 1):
        lhs = t[i].adj @ t[i]
        if i <= n:
            rhs = _sum_ops([tt[j] for j in range(1, n + 1) if g.A[j - 1, i - 1]], rep) + tt[n + 1]
            name = "t_i* t_i = sum A(j,i) t_j t_j* + t_(N+1) t_(N+1)*"
        elif i == n + 1:
            rhs = P_N
            name = "t_(N+1)* t_(N+1) = 1"
        else:
            rhs = low_sum + tt[n + 1]
            name = "t_i* t_i = sum_{j<=N} t_j t_j* + t_(N+1) t_(N+1)*"
        rpt.check(name, (i,), lhs, rhs, b, control=True)
    for m in range(n + 2, top + 1):
        total = low_sum + tt[n + 1] + _sum_ops([tt[j] for j in range(n + 2, m + 1)], rep)
        diff = P_N - total
        rpt.add("1 > sum_{j<=m} t_j t_j*", (m,), diff.headroom, L, is_nonzero_psd_on(diff, b, diff.headroom))

    for j in range(1, top + 1):
        rpt.add("t_j t_j* is a projection", (j,), tt[j].headroom, L, is_projection_on(tt[j], b, tt[j].headroom))
    O = ordering_matrix(g)
    corner = np.array(build_hatAinfty(g.A, top + 1).to_lists(), dtype=np.int64)[:top, :top]
    rpt.extra["ordering"] = O.tolist()
    rpt.extra["hatAinfty_corner"] = corner.tolist()
    for i in range(1, top + 1):
        for j in range(1, top + 1):
            rpt.add("O(i,j) = hatA_inf(i,j)", (i, j), 0, L, O[i - 1, j - 1] == corner[i - 1, j - 1])
    return rpt


# ---------------------------------------------------------------- gauge actions and the vacuum state


def gauge_gradings(basis: FockBasis) -> tuple[SparseOp, SparseOp, SparseOp]:
    """Diagonal operators counting letters: all, those ``<= N``, those ``> N``."""
    n = basis.n_low
    low = basis.letter_counts(lambda a: a < n)
    high = basis.letter_counts(lambda a: a >= n)
    return _diag(low + high), _diag(low), _diag(high)


@dataclass(frozen=True)
class GaussianOp:
    """Operator with Gaussian-integer entries ``re + i * im``."""

    re: sp.csr_array
    im: sp.csr_array

    def equals(self, re, im) -> bool:
        return _zero(self.re - re) and _zero(self.im - im)


def phase_conjugate(op: SparseOp, grading: SparseOp, quarter_turns: int) -> GaussianOp:
    """``U op U^*`` with ``U = i^(quarter_turns * D)`` for the diagonal grading ``D``."""
    coo = op.mat.tocoo()
    d = grading.mat.diagonal()
    e = (quarter_turns * (d[coo.row] - d[coo.col])) % 4
    re_sign = np.select([e == 0, e == 2], [1, -1], 0)
    im_sign = np.select([e == 1, e == 3], [1, -1], 0)
    shape = op.mat.shape
    re = sp.csr_array((coo.data * re_sign, (coo.row, coo.col)), shape=shape)
    im = sp.csr_array((coo.data * im_sign, (coo.row, coo.col)), shape=shape)
    return GaussianOp(re, im)


def phase_conjugate_float(op: SparseOp, grading: SparseOp, t: float) -> sp.csr_array:
    """Floating-point ``e^(itD) op e^(-itD)`` for smoke tests at arbitrary angles."""
    coo = op.mat.tocoo()
    d = grading.mat.diagonal()
    phase = np.exp(1j * t * (d[coo.row] - d[coo.col]))
    return sp.csr_array((coo.data * phase, (coo.row, coo.col)), shape=op.mat.shape)


def vacuum_state(x: SparseOp):
    """``<Omega, x Omega>``, the ground state ``tau o E`` in the Fock picture."""
    return x.mat[0, 0].item() if hasattr(x.mat[0, 0], "item") else x.mat[0, 0]


@dataclass(frozen=True)
class GapSample:
    terms: tuple  # ((coeff, mu, nu), ...)
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs >= self.rhs


def _apply_term(rep: FockRep, mu, nu, vec: dict) -> dict:
    for j in nu:
        vec = rep.S(j).adj.apply(vec)
        if not vec:
            return vec
    for i in reversed(mu):
        vec = rep.S(i).apply(vec)
        if not vec:
            return vec
    return vec


def _apply_poly(rep: FockRep, terms, vec: dict) -> dict:
    out: dict = {}
    for c, mu, nu in terms:
        for idx, v in _apply_term(rep, mu, nu, vec).items():
            out[idx] = out.get(idx, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _inner(u: dict, v: dict):
    return sum((c * v[k] for k, c in u.items() if k in v), Fraction(0))


def gap_sides(rep: FockRep, terms, lengths: np.ndarray) -> tuple[Fraction, Fraction]:
    """``(-i phi(X^* delta(X)), phi(X^* X))`` for ``X = sum c S_mu S_nu^*`` with real ``c``.

    ``delta = i [D, .]`` so ``-i phi(X^* delta(X)) = <X Omega, [D, X] Omega>``;
    both sides are exact rationals.
    """
    omega = {0: Fraction(1)}
    x_omega = _apply_poly(rep, terms, omega)
    d_omega = {k: v * int(lengths[k]) for k, v in omega.items() if lengths[k]}
    dx_omega = {k: v * int(lengths[k]) for k, v in x_omega.items()}
    xd_omega = _apply_poly(rep, terms, d_omega) if d_omega else {}
    comm = dict(dx_omega)
    for k, v in xd_omega.items():
        comm[k] = comm.get(k, 0) - v
    return _inner(x_omega, comm), _inner(x_omega, x_omega)


def _random_word(rng: random.Random, basis: FockBasis, max_len: int) -> tuple[int, ...]:
    n = rng.randint(0, max_len)
    word: list[int] = []
    for _ in range(n):
        choices = [a for a in range(1, basis.size + 1) if not word or basis.matrix[a - 1, word[0] - 1]]
        word.insert(0, rng.choice(choices))
    return tuple(word)


@dataclass
class GapReport:
    samples: list[GapSample]
    witness: GapSample
    depth: int

    @property
    def violations(self) -> int:
        return sum(1 for s in self.samples if not s.ok)

    @property
    def witness_equality(self) -> bool:
        return self.witness.lhs == self.witness.rhs and self.witness.rhs > 0

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.witness_equality

    def records(self) -> FockReport:
        rpt = FockReport("gap")
        rpt.add("-i phi(X* delta(X)) >= phi(X* X)", (len(self.samples),), 0, self.depth, self.violations == 0)
        rpt.add("equality at X = S_1", (1,), 0, self.depth, self.witness_equality)
        return rpt


def spectral_gap_check(A, k: int, L: int, samples: int = 1000, tol: Fraction | float = 0, seed: int = 0,
                       max_terms: int = 4, max_word: int | None = None) -> GapReport:
    """Spectral-gap inequality for the vacuum state under the full gauge action.

    Random ``X = sum c S_mu S_nu^*`` with rational ``c``, words of length at
    most ``L / 2`` and no constant term (so ``phi(X) = 0``). Sides are
    computed exactly; ``tol`` is kept for float-mode callers and is 0 here.
    """
    max_word = L // 2 if max_word is None else max_word
    if 2 * max_word > L:
        raise SamplingDepthError(f"monomials of length {max_word} need depth L >= {2 * max_word}")
    adj = check_admissible(A)
    rep = FockRep(build_Ak(adj, k), L, n_low=adj.N)
    lengths = rep.basis.lengths
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            mu = _random_word(rng, rep.basis, max_word)
            # half the terms are pure creations, the only ones seen at the vacuum
            nu = () if rng.random() < 0.5 else _random_word(rng, rep.basis, max_word)
            if not mu and not nu:
                mu = (rng.randint(1, rep.size),)
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 9)) or Fraction(1)
            terms.append((c, mu, nu))
        lhs, rhs = gap_sides(rep, terms, lengths)
        out.append(GapSample(tuple(terms), lhs, rhs - Fraction(tol)))
    w_terms = ((Fraction(1), (1,), ()),)
    wl, wr = gap_sides(rep, w_terms, lengths)
    return GapReport(out, GapSample(w_terms, wl, wr), L)
