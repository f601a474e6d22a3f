import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckdual.abgroup import TRIVIAL, Z
from ckdual.intlinalg import (
    DimensionError,
    IntMatrix,
    cokernel_presentation,
    determinant,
    invariant_factors_via_minors,
    kernel_basis,
    snf,
)
from ckdual.ktheory import build_AT, build_hatA

from conftest import ALL_ONES_2, EXAMPLE3, int_matrices


def M(rows):
    return IntMatrix.from_rows(rows)


def is_smith(res):
    D = res.D
    if not D.is_diagonal():
        return False
    nz = [d for d in res.factors if d]
    return all(d >= 0 for d in res.factors) and all(b % a == 0 for a, b in zip(nz, nz[1:])) \
        and res.factors[: len(nz)] == tuple(nz)


class TestIntMatrix:
    def test_shape_checks(self):
        with pytest.raises(ValueError):
            IntMatrix(0, 1, ())
        with pytest.raises(ValueError):
            IntMatrix(2, 2, (1, 2, 3))
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_arithmetic(self):
        A = M([[1, 2], [3, 4]])
        assert (A @ IntMatrix.identity(2)) == A
        assert (A - A) == IntMatrix.zeros(2, 2)
        assert A.T == M([[1, 3], [2, 4]])
        assert A.apply((1, 1)) == (3, 7)
        assert determinant(A) == -2

    def test_big_entries_stay_exact(self):
        A = M([[10**30, 1], [1, 0]])
        assert determinant(A) == -1
        assert snf(A).factors == (1, 1)


class TestSnf:
    def test_identity(self):
        res = snf(IntMatrix.identity(2))
        assert res.factors == (1, 1)
        assert res.D == IntMatrix.identity(2)

    def test_small_example(self):
        assert snf(M([[2, 4], [6, 8]])).factors == (2, 4)

    def test_example3_hat(self):
        res = snf(IntMatrix.identity(5) - build_hatA(EXAMPLE3))
        assert sorted(res.factors) == [0, 1, 1, 1, 1]

    def test_rectangular(self):
        res = snf(M([[2, 0, 0], [0, 3, 0]]))
        assert res.factors == (1, 6)
        assert res.U @ M([[2, 0, 0], [0, 3, 0]]) @ res.V == res.D

    @given(int_matrices())
    def test_transform_identity(self, A):
        res = snf(A)
        assert res.U @ A @ res.V == res.D
        assert abs(determinant(res.U)) == 1
        assert abs(determinant(res.V)) == 1
        assert is_smith(res)

    @settings(max_examples=150)
    @given(int_matrices(max_dim=4))
    def test_matches_minor_oracle(self, A):
        assert snf(A).factors == invariant_factors_via_minors(A)

    @given(int_matrices())
    def test_idempotent_on_own_diagonal(self, A):
        res = snf(A)
        assert snf(res.D).factors == res.factors


class TestKernel:
    def test_zero_matrix(self):
        ker = kernel_basis(IntMatrix.zeros(2, 2))
        assert sorted(map(tuple, map(lambda v: map(abs, v), ker))) == [(0, 1), (1, 0)]

    def test_example3(self):
        ker = kernel_basis(IntMatrix.identity(5) - M(EXAMPLE3))
        assert len(ker) == 1
        v = ker[0]
        assert v in ((-1, 1, -1, 1, -1), (1, -1, 1, -1, 1))

    def test_AT_of_all_ones(self):
        assert kernel_basis(build_AT(ALL_ONES_2)) == []

    @given(int_matrices())
    def test_rank_nullity(self, A):
        ker = kernel_basis(A)
        assert len(ker) + snf(A).rank == A.cols
        for v in ker:
            assert A.apply(v) == (0,) * A.rows


class TestCokernel:
    def test_identity_is_trivial(self):
        assert cokernel_presentation(IntMatrix.identity(2)).group == TRIVIAL

    def test_k0_of_o2(self):
        A = M(ALL_ONES_2)
        assert cokernel_presentation(IntMatrix.identity(2) - A.T).group == TRIVIAL

    def test_hat_of_all_ones(self):
        P = cokernel_presentation(IntMatrix.identity(2) - build_hatA(ALL_ONES_2))
        assert P.group == Z
        # quotient map (x, y) -> x + y up to sign
        assert abs(P.element((1, 0)).free_coords[0]) == 1
        assert P.element((1, -1)).is_zero

    def test_zero_columns_ignored(self):
        P = cokernel_presentation(M([[2, 0], [0, 0]]))
        assert str(P.group) == "Z (+) Z/2"


class TestMinorOracle:
    def test_examples(self):
        assert invariant_factors_via_minors(IntMatrix.identity(3)) == (1, 1, 1)
        assert invariant_factors_via_minors(M([[2, 4], [6, 8]])) == (2, 4)
        assert invariant_factors_via_minors(M([[0, -1], [-1, 0]])) == (1, 1)

    def test_guard(self):
        with pytest.raises(DimensionError):
            invariant_factors_via_minors(IntMatrix.identity(7))

    @given(st.integers(1, 5))
    def test_zero_matrix(self, n):
        assert invariant_factors_via_minors(IntMatrix.zeros(n, n)) == (0,) * n


def random_unimodular(rnd, n, steps=12):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rnd.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        q = rnd.randint(-3, 3)
        rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix.from_rows(rows)


def test_recovers_planted_factors():
    import random

    rnd = random.Random(11)
    for _ in range(200):
        r, c = rnd.randint(1, 5), rnd.randint(1, 5)
        k = min(r, c)
        chain, acc = [], 1
        for _ in range(k):
            acc *= rnd.choice([1, 1, 2, 3, 0]) if acc else 1
            chain.append(acc)
        D = IntMatrix.from_rows([[chain[i] if i == j else 0 for j in range(c)] for i in range(r)])
        M = random_unimodular(rnd, r) @ D @ random_unimodular(rnd, c)
        assert snf(M).factors == tuple(chain)
