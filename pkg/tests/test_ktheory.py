import random
from math import inf

import pytest
from hypothesis import given, settings

from ckdual.abgroup import TRIVIAL, Z, cyclic, element_order, free_part, pointed_iso, quotient_by
from ckdual.intlinalg import IntMatrix, kernel_basis
from ckdual.ktheory import (
    BadEntry,
    NotIrreducible,
    PermutationMatrix,
    TruncationTooSmall,
    build_Ak,
    build_AT,
    build_hatA,
    build_hatAinfty,
    build_tildeAinfty,
    check_admissible,
    invariant_sheet,
    reciprocal_kdata,
    toeplitz_kdata,
    verify_duality_sheet,
)

from conftest import ALL_ONES_2, ALL_ONES_3, EXAMPLE3, EXAMPLE3_HAT, GOLDEN_MEAN, admissible_from, admissible_matrices, all_ones


def rows(M):
    return M.to_lists()


class TestAdmissible:
    def test_accepts(self):
        assert check_admissible(ALL_ONES_2).N == 2

    @pytest.mark.parametrize(
        "A, exc",
        [
            ([[0, 1], [1, 0]], PermutationMatrix),
            ([[1, 1], [0, 1]], NotIrreducible),
            ([[1, 2], [1, 1]], BadEntry),
            ([[1, 1, 1], [1, 1, 1]], BadEntry),
            ([[0]], NotIrreducible),
            ([[1]], PermutationMatrix),
        ],
    )
    def test_rejects(self, A, exc):
        with pytest.raises(exc):
            check_admissible(A)

    def test_certificate_names_vertices(self):
        with pytest.raises(NotIrreducible, match="vertex 2"):
            check_admissible([[1, 1], [0, 1]])


class TestBuilders:
    def test_hatA_examples(self):
        assert rows(build_hatA(ALL_ONES_2)) == [[1, 1], [0, 0]]
        assert rows(build_hatA(EXAMPLE3)) == EXAMPLE3_HAT

    def test_hatA_rows_with_zero_first_column(self):
        A = [[1, 1, 0], [0, 0, 1], [1, 1, 1]]
        hat = rows(build_hatA(A))
        assert hat[1] == A[1]  # A(2,1) = 0 and row 2 of R_1 is zero

    def test_hatA_can_leave_zero_one(self):
        # row i >= 2 of hatA is A(i, .) - A(i, 1), so a 1 in column 1 next to a 0 gives -1
        assert rows(build_hatA(GOLDEN_MEAN)) == [[1, 1], [0, -1]]
        assert rows(build_hatA([[0, 1], [1, 1]])) == [[1, 2], [0, 0]]

    def test_AT(self):
        assert rows(build_AT(ALL_ONES_2)) == [[-1, -1], [0, -1], [-1, 0]]
        assert kernel_basis(build_AT(EXAMPLE3)) == []

    def test_Ak(self):
        assert rows(build_Ak(GOLDEN_MEAN, 1)) == [[1, 1, 1], [1, 0, 1], [1, 1, 1]]
        with pytest.raises(ValueError):
            build_Ak(GOLDEN_MEAN, 0)

    def test_tildeAinfty(self):
        assert rows(build_tildeAinfty(GOLDEN_MEAN, 4)) == [[1, 1, 1, 1], [1, 0, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]]
        with pytest.raises(TruncationTooSmall):
            build_tildeAinfty(GOLDEN_MEAN, 2)

    def test_hatAinfty(self):
        assert rows(build_hatAinfty(ALL_ONES_2, 5)) == [
            [1, 1, 1, 0, 0],
            [1, 1, 1, 0, 0],
            [1, 1, 1, 1, 1],
            [1, 1, 1, 0, 0],
            [1, 1, 1, 0, 0],
        ]
        M = build_hatAinfty(GOLDEN_MEAN, 6)
        assert all(M[2, j] == 1 for j in range(6))
        assert M[3, 3] == 0
        # top-left block is the transpose
        assert [[M[i, j] for j in range(2)] for i in range(2)] == [[1, 1], [1, 0]]
        with pytest.raises(TruncationTooSmall):
            build_hatAinfty(ALL_ONES_2, 3)

    @given(admissible_matrices())
    def test_builder_properties(self, A):
        n = A.N
        hat = build_hatA(A)
        assert set(hat.entries) <= {-1, 0, 1, 2}
        for i in range(n):
            for j in range(n):
                assert hat[i, j] == A[i, j] + (i == 0) - A[i, 0]
        for k in (1, 2, 4):
            assert build_tildeAinfty(A, n + k) == build_Ak(A, k)
            check_admissible(build_Ak(A, k))


class TestSheet:
    def test_o2(self):
        s = invariant_sheet(ALL_ONES_2)
        assert (s.k0, s.k1, s.exts1, s.exts0) == (TRIVIAL, TRIVIAL, Z, TRIVIAL)
        assert abs(s.iota_class.free_coords[0]) == 1

    def test_example3(self):
        s = invariant_sheet(EXAMPLE3)
        assert (s.k0, s.k1, s.exts1, s.exts0, s.extw1) == (Z, Z, Z, TRIVIAL, Z)
        assert s.iota_class.is_zero
        assert (s.w_oa, s.w_hat) == (1, 0)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_all_ones(self, n):
        s = invariant_sheet(all_ones(n + 1))
        assert s.exts1 == Z and s.exts0 == TRIVIAL
        assert abs(s.iota_class.free_coords[0]) == n
        assert s.k0 == cyclic(n)

    def test_reciprocal_kdata(self):
        k0, x, k1 = reciprocal_kdata(ALL_ONES_3)
        assert (k0, k1) == (Z, TRIVIAL)
        assert element_order(x) == inf and quotient_by(x) == cyclic(2)
        k0, x, k1 = reciprocal_kdata(EXAMPLE3)
        assert (k0, k1) == (Z, TRIVIAL) and x.is_zero

    def test_unit_class_is_all_ones_vector(self):
        s = invariant_sheet(GOLDEN_MEAN)
        # K_0(O_A) = 0 for the golden mean shift since det(I - A^t) = -1
        assert s.k0 == TRIVIAL and s.unit_class.is_zero

    def test_toeplitz_kdata(self):
        t = toeplitz_kdata(ALL_ONES_2)
        assert (t.k0, t.k1, t.epsilon) == (Z, TRIVIAL, -1)
        k0, unit, k1 = t
        assert unit.owner == k0

    @settings(max_examples=60)
    @given(admissible_matrices())
    def test_toeplitz_chi_is_one(self, A):
        t = toeplitz_kdata(A)
        assert t.k0.free_rank - t.k1.free_rank == 1
        assert not t.k1.torsion_factors


class TestDuality:
    def test_examples(self):
        assert verify_duality_sheet(ALL_ONES_2).ok
        assert verify_duality_sheet(EXAMPLE3).ok
        s = invariant_sheet(ALL_ONES_2)
        assert s.extw1 == quotient_by(s.iota_class) == TRIVIAL

    @settings(max_examples=100)
    @given(admissible_matrices())
    def test_identities(self, A):
        s = invariant_sheet(A)
        rep = verify_duality_sheet(A, s)
        assert rep.ok, rep.failures
        assert s.extw0 == free_part(s.k0)
        assert {s.w_oa, s.w_hat} == {0, 1}

    def test_failures_are_reported(self):
        s = invariant_sheet(ALL_ONES_2)
        from dataclasses import replace

        broken = replace(s, chi_hat=0)
        assert verify_duality_sheet(ALL_ONES_2, broken).failures == ["chi(hat O_A) = 1"]

    def test_k1_via_restricted_kernel(self):
        # ker A_T equals {x in ker(I - A): sum x = 0}
        rnd = random.Random(3)
        for _ in range(40):
            A = admissible_from(rnd, rnd.randint(2, 6), 0.5)
            n = A.N
            ker = kernel_basis(IntMatrix.identity(n) - A.matrix)
            sums = IntMatrix.from_rows([[sum(v) for v in ker]]) if ker else None
            expected = len(ker) - (1 if sums and any(sums.entries) else 0)
            assert invariant_sheet(A).exts0.free_rank == expected
