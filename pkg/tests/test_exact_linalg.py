"""Exact linear algebra: frozen examples plus randomized contract checks.

Expected Smith forms and determinants were computed with the independent
brute-force oracles in ``oracles.py`` (determinantal divisors and cofactor
expansion) before being frozen here; the randomized checks re-derive them at
run time.
"""

from __future__ import annotations

import random

import pytest

from oracles import cofactor_det, smith_diagonal_by_minors
from plumbhom.exact_linalg import (
    AbelianGroup,
    IntMatrix,
    cokernel_group,
    det,
    format_matrix,
    inverse_unimodular,
    kernel_rank,
    mat_mul,
    mat_pow,
    mat_sub,
    parse_matrix,
    rank,
    snf,
    smith_diagonal,
)


def _random_matrix(rng: random.Random, max_dim: int = 5, span: int = 9) -> IntMatrix:
    rows = rng.randint(0, max_dim)
    cols = rng.randint(0, max_dim)
    return IntMatrix(rows, cols, [rng.randint(-span, span) for _ in range(rows * cols)])


def _random_unimodular(rng: random.Random, n: int, steps: int = 12) -> IntMatrix:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-3, 3)
        for t in range(n):
            rows[i][t] += q * rows[j][t]
    return IntMatrix.from_rows(rows, cols=n)


class TestIntMatrix:
    def test_entry_count_must_match(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 2, [1, 2, 3])

    def test_rejects_non_integers(self):
        with pytest.raises(ValueError):
            IntMatrix(1, 1, [1.5])
        with pytest.raises(ValueError):
            IntMatrix(1, 1, [True])

    def test_empty_matrices_allowed(self):
        assert IntMatrix(0, 0, []).shape == (0, 0)
        assert IntMatrix(2, 0, []).shape == (2, 0)
        assert IntMatrix(0, 3, []).shape == (0, 3)

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_transpose_roundtrip(self):
        m = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert m.transpose().transpose() == m
        assert m.transpose().to_rows() == [[1, 4], [2, 5], [3, 6]]


class TestSnf:
    def test_identity_is_fixed(self):
        ident = IntMatrix.identity(2)
        assert snf(ident).S == ident

    def test_small_example(self):
        # oracle: minors gcd d1 = 1, d2 = |det| = 5
        m = IntMatrix.from_rows([[7, 3], [-3, -2]])
        assert smith_diagonal(snf(m).S) == [1, 5]
        assert smith_diagonal_by_minors(m.to_rows()) == [1, 5]

    def test_rank_one_example(self):
        m = IntMatrix.from_rows([[0, -3], [0, 0]])
        assert smith_diagonal(snf(m).S) == [3, 0]
        assert smith_diagonal_by_minors(m.to_rows()) == [3, 0]

    def test_empty_shapes(self):
        for shape in ((0, 0), (2, 0), (0, 3)):
            m = IntMatrix.zero(*shape)
            u, s, v = snf(m)
            assert s.shape == shape
            assert u.shape == (shape[0], shape[0])
            assert v.shape == (shape[1], shape[1])
            assert mat_mul(mat_mul(u, m), v) == s

    def test_contract_on_random_matrices(self):
        rng = random.Random(20260808)
        for _ in range(300):
            m = _random_matrix(rng)
            u, s, v = snf(m)
            assert mat_mul(mat_mul(u, m), v) == s
            assert abs(cofactor_det(u.to_rows())) == 1
            assert abs(cofactor_det(v.to_rows())) == 1
            diag = smith_diagonal(s)
            assert diag == smith_diagonal_by_minors(m.to_rows())
            assert all(d >= 0 for d in diag)
            for a, b in zip(diag, diag[1:]):
                assert (a == 0 and b == 0) or (a != 0 and b % a == 0)

    def test_determinant_equals_diagonal_product(self):
        rng = random.Random(7)
        found_nonsingular = 0
        for _ in range(200):
            n = rng.randint(1, 4)
            m = IntMatrix(n, n, [rng.randint(-9, 9) for _ in range(n * n)])
            d = det(m)
            if d == 0:
                continue
            found_nonsingular += 1
            product = 1
            for e in smith_diagonal(snf(m).S):
                product *= e
            assert product == abs(d)
        assert found_nonsingular > 100

    def test_entry_growth_past_64_bits(self):
        m = mat_sub(mat_pow(IntMatrix.from_rows([[8, 3], [-3, -1]]), 30), IntMatrix.identity(2))
        assert any(abs(e) > 2**63 for e in m.entries)
        diag = smith_diagonal(snf(m).S)
        assert diag[0] * diag[1] == abs(det(m))


class TestCokernelAndKernel:
    def test_twist_difference(self):
        m = IntMatrix.from_rows([[0, -3], [0, 0]])
        assert cokernel_group(m) == AbelianGroup(1, (3,))

    def test_zero_map(self):
        assert cokernel_group(IntMatrix.zero(2, 2)) == AbelianGroup(2)

    def test_finite_cokernel(self):
        m = IntMatrix.from_rows([[54, 21], [-21, -9]])
        group = cokernel_group(m)
        assert group == AbelianGroup(0, (3, 15))
        assert group.torsion_cardinality == abs(cofactor_det(m.to_rows()))

    def test_empty_domain(self):
        # map from the trivial group into Z^2
        assert cokernel_group(IntMatrix.zero(2, 0)) == AbelianGroup(2)

    def test_kernel_ranks(self):
        assert kernel_rank(IntMatrix.from_rows([[0, -3], [0, 0]])) == 1
        assert kernel_rank(IntMatrix.zero(2, 2)) == 2
        assert kernel_rank(IntMatrix.from_rows([[7, 3], [-3, -2]])) == 0

    def test_rank_nullity(self):
        rng = random.Random(11)
        for _ in range(200):
            m = _random_matrix(rng)
            assert kernel_rank(m) + rank(m) == m.cols

    def test_cokernel_invariant_under_unimodular_factors(self):
        rng = random.Random(13)
        for _ in range(100):
            m = _random_matrix(rng, max_dim=4)
            left = _random_unimodular(rng, m.rows)
            right = _random_unimodular(rng, m.cols)
            assert cokernel_group(mat_mul(left, mat_mul(m, right))) == cokernel_group(m)


class TestDet:
    def test_examples(self):
        assert det(IntMatrix.from_rows([[8, 3], [-3, -1]])) == 1
        assert det(IntMatrix.from_rows([[7, 3], [-3, -2]])) == -5
        assert det(IntMatrix.identity(5)) == 1
        assert det(IntMatrix.identity(0)) == 1

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            det(IntMatrix.zero(2, 3))

    def test_matches_cofactor_expansion(self):
        rng = random.Random(17)
        for _ in range(300):
            n = rng.randint(0, 5)
            m = IntMatrix(n, n, [rng.randint(-9, 9) for _ in range(n * n)])
            assert det(m) == cofactor_det(m.to_rows())


class TestProducts:
    def test_even_twists_compose(self):
        a = IntMatrix.from_rows([[-1, -3], [0, 1]])
        b = IntMatrix.from_rows([[1, 0], [-3, -1]])
        assert mat_mul(a, b) == IntMatrix.from_rows([[8, 3], [-3, -1]])

    def test_unipotent_powers(self):
        m = IntMatrix.from_rows([[1, -3], [0, 1]])
        for k in range(8):
            assert mat_pow(m, k) == IntMatrix.from_rows([[1, -3 * k], [0, 1]])

    def test_zeroth_power_is_identity(self):
        m = IntMatrix.from_rows([[2, 1], [1, 1]])
        assert mat_pow(m, 0) == IntMatrix.identity(2)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            mat_mul(IntMatrix.zero(2, 3), IntMatrix.zero(2, 3))

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            mat_pow(IntMatrix.identity(2), -1)

    def test_empty_product(self):
        assert mat_mul(IntMatrix.zero(2, 0), IntMatrix.zero(0, 3)) == IntMatrix.zero(2, 3)


class TestInverse:
    def test_inverse_of_unimodular(self):
        rng = random.Random(19)
        for _ in range(50):
            n = rng.randint(0, 4)
            m = _random_unimodular(rng, n)
            inv = inverse_unimodular(m)
            assert mat_mul(m, inv) == IntMatrix.identity(n)
            assert mat_mul(inv, m) == IntMatrix.identity(n)

    def test_negative_determinant(self):
        m = IntMatrix.from_rows([[0, 1], [1, 0]])
        assert inverse_unimodular(m) == m

    def test_non_unimodular_rejected(self):
        with pytest.raises(ValueError):
            inverse_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]]))


class TestAbelianGroup:
    def test_divisor_chain_enforced(self):
        with pytest.raises(ValueError):
            AbelianGroup(0, (4, 6))
        with pytest.raises(ValueError):
            AbelianGroup(0, (1,))
        with pytest.raises(ValueError):
            AbelianGroup(-1)

    def test_rendering(self):
        assert str(AbelianGroup(0)) == "0"
        assert str(AbelianGroup(2)) == "Z^2"
        assert str(AbelianGroup(0, (3, 15))) == "Z/3+Z/15"
        assert str(AbelianGroup(1, (3,))) == "Z^1+Z/3"


class TestMatrixLiteral:
    def test_roundtrip(self):
        m = IntMatrix.from_rows([[7, 3], [-3, -2]])
        assert parse_matrix(format_matrix(m)) == m
        assert format_matrix(m) == "[[7,3],[-3,-2]]"

    def test_whitespace_is_free(self):
        assert parse_matrix(" [ [ 0 , -3 ] , [ 0 , 0 ] ] ").to_rows() == [[0, -3], [0, 0]]

    def test_empty(self):
        assert parse_matrix("[]").shape == (0, 0)

    @pytest.mark.parametrize("bad", ["[[1,2],[3]]", "[[1.5]]", "[1,2]", "[[true]]", "nope", "[[1,"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValueError):
            parse_matrix(bad)
