"""Exact linear algebra: determinants, adjugates, rank, inertia."""

import random
from fractions import Fraction
from itertools import product

import pytest

from morinclass import Polynomial, PolyMatrix, RationalMatrix
from morinclass.linalg import AsymmetricMatrixError, NonSquareMatrixError, poly_identity

from conftest import cofactor_determinant, make_context, minor_rank, random_polynomial


@pytest.fixture
def ctx():
    return make_context("x", "y")


class TestPolyDeterminant:
    def test_triangular(self, ctx):
        x = Polynomial.variable(ctx, "x")
        y = Polynomial.variable(ctx, "y")
        one = Polynomial.constant(ctx, 1)
        zero = Polynomial.zero(ctx)
        m = PolyMatrix.from_rows([[x, one], [zero, y]])
        assert m.determinant() == x * y

    def test_identity(self, ctx):
        assert poly_identity(ctx, 3).determinant() == Polynomial.constant(ctx, 1)

    def test_non_square(self, ctx):
        x = Polynomial.variable(ctx, "x")
        with pytest.raises(NonSquareMatrixError):
            PolyMatrix(1, 2, [x, x]).determinant()

    def test_matches_cofactor_oracle_4x4(self):
        ctx = make_context("x", "y", "z")
        rng = random.Random(7)
        for _ in range(12):
            rows = [
                [random_polynomial(rng, ctx, max_degree=1, n_terms=2) for _ in range(4)]
                for _ in range(4)
            ]
            assert PolyMatrix.from_rows(rows).determinant() == cofactor_determinant(rows)

    def test_bareiss_path_matches_oracle_5x5(self):
        # size 5 exercises the fraction-free elimination branch
        ctx = make_context("x")
        rng = random.Random(11)
        for _ in range(4):
            rows = [
                [random_polynomial(rng, ctx, max_degree=1, n_terms=2) for _ in range(5)]
                for _ in range(5)
            ]
            assert PolyMatrix.from_rows(rows).determinant() == cofactor_determinant(rows)


class TestAdjugate:
    def test_one_by_one(self, ctx):
        p = Polynomial.variable(ctx, "x") ** 3
        adj = PolyMatrix(1, 1, [p]).adjugate()
        assert adj[0, 0] == Polynomial.constant(ctx, 1)

    def test_diagonal_swap(self, ctx):
        a = Polynomial.variable(ctx, "x")
        b = Polynomial.variable(ctx, "y")
        zero = Polynomial.zero(ctx)
        adj = PolyMatrix.from_rows([[a, zero], [zero, b]]).adjugate()
        assert adj[0, 0] == b and adj[1, 1] == a
        assert adj[0, 1].is_zero() and adj[1, 0].is_zero()

    def test_adjugate_identity_random(self):
        ctx = make_context("x", "y")
        rng = random.Random(3)
        for size in (2, 3, 4):
            for _ in range(4):
                rows = [
                    [random_polynomial(rng, ctx, max_degree=2, n_terms=2) for _ in range(size)]
                    for _ in range(size)
                ]
                m = PolyMatrix.from_rows(rows)
                det = m.determinant()
                prod = m.adjugate() * m
                expected = poly_identity(ctx, size).map(lambda e: e * det)
                assert all(
                    prod[r, c] == expected[r, c] for r in range(size) for c in range(size)
                )


class TestRank:
    def test_dependent_rows(self):
        assert RationalMatrix.from_rows([[1, 2], [2, 4]]).rank() == 1

    def test_zero_matrix(self):
        assert RationalMatrix.from_rows([[0, 0], [0, 0], [0, 0]]).rank() == 0

    def test_rank_equals_max_nonzero_minor_exhaustive_2x3(self):
        for entries in product((-1, 0, 1), repeat=6):
            rows = [list(entries[:3]), list(entries[3:])]
            assert RationalMatrix.from_rows(rows).rank() == minor_rank(rows)

    def test_rank_equals_max_nonzero_minor_sampled_3x4(self):
        # stratified sample of the 3^12 sign matrices
        for idx in range(0, 3**12, 4931):
            digits = []
            v = idx
            for _ in range(12):
                digits.append(v % 3 - 1)
                v //= 3
            rows = [digits[0:4], digits[4:8], digits[8:12]]
            assert RationalMatrix.from_rows(rows).rank() == minor_rank(rows)

    def test_transpose_and_row_ops_invariance(self, rng):
        for _ in range(20):
            rows = [
                [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)]
                for _ in range(3)
            ]
            m = RationalMatrix.from_rows(rows)
            r = m.rank()
            assert m.transpose().rank() == r
            swapped = [rows[1], rows[0], rows[2]]
            assert RationalMatrix.from_rows(swapped).rank() == r
            scaled = [[Fraction(5, 3) * e for e in rows[0]], rows[1], rows[2]]
            assert RationalMatrix.from_rows(scaled).rank() == r

    def test_determinant_multiplicative(self, rng):
        for _ in range(10):
            a = RationalMatrix.from_rows(
                [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
            )
            b = RationalMatrix.from_rows(
                [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
            )
            assert (a * b).determinant() == a.determinant() * b.determinant()


class TestSignature:
    def test_positive_diagonal(self):
        assert RationalMatrix.from_rows([[2, 0], [0, 2]]).signature() == (2, 0, 0)

    def test_mixed_diagonal(self):
        assert RationalMatrix.from_rows([[2, 0], [0, -6]]).signature() == (1, 1, 0)

    def test_hyperbolic_block(self):
        # forces the 2x2 off-diagonal pivot path; eigenvalues are +-1
        assert RationalMatrix.from_rows([[0, 1], [1, 0]]).signature() == (1, 1, 0)

    def test_zero_block(self):
        assert RationalMatrix.from_rows([[0, 0], [0, 0]]).signature() == (0, 0, 2)

    def test_larger_hyperbolic(self):
        m = RationalMatrix.from_rows(
            [[0, 0, 1], [0, 3, 0], [1, 0, 0]]
        )
        assert m.signature() == (2, 1, 0)

    def test_asymmetric_rejected(self):
        with pytest.raises(AsymmetricMatrixError):
            RationalMatrix.from_rows([[0, 1], [2, 0]]).signature()

    def test_sylvester_congruence(self, rng):
        from conftest import random_invertible_matrix

        for _ in range(12):
            size = rng.choice([2, 3])
            sym = [[Fraction(0)] * size for _ in range(size)]
            for i in range(size):
                for j in range(i, size):
                    v = Fraction(rng.randint(-3, 3))
                    sym[i][j] = sym[j][i] = v
            m = RationalMatrix.from_rows(sym)
            a = random_invertible_matrix(rng, size)
            congruent = a.transpose() * m * a
            assert congruent.signature() == m.signature()

    def test_signature_consistent_with_rank(self, rng):
        for _ in range(10):
            size = 3
            sym = [[Fraction(0)] * size for _ in range(size)]
            for i in range(size):
                for j in range(i, size):
                    v = Fraction(rng.randint(-2, 2))
                    sym[i][j] = sym[j][i] = v
            m = RationalMatrix.from_rows(sym)
            pos, neg, zero = m.signature()
            assert pos + neg == m.rank()
            assert pos + neg + zero == size
