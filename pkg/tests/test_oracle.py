import pytest

from polydet.detconst import rank_const
from polydet.field import FieldContext
from polydet.generate import random_matrix
from polydet.oracle import (bareiss_det, coefficient_nullspace, in_column_span,
                            interpolation_det, naive_mul, oracle_det, poly_rank)
from polydet.poly import Polynomial
from polydet.polymat import PolyMatrix, mul, vstack

from conftest import poly_matrix


def test_diagonal(Z7):
    F = poly_matrix([[[0, 1], []], [[], [1, 1]]])
    for strategy in ("bareiss", "interpolation", "auto"):
        assert oracle_det(F, strategy) == Polynomial([0, 1, 1], Z7)


def test_strategies_agree(rng):
    ctx = FieldContext(998244353)
    for n in range(1, 6):
        F = random_matrix(n, n, [int(v) for v in rng.integers(0, 5, n)], ctx, rng)
        assert bareiss_det(F) == interpolation_det(F)


def test_interpolation_needs_enough_points(ex2_F):
    with pytest.raises(ValueError):
        interpolation_det(ex2_F)
    assert oracle_det(ex2_F).render() == "[0,0,0,0,0,2,0,5,5,0,2]"


def test_multiplicativity(rng):
    ctx = FieldContext(97)
    A = random_matrix(3, 3, [2, 1, 2], ctx, rng)
    B = random_matrix(3, 3, [1, 1, 3], ctx, rng)
    assert oracle_det(naive_mul(A, B)) == oracle_det(A) * oracle_det(B)
    assert naive_mul(A, B) == mul(A, B)


def test_rank(rng):
    ctx = FieldContext(97)
    r = random_matrix(1, 4, [2, 2, 2, 2], ctx, rng)
    assert poly_rank(vstack([r, r.scale(2), random_matrix(1, 4, [1] * 4, ctx, rng)])) == 2


def test_coefficient_nullspace_dimension(ex1_F):
    p, (m, n) = 7, ex1_F.shape
    for D in range(4):
        V = coefficient_nullspace(ex1_F, D)
        assert mul(ex1_F, V).is_zero()
        # dimension equals unknowns minus rank of the linear map
        rows = []
        L = ex1_F.length + D
        for t in range(L):
            for i in range(m):
                row = []
                for j in range(n):
                    for e in range(D + 1):
                        row.append(int(ex1_F.coeffs[t - e, i, j]) if 0 <= t - e < ex1_F.length else 0)
                rows.append(row)
        assert V.cols == n * (D + 1) - rank_const(rows, ex1_F.ctx)


def test_in_column_span(Z7):
    N = poly_matrix([[[0, 1]], [[1]]])
    assert in_column_span(N, poly_matrix([[[0, 2, 1]], [[2, 1]]]))
    assert not in_column_span(N, poly_matrix([[[1]], [[0]]]))


def test_identity_has_no_kernel_vectors(Z7):
    for D in range(3):
        assert coefficient_nullspace(PolyMatrix.identity(3, Z7), D).shape == (3, 0)
