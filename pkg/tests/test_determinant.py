import numpy as np
import pytest

from polydet import fixtures
from polydet.determinant import (degree_certificate, det_report, determinant,
                                 determinant_auto)
from polydet.field import FieldContext
from polydet.generate import random_matrix, random_nonsingular
from polydet.oracle import oracle_det
from polydet.poly import NEG_INF, Polynomial
from polydet.polymat import PolyMatrix, hstack, mul, transpose, vstack

from conftest import associates, poly_matrix


def test_example2(ex2_F, Z7):
    assert determinant(ex2_F) == Polynomial(fixtures.EXAMPLE2_DET, Z7)
    assert determinant(ex2_F).render() == "[0,0,0,0,0,2,0,5,5,0,2]"


def test_example2_blocks(ex2_F, Z7):
    r = det_report(ex2_F, check=True)
    root, g1, g2 = r.node(""), r.node("1"), r.node("2")
    assert (root.dim, root.k) == (5, 3)
    assert associates(g1.det, Polynomial(fixtures.EXAMPLE2_DET_G1, Z7))
    assert associates(g2.det, Polynomial(fixtures.EXAMPLE2_DET_G2, Z7))
    assert (g1.det * g2.det).scale(root.d_v) == root.det


def test_trace_products(rng):
    ctx = FieldContext(97)
    F = random_nonsingular(7, 3, "uniform", ctx, rng)
    r = det_report(F, check=True)
    by_path = {t.path: t for t in r.trace}
    for t in r.trace:
        if not t.is_leaf:
            a, b = by_path[t.path + "1"], by_path[t.path + "2"]
            assert (a.det * b.det).scale(t.d_v) == t.det
            assert a.dim + b.dim == t.dim
    assert r.det == oracle_det(F)


def test_one_by_one(Z7):
    F = poly_matrix([[[0, 1]]])
    assert determinant(F).render() == "[0,1]"
    assert determinant(PolyMatrix.zeros(0, 0, Z7)) == Polynomial.constant(1, Z7)


def test_diagonal(Z7):
    F = poly_matrix([[[0, 1], []], [[], [1, 1]]])
    assert determinant(F) == Polynomial([0, 1, 1], Z7)


@pytest.mark.parametrize("p", [7, 97, 998244353, (1 << 61) - 1])
def test_random_against_oracle(p, rng):
    ctx = FieldContext(p)
    for n in range(1, 7):
        for profile in ("uniform", "skewed"):
            F = random_nonsingular(n, 3, profile, ctx, rng)
            assert determinant(F) == oracle_det(F)


def test_singular(Z7, rng):
    ctx = FieldContext(97)
    A = random_matrix(4, 3, [2, 2, 2], ctx, rng)
    F = hstack([A, mul(A, random_matrix(3, 1, [1], ctx, rng))])
    r = det_report(F)
    assert r.singular and r.det.is_zero()
    Z = hstack([PolyMatrix.zeros(3, 1, ctx), random_matrix(3, 2, [1, 1], ctx, rng)])
    assert determinant(Z).is_zero()
    assert degree_certificate(Z) == NEG_INF


def test_non_square(Z7):
    with pytest.raises(ValueError):
        determinant(PolyMatrix.zeros(2, 3, Z7))


def test_transpose_and_auto_orient(rng):
    ctx = FieldContext(97)
    for _ in range(5):
        F = random_nonsingular(5, 4, "skewed", ctx, rng)
        d = determinant(F)
        assert determinant(transpose(F)) == d
        assert determinant_auto(F) == d
        assert det_report(transpose(F), auto_orient=True).transposed


def test_block_triangular(rng):
    ctx = FieldContext(97)
    A = random_nonsingular(3, 2, "uniform", ctx, rng)
    B = random_nonsingular(2, 3, "uniform", ctx, rng)
    C = random_matrix(3, 2, [2, 2], ctx, rng)
    F = vstack([hstack([A, C]), hstack([PolyMatrix.zeros(2, 3, ctx), B])])
    assert determinant(F) == determinant(A) * determinant(B)


def test_multiplicative(rng):
    ctx = FieldContext(97)
    A = random_nonsingular(4, 2, "uniform", ctx, rng)
    B = random_nonsingular(4, 2, "uniform", ctx, rng)
    assert determinant(mul(A, B)) == determinant(A) * determinant(B)


def test_degree_certificate(ex2_F, rng):
    assert degree_certificate(ex2_F) == 14
    assert determinant(ex2_F).degree <= 14
    ctx = FieldContext(97)
    for _ in range(10):
        F = random_nonsingular(4, 3, "uniform", ctx, rng)
        assert determinant(F).degree <= degree_certificate(F)
