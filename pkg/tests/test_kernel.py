import numpy as np
import pytest

from polydet.field import FieldContext
from polydet.kernel import is_kernel_basis, kernel_basis
from polydet.oracle import coefficient_nullspace, in_column_span
from polydet.polymat import PolyMatrix, cdeg, is_column_reduced_shifted, mul, vstack

from conftest import poly_matrix


def test_example1(ex1_F, ex1_N):
    s = cdeg(ex1_F)
    kb = kernel_basis(ex1_F, s)
    N = kb.N
    assert N.cols == 2
    assert mul(ex1_F, N).is_zero()
    assert sum(kb.degrees) <= sum(s) == 14
    assert sorted(kb.degrees) == [2, 5]
    # the printed basis lies in the span of ours, and vice versa
    assert in_column_span(N, ex1_N)
    assert in_column_span(ex1_N, N)


def test_example1_printed_basis_is_a_minimal_kernel_basis(ex1_F, ex1_N):
    s = cdeg(ex1_F)
    assert is_kernel_basis(ex1_F, ex1_N, s)
    assert is_column_reduced_shifted(ex1_N, s)


def test_unit_row():
    F = poly_matrix([[[1], []]])
    kb = kernel_basis(F, [0, 0])
    assert kb.N == poly_matrix([[[]], [[1]]])


def test_full_column_rank_gives_empty_kernel(Z7, rng):
    F = poly_matrix([[[1, 1], [3]], [[0, 2], [1, 0, 1]]])
    kb = kernel_basis(F)
    assert kb.N.shape == (2, 0)
    assert is_kernel_basis(F, kb.N)


def test_dropping_a_column_breaks_generation(ex1_F):
    kb = kernel_basis(ex1_F)
    assert is_kernel_basis(ex1_F, kb.N)
    assert not is_kernel_basis(ex1_F, kb.N.take_cols([0]))
    assert not is_kernel_basis(ex1_F, kb.N.take_cols([1]))


def test_random_generation_against_brute_force(rng):
    ctx = FieldContext(97)
    for _ in range(8):
        F = PolyMatrix(rng.integers(0, 97, (3, 2, 4)), ctx)
        s = cdeg(F)
        kb = kernel_basis(F, s)
        assert kb.N.cols == 2
        assert is_kernel_basis(F, kb.N, s)


def test_rank_deficient_input(rng):
    ctx = FieldContext(97)
    row = PolyMatrix(rng.integers(0, 97, (2, 1, 4)), ctx)
    F = vstack([row, row.scale(3)])
    kb = kernel_basis(F)
    assert kb.N.cols == 3
    assert is_kernel_basis(F, kb.N)


def test_bases_are_unimodularly_equivalent(rng):
    ctx = FieldContext(97)
    for _ in range(5):
        F = PolyMatrix(rng.integers(0, 97, (2, 2, 4)), ctx)
        s = cdeg(F)
        A = kernel_basis(F, s).N
        B = kernel_basis(F, [v + 2 for v in s]).N
        assert in_column_span(A, B) and in_column_span(B, A)


def test_low_degree_kernel_vectors_lie_in_basis_span(ex1_F, ex1_N):
    V = coefficient_nullspace(ex1_F, 3)
    assert mul(ex1_F, V).is_zero()
    assert in_column_span(kernel_basis(ex1_F).N, V)


def test_shift_must_bound_column_degrees(ex1_F):
    with pytest.raises(ValueError):
        kernel_basis(ex1_F, [0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        kernel_basis(ex1_F, [1, 3, 4])
