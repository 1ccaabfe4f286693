"""Deterministic determinants of polynomial matrices over prime fields."""
from .colbasis import ColBasisTriple, RankDeficient, col_basis, weak_popov_row_basis
from .detconst import (InconsistentState, det_const, unimodular_completion,
                       unimodular_det_contribution)
from .determinant import (DetReport, degree_certificate, det_report, determinant,
                          determinant_auto)
from .field import FieldContext, FieldElement
from .kernel import KernelBasis, is_kernel_basis, kernel_basis
from .orderbasis import OrderBasis, order_basis, order_basis_iterative
from .poly import NEG_INF, Polynomial
from .polymat import (PolyMatrix, cdeg, cdeg_shifted, is_column_reduced_shifted,
                      lcoeff_shifted, mul, mul_unbalanced, parse_matrix, render_matrix)

__all__ = [
    "ColBasisTriple", "DetReport", "FieldContext", "FieldElement", "InconsistentState",
    "KernelBasis", "NEG_INF", "OrderBasis", "PolyMatrix", "Polynomial", "RankDeficient",
    "cdeg", "cdeg_shifted", "col_basis", "degree_certificate", "det_const", "det_report",
    "determinant", "determinant_auto", "is_column_reduced_shifted", "is_kernel_basis",
    "kernel_basis", "lcoeff_shifted", "mul", "mul_unbalanced", "order_basis",
    "order_basis_iterative", "parse_matrix", "render_matrix", "unimodular_completion",
    "unimodular_det_contribution", "weak_popov_row_basis",
]
