"""Shifted-minimal right kernel bases.

An ``s``-minimal kernel basis of ``F`` is extracted from an ``s``-minimal
order basis of order ``sum(s) + 1``: with ``s`` bounding the column degrees
of ``F``, a minimal kernel basis has shifted degrees at most ``sum(s)``, so
its elements are exactly the order-basis columns that ``F`` annihilates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .detconst import InconsistentState
from .orderbasis import order_basis
from .poly import NEG_INF
from .polymat import (PolyMatrix, cdeg, cdeg_shifted, is_column_reduced_shifted, mul)


@dataclass
class KernelBasis:
    N: PolyMatrix
    shift: tuple
    source_shape: tuple

    @property
    def degrees(self) -> tuple:
        return cdeg_shifted(self.N, self.shift)

    @property
    def cols(self) -> int:
        return self.N.cols


def default_shift(F: PolyMatrix) -> list[int]:
    """``cdeg(F)`` with zero columns mapped to 0."""
    return [0 if d == NEG_INF else int(d) for d in cdeg(F)]


def _check_shift(F: PolyMatrix, s: Sequence[int] | None) -> list[int]:
    if s is None:
        return default_shift(F)
    s = [int(v) for v in s]
    if len(s) != F.cols:
        raise ValueError(f"shift has length {len(s)}, matrix has {F.cols} columns")
    for j, (d, v) in enumerate(zip(cdeg(F), s)):
        if v < 0 or (d != NEG_INF and v < d):
            raise ValueError(f"shift entry {j} = {v} does not bound column degree {d}")
    return s


def kernel_basis(F: PolyMatrix, s: Sequence[int] | None = None, *,
                 check: bool = True) -> KernelBasis:
    """An ``(F, s)``-kernel basis; ``s`` defaults to ``cdeg(F)``.

    Columns are ordered by ascending shifted degree, ties by their position
    in the underlying order basis.
    """
    s = _check_shift(F, s)
    sigma = max(1, sum(s) + 1)
    basis = order_basis(F, sigma, s, check=False)
    FP = mul(F, basis.P)
    if not FP.truncate(sigma).is_zero():
        raise InconsistentState(f"order basis residual is nonzero mod x^{sigma}")
    zero_cols = [j for j in range(F.cols) if not FP.coeffs[:, :, j].any()]
    degs = basis.degrees
    zero_cols.sort(key=lambda j: (degs[j], j))
    kb = KernelBasis(basis.P.take_cols(zero_cols), tuple(s), F.shape)
    if check:
        check_kernel_invariants(F, kb)
    return kb


def check_kernel_invariants(F: PolyMatrix, kb: KernelBasis) -> None:
    """Annihilation, reducedness (hence full rank) and the degree-sum bound."""
    N, s = kb.N, kb.shift
    if not mul(F, N).is_zero():
        raise InconsistentState("F N != 0")
    if not is_column_reduced_shifted(N, s):
        raise InconsistentState("kernel basis is not shift-column reduced")
    if sum(kb.degrees) > sum(s):
        raise InconsistentState(f"sum of shifted degrees {sum(kb.degrees)} > {sum(s)}")


def is_kernel_basis(F: PolyMatrix, N: PolyMatrix, s: Sequence[int] | None = None) -> bool:
    """Annihilation, full column rank and generation of every kernel vector.

    Generation is checked by brute force: each kernel vector of degree at most
    ``sum(s)`` must be a polynomial combination of the columns of ``N``.
    Expensive; meant for small instances.
    """
    from .oracle import coefficient_nullspace, in_column_span, poly_rank

    s = _check_shift(F, s)
    if N.rows != F.cols:
        return False
    if not mul(F, N).is_zero():
        return False
    if poly_rank(N) != N.cols:
        return False
    vectors = coefficient_nullspace(F, sum(s))
    return in_column_span(N, vectors)
