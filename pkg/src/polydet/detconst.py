"""Constant (degree-zero) matrix routines over Z/pZ.

Besides plain rank / determinant / nullspace, this holds the two pieces the
determinant driver needs at ``x = 0``: a unimodular completion of the
kernel block and the resulting determinant of the inverse transform.
"""
from __future__ import annotations

import numpy as np

from .field import FieldContext, FieldElement


class InconsistentState(RuntimeError):
    """An invariant that holds for valid inputs was violated (a bug upstream)."""


def as_const(M, ctx: FieldContext) -> np.ndarray:
    arr = np.array(M, dtype=object) if not isinstance(M, np.ndarray) else M
    if arr.ndim != 2:
        arr = arr.reshape((arr.shape[0] if arr.ndim else 0, -1))
    return (arr.astype(object) % ctx.p).astype(ctx.dtype)


def _echelon(M: np.ndarray, p: int, *, reduced: bool = False):
    """Row echelon form by Gaussian elimination.

    Returns ``(E, pivots, det_factor)`` where ``pivots`` lists the pivot
    column of each nonzero row and ``det_factor`` is the product of pivots
    times the sign of the row permutation (meaningful for square input).
    """
    E = M.copy()
    rows, cols = E.shape
    pivots: list[int] = []
    det = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(E[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            E[[r, i]] = E[[i, r]]
            det = -det
        piv = int(E[r, c])
        det = det * piv % p
        inv = pow(piv, -1, p)
        E[r] = E[r] * inv % p
        targets = np.arange(r + 1, rows) if not reduced else np.r_[0:r, r + 1:rows]
        if len(targets):
            f = E[targets, c].reshape(-1, 1)
            if np.any(f):
                E[targets] = (E[targets] - f * E[r]) % p
        pivots.append(c)
        r += 1
    return E, pivots, det % p


def rank_const(M, ctx: FieldContext) -> int:
    A = as_const(M, ctx)
    if A.size == 0:
        return 0
    return len(_echelon(A, ctx.p)[1])


def det_const(M, ctx: FieldContext) -> FieldElement:
    A = as_const(M, ctx)
    n, m = A.shape
    if n != m:
        raise ValueError(f"determinant of a non-square {n}x{m} matrix")
    if n == 0:
        return ctx.one()
    E, pivots, det = _echelon(A, ctx.p)
    if len(pivots) < n:
        return ctx.zero()
    return ctx(det)


def nullspace_const(M, ctx: FieldContext) -> np.ndarray:
    """Basis of the right nullspace, one vector per column."""
    A = as_const(M, ctx)
    rows, cols = A.shape
    if rows == 0:
        return np.eye(cols, dtype=ctx.dtype)
    E, pivots, _ = _echelon(A, ctx.p, reduced=True)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((cols, len(free)), dtype=ctx.dtype)
    for k, f in enumerate(free):
        out[f, k] = 1
        for r, c in enumerate(pivots):
            out[c, k] = (-E[r, f]) % ctx.p
    return out


def unimodular_completion(U_R0, ctx: FieldContext) -> np.ndarray:
    """Unit columns ``U_L*`` making ``[U_L*, U_R0]`` invertible.

    Pivot rows of ``U_R0`` are found bottom-up by column Gauss-Jordan; the
    remaining rows, ascending, select the unit vectors.
    """
    A = as_const(U_R0, ctx)
    n, w = A.shape
    p = ctx.p
    # column echelon with pivots taken from the last rows first
    E = A[::-1].T.copy()
    E, pivots, _ = _echelon(E, p)
    if len(pivots) < w:
        raise InconsistentState(
            f"kernel block at x=0 has rank {len(pivots)} < {w} columns")
    pivot_rows = {n - 1 - c for c in pivots}
    free_rows = [i for i in range(n) if i not in pivot_rows]
    out = np.zeros((n, len(free_rows)), dtype=ctx.dtype)
    for k, i in enumerate(free_rows):
        out[i, k] = 1
    return out


def const_mul(A, B, ctx: FieldContext) -> np.ndarray:
    A = as_const(A, ctx)
    B = as_const(B, ctx)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=ctx.dtype)
    return (A.astype(object) @ B.astype(object) % ctx.p).astype(ctx.dtype)


def unimodular_det_contribution(V_U0, U_R0, ctx: FieldContext,
                                completion=None) -> FieldElement:
    """``det(V_U0 U_L*) / det([U_L*, U_R0])``: the determinant of ``U^{-1}``.

    ``completion`` overrides the canonical unit-column completion; any
    ``U_L*`` making ``[U_L*, U_R0]`` invertible gives the same value.
    """
    V = as_const(V_U0, ctx)
    R = as_const(U_R0, ctx)
    if V.shape[1] != R.shape[0]:
        raise ValueError(f"shape mismatch {V.shape} vs {R.shape}")
    if np.any(const_mul(V, R, ctx)):
        raise InconsistentState("V_U(0) * U_R(0) != 0")
    L = unimodular_completion(R, ctx) if completion is None else as_const(completion, ctx)
    if L.shape[1] != V.shape[0]:
        raise ValueError("completion has the wrong number of columns")
    denom = det_const(np.hstack([L, R]), ctx)
    if not denom:
        raise InconsistentState("[U_L*, U_R(0)] is singular")
    return det_const(const_mul(V, L, ctx), ctx) / denom
