"""Reference implementations for testing; never used by the main algorithm.

Everything here works entry-by-entry on :class:`Polynomial` objects or on
coefficient-space linear systems, independently of the matrix machinery
the determinant driver uses.
"""
from __future__ import annotations

import numpy as np

from .detconst import nullspace_const
from .field import FieldContext
from .poly import NEG_INF, Polynomial, divmod_exact
from .polymat import PolyMatrix, cdeg


def naive_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    ctx = A.ctx
    a, b = A.entries(), B.entries()
    out = []
    for i in range(A.rows):
        row = []
        for j in range(B.cols):
            acc = Polynomial.zero(ctx)
            for k in range(A.cols):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return PolyMatrix.from_entries(out, ctx, cols=B.cols)


def bareiss_det(F: PolyMatrix) -> Polynomial:
    """Fraction-free elimination over K[x]; every division is exact."""
    n = F.rows
    if n != F.cols:
        raise ValueError("determinant of a non-square matrix")
    ctx = F.ctx
    if n == 0:
        return Polynomial.constant(1, ctx)
    M = F.entries()
    sign = 1
    prev = Polynomial.constant(1, ctx)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if piv is None:
            return Polynomial.zero(ctx)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                M[i][j] = divmod_exact(pk * M[i][j] - mik * M[k][j], prev)
            M[i][k] = Polynomial.zero(ctx)
        prev = pk
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def _const_det(M: list[list[int]], p: int) -> int:
    M = [row[:] for row in M]
    n = len(M)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c] % p
        inv = pow(M[c][c], -1, p)
        for i in range(c + 1, n):
            f = M[i][c] * inv % p
            if f:
                rc = M[c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], rc)]
    return det % p


def _interpolate(xs: list[int], ys: list[int], ctx: FieldContext) -> Polynomial:
    """Newton interpolation through the points ``(xs[i], ys[i])``."""
    p = ctx.p
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(xs[i] - xs[i - j], -1, p) % p
    result = Polynomial.constant(coef[-1], ctx)
    for i in range(n - 2, -1, -1):
        result = result * Polynomial([-xs[i], 1], ctx) + coef[i]
    return result


def interpolation_det(F: PolyMatrix) -> Polynomial:
    """Determinant by evaluation at ``0, 1, ..., D`` and interpolation.

    ``D = sum(cdeg F)`` bounds the degree; requires ``p > D``.
    """
    n = F.rows
    if n != F.cols:
        raise ValueError("determinant of a non-square matrix")
    ctx = F.ctx
    degs = cdeg(F)
    if any(d == NEG_INF for d in degs):
        return Polynomial.zero(ctx)
    D = int(sum(degs))
    if ctx.p <= D:
        raise ValueError(f"need p > {D} evaluation points, p = {ctx.p}")
    entries = F.entries()
    xs = list(range(D + 1))
    ys = [_const_det([[e(a) for e in row] for row in entries], ctx.p) for a in xs]
    return _interpolate(xs, ys, ctx)


def oracle_det(F: PolyMatrix, strategy: str = "auto") -> Polynomial:
    """Exact determinant.

    ``auto`` interpolates when ``p > sum(cdeg F)`` and otherwise falls back to
    Bareiss elimination; ``bareiss`` and ``interpolation`` force a path.
    """
    if strategy == "bareiss":
        return bareiss_det(F)
    if strategy == "interpolation":
        return interpolation_det(F)
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")
    degs = cdeg(F)
    if F.rows == F.cols and all(d != NEG_INF for d in degs) and F.ctx.p > sum(degs):
        return interpolation_det(F)
    return bareiss_det(F)


def _rank_pivots(M: list[list[Polynomial]]) -> list[int]:
    """Original indices of rows forming a maximal nonsingular row subset."""
    if not M:
        return []
    ctx = M[0][0].ctx if M[0] else None
    A = [row[:] for row in M]
    idx = list(range(len(A)))
    cols = len(A[0])
    r = 0
    prev = Polynomial.constant(1, ctx) if ctx else None
    pivots = []
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        idx[r], idx[piv] = idx[piv], idx[r]
        pk = A[r][c]
        for i in range(r + 1, len(A)):
            mic = A[i][c]
            for j in range(c + 1, cols):
                A[i][j] = divmod_exact(pk * A[i][j] - mic * A[r][j], prev)
            A[i][c] = Polynomial.zero(ctx)
        prev = pk
        pivots.append(idx[r])
        r += 1
        if r == len(A):
            break
    return pivots


def poly_rank(M: PolyMatrix) -> int:
    """Rank over the fraction field K(x)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_rank_pivots(M.entries()))


def in_column_span(N: PolyMatrix, V: PolyMatrix) -> bool:
    """Whether every column of ``V`` is a K[x]-combination of columns of ``N``.

    ``N`` must have full column rank.  Coordinates are obtained by Cramer's
    rule on a nonsingular square row subset, then checked for polynomiality
    and for reproducing the whole column.
    """
    ctx = N.ctx
    k = N.cols
    if V.cols == 0:
        return True
    if k == 0:
        return V.is_zero()
    nent = N.entries()
    rows = _rank_pivots(nent)
    if len(rows) != k:
        raise ValueError("N does not have full column rank")
    sub = PolyMatrix.from_entries([nent[i] for i in rows], ctx)
    det = bareiss_det(sub)
    # adjugate: adj[i][j] = (-1)^(i+j) * minor(j, i)
    se = sub.entries()
    adj = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [[se[r][c] for c in range(k) if c != i] for r in range(k) if r != j]
            m = bareiss_det(PolyMatrix.from_entries(minor, ctx, cols=k - 1)) if k > 1 \
                else Polynomial.constant(1, ctx)
            adj[i][j] = m if (i + j) % 2 == 0 else -m
    vent = V.entries()
    for col in range(V.cols):
        vs = [vent[r][col] for r in rows]
        coords = []
        for i in range(k):
            num = Polynomial.zero(ctx)
            for j in range(k):
                num = num + adj[i][j] * vs[j]
            q, rem = divmod(num, det)
            if not rem.is_zero():
                return False
            coords.append(q)
        for r in range(N.rows):
            acc = Polynomial.zero(ctx)
            for i in range(k):
                acc = acc + nent[r][i] * coords[i]
            if acc != vent[r][col]:
                return False
    return True


def coefficient_nullspace(F: PolyMatrix, D: int, *, sigma: int | None = None,
                          shift=None) -> PolyMatrix:
    """Basis of ``{p : deg p <= D, F p = 0}`` by coefficient linear algebra.

    With ``sigma`` the condition becomes ``F p = 0 mod x**sigma``; with a
    ``shift`` the degree bound is on the shifted degree, ``deg p_j + s_j <= D``.
    Columns of the result are the basis vectors.
    """
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    ctx, p = F.ctx, F.ctx.p
    m, n = F.shape
    s = [0] * n if shift is None else [int(v) for v in shift]
    bounds = [D - sj for sj in s]
    unknowns = []
    for j in range(n):
        for e in range(bounds[j] + 1):
            unknowns.append((j, e))
    if not unknowns:
        return PolyMatrix.zeros(n, 0, ctx)
    top = max(bounds) + max(F.length - 1, 0)
    neq = top + 1 if sigma is None else min(top + 1, sigma)
    A = np.zeros((m * max(neq, 0), len(unknowns)), dtype=object)
    for u, (j, e) in enumerate(unknowns):
        for t in range(e, neq):
            k = t - e
            if k >= F.length:
                break
            A[np.arange(m) * neq + t, u] = F.coeffs[k, :, j]
    if A.shape[0] == 0:
        basis = np.eye(len(unknowns), dtype=object)
    else:
        basis = nullspace_const(A, ctx)
    L = max(bounds) + 1
    out = np.zeros((L, n, basis.shape[1]), dtype=object)
    for u, (j, e) in enumerate(unknowns):
        out[e, j, :] = basis[u, :]
    return PolyMatrix(out, ctx)
