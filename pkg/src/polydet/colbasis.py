"""Column bases of full-row-rank polynomial matrices.

The column basis comes from a weak Popov row reduction of the transpose
(Mulders-Storjohann style).  The right factor ``V_U`` with ``G1 V_U = F_U``
is recorded while reducing, by applying the inverse of every elementary
operation to an accumulator.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .detconst import InconsistentState
from .kernel import KernelBasis, kernel_basis
from .poly import NEG_INF
from .polymat import PolyMatrix, cdeg, mul, rdeg, transpose


class RankDeficient(ValueError):
    """The input does not have full row rank."""

    def __init__(self, rank: int, expected: int):
        super().__init__(f"rank {rank} < {expected}")
        self.rank = rank
        self.expected = expected


@dataclass
class ColBasisTriple:
    G1: PolyMatrix
    N: KernelBasis
    V_U: PolyMatrix


class _Row:
    """A polynomial row vector as a ``(length, width)`` coefficient array."""

    __slots__ = ("c",)

    def __init__(self, c: np.ndarray):
        self.c = c
        self.trim()

    def trim(self):
        L = self.c.shape[0]
        while L and not self.c[L - 1].any():
            L -= 1
        self.c = self.c[:L]

    @property
    def deg(self) -> int:
        return self.c.shape[0] - 1

    def pivot(self) -> int:
        """Rightmost position attaining the row degree."""
        return int(np.nonzero(self.c[-1])[0][-1])

    def axpy(self, coef: int, e: int, other: _Row, p: int) -> None:
        """``self += coef * x**e * other``."""
        need = other.c.shape[0] + e
        if need > self.c.shape[0]:
            grown = np.zeros((need, self.c.shape[1]), dtype=self.c.dtype)
            grown[: self.c.shape[0]] = self.c
            self.c = grown
        self.c[e:need] = (self.c[e:need] + coef * other.c) % p
        self.trim()


def weak_popov_row_basis(A: PolyMatrix):
    """Row-reduced basis ``R`` (r x k) of the row module of ``A`` with ``A = Vleft R``.

    ``R`` is in weak Popov form with monic pivots, rows sorted by pivot
    position.  Returns ``(R, Vleft)``.
    """
    ctx, p = A.ctx, A.ctx.p
    n, k = A.shape
    rows = [_Row(A.coeffs[:, i, :].copy()) for i in range(n)]
    # vcols[j] is column j of Vleft, with A = Vleft * current rows
    vcols = [_Row(np.eye(n, dtype=ctx.dtype)[j][None].copy()) for j in range(n)]

    def reduce(i: int, j: int) -> None:
        # row_i -= c x^e row_j ; Vleft col_j += c x^e col_i
        e = rows[i].deg - rows[j].deg
        q = rows[i].pivot()
        c = int(rows[i].c[-1, q]) * pow(int(rows[j].c[-1, q]), -1, p) % p
        rows[i].axpy(p - c, e, rows[j], p)
        vcols[j].axpy(c, e, vcols[i], p)

    owner: dict[int, int] = {}
    queue = deque(range(n))
    while queue:
        i = queue.popleft()
        while rows[i].c.shape[0]:
            q = rows[i].pivot()
            j = owner.get(q)
            if j is None:
                owner[q] = i
                break
            if rows[i].deg >= rows[j].deg:
                reduce(i, j)
            else:
                reduce(j, i)
                owner[q] = i
                queue.appendleft(j)
                break

    keep = sorted(owner.values(), key=lambda i: rows[i].pivot())
    r = len(keep)
    L = max((rows[i].c.shape[0] for i in keep), default=0)
    R = np.zeros((L, r, k), dtype=ctx.dtype)
    LV = max((vcols[i].c.shape[0] for i in keep), default=0)
    V = np.zeros((LV, n, r), dtype=ctx.dtype)
    for t, i in enumerate(keep):
        lc = int(rows[i].c[-1, rows[i].pivot()])
        inv = pow(lc, -1, p)
        R[: rows[i].c.shape[0], t, :] = rows[i].c * inv % p
        V[: vcols[i].c.shape[0], :, t] = vcols[i].c * lc % p
    return PolyMatrix(R, ctx, canonical=True), PolyMatrix(V, ctx, canonical=True)


def col_basis(F_U: PolyMatrix, s: Sequence[int] | None = None, *,
              check: bool = False) -> ColBasisTriple:
    """Column basis ``G1``, kernel basis ``N`` and right factor ``V_U`` of ``F_U``.

    Raises :class:`RankDeficient` when ``F_U`` lacks full row rank.
    """
    k, n = F_U.shape
    R, Vleft = weak_popov_row_basis(transpose(F_U))
    if R.rows < k:
        raise RankDeficient(R.rows, k)
    G1 = transpose(R)
    V_U = transpose(Vleft)
    N = kernel_basis(F_U, s, check=check)
    triple = ColBasisTriple(G1, N, V_U)
    if check:
        check_colbasis_invariants(F_U, triple)
    return triple


def degree_bound_ok(G1: PolyMatrix, F: PolyMatrix) -> bool:
    """Sorted ``cdeg(G1)`` is bounded by the ``k`` largest column degrees of ``F``."""
    k = G1.cols
    g = sorted((d for d in cdeg(G1)), reverse=True)
    f = sorted((d for d in cdeg(F)), reverse=True)[:k]
    return len(f) == k and all(a <= b for a, b in zip(g, f))


def check_colbasis_invariants(F_U: PolyMatrix, triple: ColBasisTriple) -> None:
    if mul(triple.G1, triple.V_U) != F_U:
        raise InconsistentState("G1 V_U != F_U")
    if any(d == NEG_INF for d in rdeg(transpose(triple.G1))):
        raise InconsistentState("column basis has a zero column")
    if not degree_bound_ok(triple.G1, F_U):
        raise InconsistentState("column basis degrees exceed the k largest of F_U")
