"""Shifted minimal order bases (minimal approximant bases).

For ``F`` of size ``m x n``, an order basis of order ``sigma`` is a
nonsingular ``n x n`` matrix ``P`` whose columns generate
``{p : F p = 0 mod x**sigma}`` and which is ``s``-column reduced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .detconst import InconsistentState
from .polymat import PolyMatrix, cdeg_shifted, matmul_mod, mul

DC_THRESHOLD = 64


@dataclass
class OrderBasis:
    P: PolyMatrix
    sigma: int
    shift: tuple
    promotions: int = 0
    degrees: tuple = field(init=False)

    def __post_init__(self):
        self.degrees = cdeg_shifted(self.P, self.shift)

    def residual(self, F: PolyMatrix) -> PolyMatrix:
        return mul(F.truncate(self.sigma), self.P).truncate(self.sigma)

    def check(self, F: PolyMatrix) -> None:
        if not self.residual(F).is_zero():
            raise InconsistentState(f"F P is not zero mod x^{self.sigma}")


def _normalize(F: PolyMatrix, sigma: int, s: Sequence[int]) -> list[int]:
    if sigma < 1:
        raise ValueError(f"order must be positive, got {sigma}")
    s = [int(v) for v in s]
    if len(s) != F.cols:
        raise ValueError(f"shift has length {len(s)}, matrix has {F.cols} columns")
    lo = min(s, default=0)
    return [v - lo for v in s]


def _eliminate(R: np.ndarray, order: list[int], p: int):
    """Constant column elimination of the residual ``R`` in the given order.

    Returns ``(T, pivots)``: ``R @ T`` has nonzero columns exactly at
    ``pivots`` (linearly independent) and ``T`` only adds multiples of
    earlier columns (in ``order``) to later ones.
    """
    m, n = R.shape
    W = np.concatenate([R[:, order], np.eye(n, dtype=R.dtype)[:, order]], axis=0)
    pivots = []
    for idx in range(n):
        col = W[:m, idx]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        r = int(nz[0])
        pivots.append(order[idx])
        later = idx + 1 + np.nonzero(W[r, idx + 1:])[0]
        if len(later) == 0:
            continue
        f = W[r, later] * pow(int(col[r]), -1, p) % p
        W[:, later] = (W[:, later] - W[:, idx:idx + 1] * f[None, :]) % p
    T = np.empty_like(W[m:])
    T[:, order] = W[m:]
    return T, pivots


def order_basis_iterative(F: PolyMatrix, sigma: int, s: Sequence[int],
                          *, check: bool = True) -> OrderBasis:
    """Order basis computed one order at a time.

    At each order the ``x**d`` coefficient of the residual is eliminated by
    constant column operations, pivots being chosen among columns of least
    shifted degree (ties: lowest index); pivot columns are then multiplied
    by ``x``.
    """
    t = _normalize(F, sigma, s)
    ctx, p = F.ctx, F.ctx.p
    m, n = F.shape
    Fc = F.coeffs[:sigma]
    LF = Fc.shape[0]
    cap = 8
    P = np.zeros((cap, n, n), dtype=ctx.dtype)
    P[0] = np.eye(n, dtype=ctx.dtype)
    LP = 1
    promotions = 0
    for d in range(sigma):
        R = np.zeros((m, n), dtype=ctx.dtype)
        for a in range(max(0, d - LP + 1), min(d, LF - 1) + 1):
            R += matmul_mod(Fc[a], P[d - a], p)
        R %= p
        if not R.any():
            continue
        order = sorted(range(n), key=lambda j: (t[j], j))
        T, pivots = _eliminate(R, order, p)
        changed = [j for j in range(n) if np.count_nonzero(T[:, j]) > 1]
        if changed:
            P[:LP, :, changed] = matmul_mod(P[:LP], T[:, changed], p)
        if LP + 1 > cap:
            cap *= 2
            grown = np.zeros((cap, n, n), dtype=ctx.dtype)
            grown[:LP] = P[:LP]
            P = grown
        P[1:LP + 1, :, pivots] = P[:LP, :, pivots]
        P[0, :, pivots] = 0
        LP += 1
        for j in pivots:
            t[j] += 1
        promotions += len(pivots)
    basis = OrderBasis(PolyMatrix(P[:LP], ctx, canonical=True), sigma, tuple(s), promotions)
    if check:
        basis.check(F)
    return basis


def order_basis(F: PolyMatrix, sigma: int, s: Sequence[int], *, check: bool = True,
                threshold: int = DC_THRESHOLD) -> OrderBasis:
    """Order basis, splitting the order in halves above ``threshold``."""
    _normalize(F, sigma, s)
    if sigma <= threshold:
        return order_basis_iterative(F, sigma, s, check=check)
    Ft = F.truncate(sigma)
    half = sigma // 2
    first = order_basis(Ft, half, s, check=False, threshold=threshold)
    residual = mul(Ft, first.P).shift_down(half).truncate(sigma - half)
    second = order_basis(residual, sigma - half, first.degrees, check=False,
                         threshold=threshold)
    basis = OrderBasis(mul(first.P, second.P), sigma, tuple(int(v) for v in s),
                       first.promotions + second.promotions)
    if check:
        basis.check(F)
    return basis
