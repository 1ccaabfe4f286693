"""Seeded random inputs for tests and benchmarks."""
from __future__ import annotations

import numpy as np

from .detconst import det_const
from .field import FieldContext
from .polymat import PolyMatrix

PROFILES = ("uniform", "skewed", "paper-example")


def column_degrees(n: int, degree: int, profile: str, rng: np.random.Generator) -> list[int]:
    if profile == "uniform":
        return [degree] * n
    if profile == "skewed":
        # one heavy column carrying the whole degree budget, the rest constant
        degs = [0] * n
        degs[int(rng.integers(n))] = n * degree
        return degs
    raise ValueError(f"unknown profile {profile!r}")


def random_matrix(rows: int, cols: int, col_degrees, ctx: FieldContext,
                  rng: np.random.Generator) -> PolyMatrix:
    """Dense random matrix whose column ``j`` has degree at most ``col_degrees[j]``."""
    L = max(col_degrees, default=-1) + 1
    c = np.zeros((max(L, 0), rows, cols), dtype=object)
    for j, d in enumerate(col_degrees):
        if d >= 0:
            c[: d + 1, :, j] = rng.integers(0, ctx.p, (d + 1, rows), dtype=np.int64)
    return PolyMatrix(c, ctx)


def looks_nonsingular(F: PolyMatrix, rng: np.random.Generator, tries: int = 3) -> bool:
    """True if ``F(a)`` is invertible for some random point ``a`` (a proof of nonsingularity)."""
    for _ in range(tries):
        a = int(rng.integers(F.ctx.p))
        if det_const(F.evaluate(a), F.ctx):
            return True
    return False


def random_nonsingular(n: int, degree: int, profile: str, ctx: FieldContext,
                       rng: np.random.Generator, max_tries: int = 100) -> PolyMatrix:
    for _ in range(max_tries):
        F = random_matrix(n, n, column_degrees(n, degree, profile, rng), ctx, rng)
        if n <= 6:
            from .oracle import oracle_det
            if not oracle_det(F).is_zero():
                return F
        elif looks_nonsingular(F, rng):
            return F
    raise RuntimeError(f"no nonsingular {n}x{n} matrix found in {max_tries} tries")
