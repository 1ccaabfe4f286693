import numpy as np
import pytest

from polydet import fixtures
from polydet.field import FieldContext
from polydet.polymat import PolyMatrix, mul

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def Z7():
    return FieldContext(7)


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


@pytest.fixture
def ex1_F():
    return fixtures.example1_F()


@pytest.fixture
def ex1_N():
    return fixtures.matrix(fixtures.EXAMPLE1_N)


@pytest.fixture
def ex2_F():
    return fixtures.example2_F()


def poly_matrix(grid, p=7):
    return PolyMatrix.from_entries(grid, FieldContext(p), cols=len(grid[0]) if grid else 0)


def monic(f):
    return f.scale(f.ctx.inv(f.lc())) if not f.is_zero() else f


def associates(f, g):
    """True when f and g differ by a nonzero constant factor."""
    return monic(f) == monic(g)


def unimodular_pair(n, ctx, rng, steps=12):
    """Random unimodular U, its inverse V and det U, from elementary operations."""
    U = PolyMatrix.identity(n, ctx)
    V = PolyMatrix.identity(n, ctx)
    det = 1
    for _ in range(steps):
        kind = rng.integers(3)
        E = np.zeros((1, n, n), dtype=object)
        E[0] = np.eye(n, dtype=object)
        Einv = E.copy()
        if kind == 0:
            i = int(rng.integers(n))
            c = int(rng.integers(1, ctx.p))
            E[0, i, i], Einv[0, i, i] = c, pow(c, -1, ctx.p)
            det = det * c % ctx.p
        elif kind == 1 and n > 1:
            i, j = (int(v) for v in rng.choice(n, 2, replace=False))
            e, c = int(rng.integers(0, 3)), int(rng.integers(1, ctx.p))
            E = np.concatenate([E, np.zeros((e, n, n), dtype=object)])
            Einv = E.copy()
            E[e, i, j] = (E[e, i, j] + c) % ctx.p
            Einv[e, i, j] = (Einv[e, i, j] - c) % ctx.p
        elif n > 1:
            i, j = (int(v) for v in rng.choice(n, 2, replace=False))
            E[0][[i, j]] = E[0][[j, i]]
            Einv = E.copy()
            det = -det % ctx.p
        E, Einv = PolyMatrix(E, ctx), PolyMatrix(Einv, ctx)
        U = mul(U, E)
        V = mul(Einv, V)
    return U, V, det
