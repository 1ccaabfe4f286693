"""The two worked 5-column examples over Z/7, as coefficient grids."""
from __future__ import annotations

from .field import FieldContext
from .polymat import PolyMatrix

P7 = FieldContext(7)

# 3 x 5, column degrees (1, 3, 4, 4, 2)
EXAMPLE1_F = [
    [[0, 1], [0, 0, 0, -1], [0, 0, 0, 0, -2], [0, 2], [0, 0, -1]],
    [[1], [-1], [0, -2], [2], [0, -1]],
    [[-3], [0, 1, 3], [0, 0, 2], [1, 0, 0, 0, -1], [0, 3]],
]

EXAMPLE1_G = [row[:3] for row in EXAMPLE1_F]

EXAMPLE1_N = [
    [[-1], [0, 1]],
    [[0, 0, -1], []],
    [[0, -3], []],
    [[-3], []],
    [[], [1]],
]

EXAMPLE2_F = EXAMPLE1_F + [
    [[], [1], [-2, 2, 1], [-2, 2, 0, 1], []],
    [[1], [2, 0, -1], [3, -3, 0, -2], [2, 2], []],
]

EXAMPLE2_V_U = [
    [[1], [], [], [2], [0, -1]],
    [[], [1], [], [0, 0, 2], []],
    [[], [], [1], [0, -1], []],
]

# 2x^10 - 2x^8 - 2x^7 + 2x^5 in canonical residues
EXAMPLE2_DET = [0, 0, 0, 0, 0, 2, 0, 5, 5, 0, 2]
EXAMPLE2_DET_G1 = [0, 0, 0, 0, -1, 0, 1]
EXAMPLE2_DET_G2 = [0, -1, 0, 0, 1]


def matrix(grid, ctx: FieldContext = P7) -> PolyMatrix:
    return PolyMatrix.from_entries(grid, ctx, cols=len(grid[0]))


def example1_F() -> PolyMatrix:
    return matrix(EXAMPLE1_F)


def example2_F() -> PolyMatrix:
    return matrix(EXAMPLE2_F)
