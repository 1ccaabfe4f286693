"""Matrices of polynomials over Z/pZ.

A :class:`PolyMatrix` stores its coefficients as one array of shape
``(length, rows, cols)``: slice ``k`` is the constant matrix multiplying
``x**k``.  The array is kept trimmed (its last slice is nonzero), so
``length - 1`` is the matrix degree and the zero matrix has length 0.

Shifts follow the convention ``cdeg_s(M)[j] = max_i(deg M[i, j] + s[i])``,
i.e. a shift has one entry per *row* of the matrix it weights.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .detconst import rank_const
from .field import ContextMismatch, FieldContext
from .poly import NEG_INF, Polynomial

LIMB = 16
_LIMB_MASK = (1 << LIMB) - 1
# Below this modulus products go through float64 BLAS on 15-bit halves,
# exact while the inner dimension stays below 2**22.
FLOAT_PRIME_LIMIT = 1 << 30
_HALF = 15
_HALF_MASK = (1 << _HALF) - 1


def _as_2d_product(a: np.ndarray, b: np.ndarray, fn):
    """Apply a 2-D product ``fn`` to a 2-D/3-D operand pair via reshaping."""
    if a.ndim == 2 and b.ndim == 3:
        L, k, n = b.shape
        res = fn(a, b.transpose(1, 0, 2).reshape(k, L * n))
        return res.reshape(a.shape[0], L, n).transpose(1, 0, 2)
    if a.ndim == 3 and b.ndim == 2:
        L, m, k = a.shape
        return fn(a.reshape(L * m, k), b).reshape(L, m, b.shape[1])
    return fn(a, b)


def _float_mm(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a0 = (a & _HALF_MASK).astype(np.float64)
    a1 = (a >> _HALF).astype(np.float64)
    b0 = (b & _HALF_MASK).astype(np.float64)
    b1 = (b >> _HALF).astype(np.float64)
    hh = (a1 @ b1).astype(np.int64) % p
    mid = ((a1 @ b0).astype(np.int64) + (a0 @ b1).astype(np.int64)) % p
    ll = (a0 @ b0).astype(np.int64)
    return (hh * ((1 << 2 * _HALF) % p) + mid * (1 << _HALF) + ll) % p


def _int_mm(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    hi = a >> LIMB
    lo = a & _LIMB_MASK
    return ((hi @ b) % p * (1 << LIMB) + (lo @ b)) % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` for 2-D or (2-D, 3-D) operands, exact for any word-size p."""
    if a.dtype == object or b.dtype == object:
        return (a @ b) % p
    if a.shape[-1] >= 1 << 15:
        raise ValueError("inner dimension too large for the fixed-width path")
    if p < FLOAT_PRIME_LIMIT:
        return _as_2d_product(a, b, lambda x, y: _float_mm(x, y, p))
    return _as_2d_product(a, b, lambda x, y: _int_mm(x, y, p))


def _trim_array(c: np.ndarray) -> np.ndarray:
    L = c.shape[0]
    while L > 0 and not c[L - 1].any():
        L -= 1
    return c[:L]


class PolyMatrix:
    """Immutable ``rows x cols`` polynomial matrix."""

    __slots__ = ("coeffs", "ctx", "_cdeg")

    def __init__(self, coeffs: np.ndarray, ctx: FieldContext, *, canonical: bool = False):
        coeffs = np.asarray(coeffs)
        if coeffs.ndim != 3:
            raise ValueError("coefficient array must have shape (length, rows, cols)")
        if not canonical:
            coeffs = (coeffs.astype(object) % ctx.p).astype(ctx.dtype)
        elif coeffs.dtype != np.dtype(ctx.dtype):
            coeffs = coeffs.astype(ctx.dtype)
        coeffs = _trim_array(coeffs)
        coeffs.flags.writeable = False
        self.coeffs = coeffs
        self.ctx = ctx
        self._cdeg = None

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int, ctx: FieldContext) -> PolyMatrix:
        return cls(np.zeros((0, rows, cols), dtype=ctx.dtype), ctx, canonical=True)

    @classmethod
    def identity(cls, n: int, ctx: FieldContext) -> PolyMatrix:
        return cls(np.eye(n, dtype=ctx.dtype)[None], ctx, canonical=True)

    @classmethod
    def from_constant(cls, M, ctx: FieldContext) -> PolyMatrix:
        arr = np.array(M, dtype=object)
        if arr.ndim != 2:
            arr = arr.reshape(arr.shape[0] if arr.size else 0, -1)
        return cls(arr[None], ctx)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence], ctx: FieldContext,
                     cols: int | None = None) -> PolyMatrix:
        """Build from a grid whose cells are Polynomials, ints or coefficient lists."""
        rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        cells = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged entry grid")
            out = []
            for e in row:
                if isinstance(e, Polynomial):
                    if e.ctx != ctx:
                        raise ContextMismatch("entry lives in a different field")
                    out.append(list(e.coeffs))
                elif isinstance(e, (int, np.integer)):
                    out.append([int(e)])
                else:
                    out.append([int(c) for c in e])
            cells.append(out)
        L = max((len(c) for row in cells for c in row), default=0)
        arr = np.zeros((L, rows, cols), dtype=object)
        for i, row in enumerate(cells):
            for j, c in enumerate(row):
                arr[: len(c), i, j] = c
        return cls(arr, ctx)

    # basic accessors ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[1], self.coeffs.shape[2]

    @property
    def rows(self) -> int:
        return self.coeffs.shape[1]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[2]

    @property
    def length(self) -> int:
        return self.coeffs.shape[0]

    @property
    def degree(self):
        return self.length - 1 if self.length else NEG_INF

    def __getitem__(self, key) -> Polynomial:
        i, j = key
        return Polynomial._raw([int(v) for v in self.coeffs[:, i, j]], self.ctx)

    def entries(self) -> list[list[Polynomial]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def to_lists(self) -> list[list[list[int]]]:
        return [[list(self[i, j].coeffs) for j in range(self.cols)] for i in range(self.rows)]

    def coeff(self, k: int) -> np.ndarray:
        """Constant matrix of the ``x**k`` coefficients."""
        if 0 <= k < self.length:
            return self.coeffs[k].copy()
        return np.zeros(self.shape, dtype=self.ctx.dtype)

    def is_zero(self) -> bool:
        return self.length == 0

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.ctx == other.ctx and self.coeffs.shape == other.coeffs.shape
                and bool(np.array_equal(self.coeffs, other.coeffs)))

    def __hash__(self):
        return hash((self.shape, self.coeffs.tobytes() if self.coeffs.dtype != object
                     else tuple(self.coeffs.ravel().tolist())))

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, deg={self.degree}, p={self.ctx.p})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries())

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        return mul(self, other)

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        _same_ctx(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        L = max(self.length, other.length)
        out = np.zeros((L,) + self.shape, dtype=self.ctx.dtype)
        out[: self.length] += self.coeffs
        out[: other.length] += other.coeffs
        return PolyMatrix(out % self.ctx.p, self.ctx, canonical=True)

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix((-self.coeffs) % self.ctx.p, self.ctx, canonical=True)

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + (-other)

    def scale(self, c: int) -> PolyMatrix:
        return PolyMatrix(self.coeffs * (c % self.ctx.p) % self.ctx.p, self.ctx, canonical=True)

    @property
    def T(self) -> PolyMatrix:
        return transpose(self)

    def take_cols(self, idx: Iterable[int]) -> PolyMatrix:
        idx = list(idx)
        return PolyMatrix(self.coeffs[:, :, idx].reshape(self.length, self.rows, len(idx)),
                          self.ctx, canonical=True)

    def take_rows(self, idx: Iterable[int]) -> PolyMatrix:
        idx = list(idx)
        return PolyMatrix(self.coeffs[:, idx, :].reshape(self.length, len(idx), self.cols),
                          self.ctx, canonical=True)

    def truncate(self, order: int) -> PolyMatrix:
        """``self mod x**order``."""
        return PolyMatrix(self.coeffs[:order], self.ctx, canonical=True)

    def shift_down(self, k: int) -> PolyMatrix:
        """``self div x**k`` (drops the low ``k`` coefficients)."""
        return PolyMatrix(self.coeffs[k:], self.ctx, canonical=True)

    def evaluate(self, a: int) -> np.ndarray:
        """Constant matrix ``self(a)``."""
        p = self.ctx.p
        acc = np.zeros(self.shape, dtype=self.ctx.dtype)
        for k in range(self.length - 1, -1, -1):
            acc = (acc * (a % p) % p + self.coeffs[k]) % p
        return acc


def _same_ctx(A: PolyMatrix, B: PolyMatrix) -> None:
    if A.ctx != B.ctx:
        raise ContextMismatch(f"Z/{A.ctx.p} vs Z/{B.ctx.p}")


def _entry_degrees(M: PolyMatrix) -> np.ndarray:
    """Integer array of entry degrees, -1 for zero entries."""
    if M.length == 0:
        return np.full(M.shape, -1, dtype=np.int64)
    nz = M.coeffs != 0
    rev = nz[::-1].argmax(axis=0)
    return np.where(nz.any(axis=0), M.length - 1 - rev, -1).astype(np.int64)


def entry_degrees(M: PolyMatrix) -> list[list]:
    d = _entry_degrees(M)
    return [[NEG_INF if v < 0 else int(v) for v in row] for row in d]


def _profile(vals: np.ndarray) -> tuple:
    return tuple(NEG_INF if v < 0 else int(v) for v in vals)


def cdeg(M: PolyMatrix) -> tuple:
    """Column degrees; ``NEG_INF`` marks a zero column."""
    if M._cdeg is None:
        d = _entry_degrees(M)
        M._cdeg = _profile(d.max(axis=0) if M.rows else np.full(M.cols, -1))
    return M._cdeg


def rdeg(M: PolyMatrix) -> tuple:
    d = _entry_degrees(M)
    return _profile(d.max(axis=1) if M.cols else np.full(M.rows, -1))


def _check_shift(M: PolyMatrix, s: Sequence[int]) -> list[int]:
    s = [int(v) for v in s]
    if len(s) != M.rows:
        raise ValueError(f"shift has length {len(s)}, matrix has {M.rows} rows")
    return s


def cdeg_shifted(M: PolyMatrix, s: Sequence[int]) -> tuple:
    s = _check_shift(M, s)
    d = _entry_degrees(M)
    out = []
    for j in range(M.cols):
        best = NEG_INF
        for i in range(M.rows):
            if d[i, j] >= 0:
                best = max(best, int(d[i, j]) + s[i])
        out.append(best)
    return tuple(out)


def lcoeff_shifted(M: PolyMatrix, s: Sequence[int]) -> np.ndarray:
    """Leading coefficient matrix of ``x**s * M``."""
    s = _check_shift(M, s)
    cd = cdeg_shifted(M, s)
    if any(v == NEG_INF for v in cd):
        raise ValueError("shifted leading coefficients undefined for a zero column")
    out = np.zeros(M.shape, dtype=M.ctx.dtype)
    for j, dj in enumerate(cd):
        for i in range(M.rows):
            k = dj - s[i]
            if 0 <= k < M.length:
                out[i, j] = M.coeffs[k, i, j]
    return out


def is_column_reduced_shifted(M: PolyMatrix, s: Sequence[int] | None = None) -> bool:
    if s is None:
        s = [0] * M.rows
    if M.cols == 0:
        return True
    if any(v == NEG_INF for v in cdeg(M)):
        return False
    return rank_const(lcoeff_shifted(M, s), M.ctx) == M.cols


_CHUNK = 16


def _split(x: np.ndarray):
    return (x & _HALF_MASK).astype(np.float64), (x >> _HALF).astype(np.float64)


def _conv_float(Ac: np.ndarray, Bc: np.ndarray, p: int) -> np.ndarray:
    """Coefficient arrays of ``A @ B`` with the degree convolution inside BLAS.

    The shorter operand is taken in chunks of ``_CHUNK`` coefficients; each
    chunk is laid side by side and multiplied against a block-Toeplitz
    arrangement of the other operand in one product per limb pair.
    """
    LA, m, k = Ac.shape
    LB, _, n = Bc.shape
    out = np.zeros((LA + LB - 1, m, n), dtype=np.int64)
    transposed = LA > LB
    if transposed:
        # (A B)^T = B^T A^T, so the chunked operand is always the left one
        Ac, Bc = Bc.transpose(0, 2, 1), Ac.transpose(0, 2, 1)
        LA, LB, m, n = LB, LA, n, m
        out = np.zeros((LA + LB - 1, m, n), dtype=np.int64)
    B_flat = np.ascontiguousarray(Bc.transpose(1, 0, 2)).reshape(k, LB * n)
    b0, b1 = _split(B_flat)
    r30 = (1 << 2 * _HALF) % p
    for start in range(0, LA, _CHUNK):
        c = min(_CHUNK, LA - start)
        A_h = np.ascontiguousarray(Ac[start:start + c].transpose(1, 0, 2)).reshape(m, c * k)
        a0, a1 = _split(A_h)
        width = (c + LB - 1) * n
        T0 = np.zeros((c * k, width))
        T1 = np.zeros((c * k, width))
        for a in range(c):
            T0[a * k:(a + 1) * k, a * n:(a + LB) * n] = b0
            T1[a * k:(a + 1) * k, a * n:(a + LB) * n] = b1
        ll = a0 @ T0
        hh = a1 @ T1
        mid = (a0 + a1) @ (T0 + T1) - hh - ll
        res = (hh.astype(np.int64) % p * r30 + mid.astype(np.int64) % p * (1 << _HALF)
               + ll.astype(np.int64)) % p
        out[start:start + c + LB - 1] += res.reshape(m, c + LB - 1, n).transpose(1, 0, 2)
    out %= p
    return out.transpose(0, 2, 1) if transposed else out


def mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    _same_ctx(A, B)
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    p = A.ctx.p
    m, n = A.rows, B.cols
    if A.length == 0 or B.length == 0 or A.cols == 0:
        return PolyMatrix.zeros(m, n, A.ctx)
    if A.ctx.dtype is not object and p < FLOAT_PRIME_LIMIT and A.cols * _CHUNK < 1 << 21:
        return PolyMatrix(_conv_float(A.coeffs, B.coeffs, p), A.ctx, canonical=True)
    out = np.zeros((A.length + B.length - 1, m, n), dtype=A.ctx.dtype)
    # loop over the shorter coefficient axis; the other is broadcast
    if A.length <= B.length:
        for a in range(A.length):
            out[a:a + B.length] += matmul_mod(A.coeffs[a], B.coeffs, p)
            if A.ctx.dtype is not object and a % 1024 == 1023:
                out %= p
    else:
        for b in range(B.length):
            out[b:b + A.length] += matmul_mod(A.coeffs, B.coeffs[b], p)
            if A.ctx.dtype is not object and b % 1024 == 1023:
                out %= p
    return PolyMatrix(out % p, A.ctx, canonical=True)


class ShiftHypothesisError(ValueError):
    """The shift does not satisfy the unbalanced-product hypotheses."""


def mul_unbalanced(A: PolyMatrix, B: PolyMatrix, s: Sequence[int]) -> PolyMatrix:
    """``A @ B`` where ``s`` bounds ``cdeg(A)`` and ``sum(s) >= sum(cdeg_s(B))``.

    Columns of ``B`` are grouped by shifted degree into geometric buckets
    (thresholds ``avg * 2**i``) and each group is multiplied with its own
    truncated coefficient length, so the work follows the shifted degrees of
    ``B`` rather than its maximum degree.
    """
    _same_ctx(A, B)
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    s = [int(v) for v in s]
    if len(s) != A.cols:
        raise ShiftHypothesisError(f"shift length {len(s)} != {A.cols}")
    ca = cdeg(A)
    if any(c != NEG_INF and c > sv for c, sv in zip(ca, s)):
        raise ShiftHypothesisError(f"shift {s} does not bound cdeg(A) = {ca}")
    cs = cdeg_shifted(B, s)
    total = sum(v for v in cs if v != NEG_INF)
    if total > sum(s):
        raise ShiftHypothesisError(f"sum cdeg_s(B) = {total} exceeds sum(s) = {sum(s)}")
    n = max(A.cols, 1)
    avg = max(1, -(-sum(s) // n))
    buckets: dict[int, list[int]] = {}
    for j, d in enumerate(cs):
        if d == NEG_INF:
            continue
        i = 0
        while avg * (1 << i) < d:
            i += 1
        buckets.setdefault(i, []).append(j)
    out = np.zeros((0, A.rows, B.cols), dtype=A.ctx.dtype)
    pieces = []
    for i in sorted(buckets):
        idx = buckets[i]
        part = mul(A, B.take_cols(idx))
        pieces.append((idx, part))
    L = max((part.length for _, part in pieces), default=0)
    out = np.zeros((L, A.rows, B.cols), dtype=A.ctx.dtype)
    for idx, part in pieces:
        out[: part.length, :, idx] = part.coeffs
    return PolyMatrix(out, A.ctx, canonical=True)


def transpose(M: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(np.ascontiguousarray(M.coeffs.transpose(0, 2, 1)), M.ctx, canonical=True)


def constant_term(M: PolyMatrix) -> np.ndarray:
    return M.coeff(0)


def _pad(M: PolyMatrix, L: int) -> np.ndarray:
    out = np.zeros((L,) + M.shape, dtype=M.ctx.dtype)
    out[: M.length] = M.coeffs
    return out


def vstack(mats: Sequence[PolyMatrix]) -> PolyMatrix:
    ctx = mats[0].ctx
    L = max(m.length for m in mats)
    return PolyMatrix(np.concatenate([_pad(m, L) for m in mats], axis=1), ctx, canonical=True)


def hstack(mats: Sequence[PolyMatrix]) -> PolyMatrix:
    ctx = mats[0].ctx
    L = max(m.length for m in mats)
    return PolyMatrix(np.concatenate([_pad(m, L) for m in mats], axis=2), ctx, canonical=True)


def vsplit(M: PolyMatrix, k: int) -> tuple[PolyMatrix, PolyMatrix]:
    """Top ``k`` rows and the remaining rows."""
    if not 0 <= k <= M.rows:
        raise IndexError(f"split index {k} outside [0, {M.rows}]")
    return M.take_rows(range(k)), M.take_rows(range(k, M.rows))


def hsplit(M: PolyMatrix, k: int) -> tuple[PolyMatrix, PolyMatrix]:
    """Left ``k`` columns and the remaining columns."""
    if not 0 <= k <= M.cols:
        raise IndexError(f"split index {k} outside [0, {M.cols}]")
    return M.take_cols(range(k)), M.take_cols(range(k, M.cols))


# text format -------------------------------------------------------------

class MatrixFormatError(ValueError):
    pass


def render_matrix(M: PolyMatrix) -> str:
    lines = [f"{M.ctx.p} {M.rows} {M.cols}"]
    for i in range(M.rows):
        for j in range(M.cols):
            c = M[i, j].coeffs
            lines.append(",".join(str(v) for v in c) if c else "0")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> PolyMatrix:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise MatrixFormatError(f"header must be 'p nrows ncols', got {lines[0]!r}")
    try:
        p, rows, cols = (int(v) for v in head)
    except ValueError:
        raise MatrixFormatError(f"non-integer header {lines[0]!r}") from None
    if rows < 0 or cols < 0:
        raise MatrixFormatError("negative dimensions")
    ctx = FieldContext(p)
    body = lines[1:]
    if len(body) != rows * cols:
        raise MatrixFormatError(f"expected {rows * cols} entry lines, found {len(body)}")
    grid = []
    for i in range(rows):
        row = []
        for j in range(cols):
            raw = body[i * cols + j].strip("[] ")
            try:
                row.append([int(t) for t in raw.split(",") if t.strip()] if raw else [])
            except ValueError:
                raise MatrixFormatError(f"bad entry ({i}, {j}): {body[i * cols + j]!r}") from None
        grid.append(row)
    return PolyMatrix.from_entries(grid, ctx, cols=cols)
