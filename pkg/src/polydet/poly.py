"""Dense univariate polynomials over Z/pZ.

Coefficients are stored as a tuple of canonical residues in ascending
degree order.  The zero polynomial is the empty tuple and has degree
``NEG_INF``, which compares below every integer.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .field import ContextMismatch, FieldContext, FieldElement

NEG_INF = float("-inf")

KARATSUBA_THRESHOLD = 32


class InexactDivision(ArithmeticError):
    """A division that was required to be exact left a remainder."""


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add_lists(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return out


def _sub_lists(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    for i, v in enumerate(b):
        out[i] = (out[i] - v) % p
    return out


def _schoolbook(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return [v % p for v in out]


def _karatsuba(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    if len(b) < KARATSUBA_THRESHOLD:
        return _schoolbook(a, b, p)
    half = len(a) // 2
    out = [0] * (len(a) + len(b) - 1)
    a0, a1 = a[:half], a[half:]
    if len(b) <= half:
        # unbalanced: split the longer operand only
        for i, v in enumerate(_karatsuba(a0, b, p)):
            out[i] += v
        for i, v in enumerate(_karatsuba(a1, b, p)):
            out[i + half] += v
        return [v % p for v in out]
    b0, b1 = b[:half], b[half:]
    z0 = _karatsuba(a0, b0, p)
    z2 = _karatsuba(a1, b1, p)
    z1 = _karatsuba(_add_lists(a0, a1, p), _add_lists(b0, b1, p), p)
    for i, v in enumerate(z0):
        out[i] += v
        out[i + half] -= v
    for i, v in enumerate(z2):
        out[i + 2 * half] += v
        out[i + half] -= v
    for i, v in enumerate(z1):
        out[i + half] += v
    return [v % p for v in out]


def mul_coeffs(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    return _trim(_karatsuba(a, b, p))


class Polynomial:
    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs: Iterable[int], ctx: FieldContext):
        p = ctx.p
        self.coeffs: tuple[int, ...] = tuple(_trim([int(c) % p for c in coeffs]))
        self.ctx = ctx

    @classmethod
    def _raw(cls, coeffs: list[int], ctx: FieldContext) -> Polynomial:
        # coeffs already canonical; only trims
        obj = cls.__new__(cls)
        obj.coeffs = tuple(_trim(coeffs))
        obj.ctx = ctx
        return obj

    @classmethod
    def zero(cls, ctx: FieldContext) -> Polynomial:
        return cls._raw([], ctx)

    @classmethod
    def constant(cls, c: int, ctx: FieldContext) -> Polynomial:
        return cls([c], ctx)

    @classmethod
    def x(cls, ctx: FieldContext, power: int = 1) -> Polynomial:
        return cls._raw([0] * power + [1], ctx)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _check(self, other: Polynomial) -> None:
        if other.ctx != self.ctx:
            raise ContextMismatch(f"Z/{self.ctx.p} vs Z/{other.ctx.p}")

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"Z/{self.ctx.p} vs Z/{other.ctx.p}")
            return Polynomial._raw([other.value], self.ctx)
        if isinstance(other, int):
            return Polynomial([other], self.ctx)
        return None

    def __add__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Polynomial._raw(_add_lists(self.coeffs, g.coeffs, self.ctx.p), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Polynomial._raw(_sub_lists(self.coeffs, g.coeffs, self.ctx.p), self.ctx)

    def __rsub__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return g - self

    def __neg__(self):
        p = self.ctx.p
        return Polynomial._raw([(-c) % p for c in self.coeffs], self.ctx)

    def __mul__(self, other):
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return Polynomial._raw(mul_coeffs(self.coeffs, g.coeffs, self.ctx.p), self.ctx)

    __rmul__ = __mul__

    def scale(self, c: int) -> Polynomial:
        p = self.ctx.p
        c %= p
        return Polynomial._raw([v * c % p for v in self.coeffs], self.ctx)

    def shift(self, e: int) -> Polynomial:
        """Multiply by x**e."""
        if not self.coeffs:
            return self
        return Polynomial._raw([0] * e + list(self.coeffs), self.ctx)

    def __divmod__(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.ctx.p
        r = list(self.coeffs)
        dg = len(other.coeffs) - 1
        if len(r) - 1 < dg:
            return Polynomial.zero(self.ctx), self
        inv_lc = self.ctx.inv(other.coeffs[-1])
        q = [0] * (len(r) - dg)
        g = other.coeffs
        for i in range(len(r) - 1 - dg, -1, -1):
            c = r[i + dg] * inv_lc % p
            q[i] = c
            if c:
                for j in range(dg + 1):
                    r[i + j] = (r[i + j] - c * g[j]) % p
        return Polynomial._raw(q, self.ctx), Polynomial._raw(r[:dg], self.ctx)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return divmod(self, other)[1]

    def __call__(self, a: int) -> int:
        p = self.ctx.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % p
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == tuple(_trim([other % self.ctx.p]))
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.ctx.p))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)}, p={self.ctx.p})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    def render(self, balanced: bool = False) -> str:
        """Ascending coefficient list, e.g. ``[0,0,2]``; ``[]`` for zero."""
        vals = [self.ctx.balanced(c) for c in self.coeffs] if balanced else self.coeffs
        return "[" + ",".join(str(v) for v in vals) + "]"


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def sub(f: Polynomial, g: Polynomial) -> Polynomial:
    return f - g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def eval_at_zero(f: Polynomial) -> FieldElement:
    return FieldElement(f[0], f.ctx)


def divmod_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``f / g``; raises :class:`InexactDivision` on a remainder."""
    q, r = divmod(f, g)
    if not r.is_zero():
        raise InexactDivision(f"{g!r} does not divide {f!r}")
    return q
