"""Arithmetic in the prime field Z/pZ."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Bases sufficient for a deterministic Miller-Rabin test below 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Below this bound coefficient arrays are int64 and products are split into
# 16-bit limbs before accumulation; above it we fall back to object arrays.
INT64_PRIME_LIMIT = 1 << 31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ContextMismatch(ValueError):
    """Operands live in different fields."""


@dataclass(frozen=True)
class FieldContext:
    """The field Z/pZ for a prime ``p``.

    Immutable; every polynomial, matrix and element carries one.
    """

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an integer, got {self.p!r}")
        if self.p >= 1 << 64:
            raise ValueError("moduli beyond one machine word are not supported")
        if not is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not prime")
        object.__setattr__(self, "p", int(self.p))

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(int(value) % self.p, self)

    @property
    def dtype(self):
        return np.int64 if self.p < INT64_PRIME_LIMIT else object

    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def inv(self, a: int) -> int:
        """Inverse of a residue, as a plain int."""
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse modulo {self.p}")
        return pow(a, -1, self.p)

    def balanced(self, a: int) -> int:
        a %= self.p
        return a - self.p if a > self.p // 2 else a


@dataclass(frozen=True)
class FieldElement:
    value: int
    ctx: FieldContext

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.p:
            object.__setattr__(self, "value", self.value % self.ctx.p)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"Z/{self.ctx.p} vs Z/{other.ctx.p}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value + b) % self.ctx.p, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement((self.value - b) % self.ctx.p, self.ctx)

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement((b - self.value) % self.ctx.p, self.ctx)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b % self.ctx.p, self.ctx)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.ctx.p, self.ctx)

    def inv(self) -> FieldElement:
        return FieldElement(self.ctx.inv(self.value), self.ctx)

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return self * self.ctx.inv(b)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.p})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inv()
