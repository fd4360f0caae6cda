"""
Copyright © 2026 The golayft developers.

Truncated Taylor arithmetic over exact rationals and over rational intervals with outward
rounding. Jet coefficients are f(x0), f'(x0), f''(x0)/2!, ...
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil, factorial, floor
from typing import List, Sequence, Union

# intervals are rounded outward to multiples of 2^-PRECISION
PRECISION = 256
_SCALE = 1 << PRECISION


def _down(v: Fraction) -> Fraction:
    if v.denominator <= _SCALE:
        return v
    return Fraction(floor(v * _SCALE), _SCALE)


def _up(v: Fraction) -> Fraction:
    if v.denominator <= _SCALE:
        return v
    return Fraction(ceil(v * _SCALE), _SCALE)


class Interval:
    """ closed rational interval [lo, hi]; every result encloses the exact one """
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = _down(lo)
        self.hi = _up(hi)

    def __repr__(self):
        return f"Interval({float(self.lo):.6g}, {float(self.hi):.6g})"

    @staticmethod
    def _coerce(other) -> "Interval":
        return other if isinstance(other, Interval) else Interval(other)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, v) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other):
        if isinstance(other, Jet):
            return NotImplemented
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        if isinstance(other, Jet):
            return NotImplemented
        o = self._coerce(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Jet):
            return NotImplemented
        o = self._coerce(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ValueError(f"interval {self} contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return NotImplemented
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int):
        if n < 0:
            return (self ** -n).reciprocal()
        if n == 0:
            return Interval(1)
        if n % 2 == 1 or self.lo >= 0:
            return Interval(self.lo ** n, self.hi ** n)
        if self.hi <= 0:
            return Interval(self.hi ** n, self.lo ** n)
        return Interval(0, max(self.lo ** n, self.hi ** n))


Scalar = Union[Fraction, Interval]


class Jet:
    """ truncated Taylor series of order len(c) - 1 """
    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        self.c: List = list(coeffs)

    @classmethod
    def variable(cls, x0, order: int) -> "Jet":
        return cls([x0, 1] + [0] * (order - 1)) if order >= 1 else cls([x0])

    @classmethod
    def constant(cls, v, order: int) -> "Jet":
        return cls([v] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def derivative(self, m: int):
        """ the m-th derivative at the expansion point """
        return self.c[m] * factorial(m)

    def _like(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError(f"jets of orders {self.order} and {other.order}")
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other):
        o = self._like(other)
        return Jet([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c])

    def __sub__(self, other):
        o = self._like(other)
        return Jet([a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return self._like(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet([a * other for a in self.c])
        o = self._like(other)
        m = len(self.c)
        out = []
        for k in range(m):
            s = 0
            for j in range(k + 1):
                s = s + self.c[j] * o.c[k - j]
            out.append(s)
        return Jet(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        a0 = self.c[0]
        if isinstance(a0, Interval):
            inv0 = a0.reciprocal()
        else:
            if a0 == 0:
                raise ValueError("reciprocal of a jet vanishing at its expansion point")
            inv0 = 1 / Fraction(a0)
        out = [inv0]
        for k in range(1, len(self.c)):
            s = 0
            for j in range(1, k + 1):
                s = s + self.c[j] * out[k - j]
            out.append(-(s * inv0))
        return Jet(out)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            if isinstance(other, Interval):
                return self * other.reciprocal()
            return Jet([a / Fraction(other) for a in self.c])
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._like(other) * self.reciprocal()

    def __pow__(self, n: int):
        if n < 0:
            return (self ** -n).reciprocal()
        result = Jet.constant(1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result


def lower(v) -> Fraction:
    return v.lo if isinstance(v, Interval) else Fraction(v)


def upper(v) -> Fraction:
    return v.hi if isinstance(v, Interval) else Fraction(v)
