"""Exact arithmetic on hyperbolic (split-complex) and dual numbers.

Hyperbolic numbers ``x + j y`` (``j**2 == 1``) are stored in the idempotent
basis ``e1 = (1 + j)/2``, ``e2 = (1 - j)/2`` as the pair ``(p1, p2)`` with
``p1 = x + y`` and ``p2 = x - y``.  Multiplication, the norm, the order and
divisibility are all componentwise in that basis.

Dual numbers ``x + e y`` (``e**2 == 0``) are stored in the standard basis.

All scalars are :class:`fractions.Fraction`; the only inexact value in this
module is :func:`norm_A`, which returns a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import NotInvertible

Rat = Fraction
Scalar = Union[int, Fraction]


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rat(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


# --------------------------------------------------------------------------
# Hyperbolic numbers


@dataclass(frozen=True, slots=True)
class HNum:
    """Hyperbolic number in idempotent coordinates ``p1*e1 + p2*e2``."""

    p1: Fraction
    p2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p1", rat(self.p1))
        object.__setattr__(self, "p2", rat(self.p2))

    @classmethod
    def from_std(cls, x, y) -> "HNum":
        x, y = rat(x), rat(y)
        return cls(x + y, x - y)

    @classmethod
    def scalar(cls, c) -> "HNum":
        return cls(c, c)

    @property
    def x(self) -> Fraction:
        return (self.p1 + self.p2) / 2

    @property
    def y(self) -> Fraction:
        return (self.p1 - self.p2) / 2

    def _coerce(self, other):
        if isinstance(other, HNum):
            return other
        if isinstance(other, (int, Fraction)):
            return HNum(other, other)
        to_hnum = getattr(other, "to_hnum", None)
        if to_hnum is not None:
            return to_hnum()
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HNum(self.p1 + o.p1, self.p2 + o.p2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HNum(self.p1 - o.p1, self.p2 - o.p2)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HNum(self.p1 * o.p1, self.p2 * o.p2)

    __rmul__ = __mul__

    def __neg__(self):
        return HNum(-self.p1, -self.p2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * h_inv(o)

    def __pow__(self, n: int):
        return h_pow(self, n)

    def conj(self) -> "HNum":
        return HNum(self.p2, self.p1)

    def __str__(self):
        return format_hnum(self)


E1 = HNum(1, 0)
E2 = HNum(0, 1)
J = HNum(1, -1)
H_ONE = HNum(1, 1)
H_ZERO = HNum(0, 0)


def h_add(a: HNum, b: HNum) -> HNum:
    return HNum(a.p1 + b.p1, a.p2 + b.p2)


def h_mul(a: HNum, b: HNum) -> HNum:
    return HNum(a.p1 * b.p1, a.p2 * b.p2)


def h_conj(a: HNum) -> HNum:
    return HNum(a.p2, a.p1)


def h_norm(z: HNum) -> Fraction:
    """``z * conj(z)``, i.e. ``x**2 - y**2``; multiplicative and sign-indefinite."""
    return z.p1 * z.p2


def h_inv(z: HNum) -> HNum:
    if z.p1 == 0 or z.p2 == 0:
        raise NotInvertible(f"{z} is a zero divisor")
    return HNum(1 / z.p1, 1 / z.p2)


def h_pow(z: HNum, n: int) -> HNum:
    if n < 0:
        raise ValueError("exponent must be non-negative")
    return HNum(z.p1**n, z.p2**n)


def h_leq(a: HNum, b: HNum) -> bool:
    """Componentwise partial order on the idempotent coordinates."""
    return a.p1 <= b.p1 and a.p2 <= b.p2


def h_abs(z: HNum) -> HNum:
    return HNum(abs(z.p1), abs(z.p2))


def norm_D(z: HNum) -> Fraction:
    """Supremum norm in the idempotent basis, ``max(|x + y|, |x - y|)``."""
    return max(abs(z.p1), abs(z.p2))


# --------------------------------------------------------------------------
# Dual numbers


@dataclass(frozen=True, slots=True)
class DNum:
    """Dual number ``x + e*y`` with ``e**2 == 0``."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rat(self.x))
        object.__setattr__(self, "y", rat(self.y))

    @classmethod
    def scalar(cls, c) -> "DNum":
        return cls(c, 0)

    def _coerce(self, other):
        if isinstance(other, DNum):
            return other
        if isinstance(other, (int, Fraction)):
            return DNum(other, 0)
        to_dnum = getattr(other, "to_dnum", None)
        if to_dnum is not None:
            return to_dnum()
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DNum(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DNum(self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return d_mul(self, o)

    __rmul__ = __mul__

    def __neg__(self):
        return DNum(-self.x, -self.y)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return d_mul(self, d_inv(o))

    def __pow__(self, n: int):
        return d_pow(self, n)

    def conj(self) -> "DNum":
        return DNum(self.x, -self.y)

    def __str__(self):
        return format_dnum(self)


EPS = DNum(0, 1)
D_ONE = DNum(1, 0)
D_ZERO = DNum(0, 0)


def d_add(a: DNum, b: DNum) -> DNum:
    return DNum(a.x + b.x, a.y + b.y)


def d_mul(a: DNum, b: DNum) -> DNum:
    return DNum(a.x * b.x, a.x * b.y + b.x * a.y)


def d_conj(a: DNum) -> DNum:
    return DNum(a.x, -a.y)


def d_norm(z: DNum) -> Fraction:
    return z.x * z.x


def d_inv(z: DNum) -> DNum:
    if z.x == 0:
        raise NotInvertible(f"{z} is a zero divisor")
    return DNum(1 / z.x, -z.y / (z.x * z.x))


def d_pow(z: DNum, n: int) -> DNum:
    if n < 0:
        raise ValueError("exponent must be non-negative")
    if n == 0:
        return D_ONE
    # (x + e y)^n = x^n + e n x^(n-1) y
    return DNum(z.x**n, n * z.x ** (n - 1) * z.y)


def d_leq(a: DNum, b: DNum) -> bool:
    """Order with positive cone ``{x >= 0, y >= 0}``."""
    return a.x <= b.x and a.y <= b.y


def d_abs(z: DNum) -> DNum:
    return DNum(abs(z.x), abs(z.y))


def norm_A(z: DNum) -> float:
    """Lattice algebra norm of a dual number.

    Largest singular value of ``[[x, 0], [y, x]]``:
    ``sqrt(x^2 + y^2/2 + |y|/2 * sqrt(y^2 + 4 x^2))``.
    """
    x2 = z.x * z.x
    y2 = z.y * z.y
    inner = math.sqrt(y2 + 4 * x2)
    return math.sqrt(float(x2 + y2 / 2) + float(abs(z.y)) / 2 * inner)


# --------------------------------------------------------------------------
# Text forms


def _format_unit_term(coef: Fraction, unit: str, leading: bool) -> str:
    if coef == 0:
        return ""
    sign = "-" if coef < 0 else ("" if leading else "+")
    mag = abs(coef)
    body = unit if mag == 1 else unit + format_rat(mag)
    return sign + body


def _format_std(x: Fraction, y: Fraction, unit: str) -> str:
    if x == 0 and y == 0:
        return "0"
    head = format_rat(x) if x != 0 else ""
    return head + _format_unit_term(y, unit, leading=(x == 0))


def format_hnum(z: HNum, view: str = "idem") -> str:
    """``h(p1,p2)`` in idempotent coordinates, or ``x+jy`` with ``view="std"``."""
    if view == "std":
        return _format_std(z.x, z.y, "j")
    return f"h({format_rat(z.p1)},{format_rat(z.p2)})"


def format_dnum(z: DNum) -> str:
    return _format_std(z.x, z.y, "e")
