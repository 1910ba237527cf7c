"""Integer lattices: hyperbolic integers Z_D, the subring G_D = Z[j], and dual
Gaussian integers G_A = Z[e].

``HInt`` stores a hyperbolic integer by its idempotent coordinates
``(n1, n2)``.  Every such pair is a hyperbolic integer; the pair lies in G_D
exactly when ``n1`` and ``n2`` have the same parity.  G_D is therefore not a
separate type, only a predicate (:func:`in_gd`) and a checked constructor
(:func:`gd`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import DNum, HNum, format_dnum, format_hnum
from .errors import BadBaseShape, ZeroDivisorModulus


@dataclass(frozen=True, slots=True)
class HInt:
    n1: int
    n2: int

    @classmethod
    def from_std(cls, x: int, y: int) -> "HInt":
        return cls(x + y, x - y)

    @classmethod
    def scalar(cls, c: int) -> "HInt":
        return cls(c, c)

    @property
    def x(self):
        return HNum(self.n1, self.n2).x

    @property
    def y(self):
        return HNum(self.n1, self.n2).y

    def std(self) -> tuple[int, int]:
        """Standard coordinates; only meaningful for G_D members."""
        if (self.n1 - self.n2) % 2:
            raise ValueError(f"{self} is not in G_D")
        return (self.n1 + self.n2) // 2, (self.n1 - self.n2) // 2

    def to_hnum(self) -> HNum:
        return HNum(self.n1, self.n2)

    def coords(self) -> tuple[int, int]:
        return self.n1, self.n2

    def _coerce(self, other):
        if isinstance(other, HInt):
            return other
        if isinstance(other, int):
            return HInt(other, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HInt(self.n1 + o.n1, self.n2 + o.n2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HInt(self.n1 - o.n1, self.n2 - o.n2)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return HInt(self.n1 * o.n1, self.n2 * o.n2)

    __rmul__ = __mul__

    def __neg__(self):
        return HInt(-self.n1, -self.n2)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("exponent must be non-negative")
        return HInt(self.n1**n, self.n2**n)

    def conj(self) -> "HInt":
        return HInt(self.n2, self.n1)

    def norm(self) -> int:
        return self.n1 * self.n2

    def __str__(self):
        return format_hnum(self.to_hnum())


@dataclass(frozen=True, slots=True)
class DGaussInt:
    x: int
    y: int

    @classmethod
    def scalar(cls, c: int) -> "DGaussInt":
        return cls(c, 0)

    def to_dnum(self) -> DNum:
        return DNum(self.x, self.y)

    def coords(self) -> tuple[int, int]:
        return self.x, self.y

    def _coerce(self, other):
        if isinstance(other, DGaussInt):
            return other
        if isinstance(other, int):
            return DGaussInt(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DGaussInt(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DGaussInt(self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return DGaussInt(self.x * o.x, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def __neg__(self):
        return DGaussInt(-self.x, -self.y)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("exponent must be non-negative")
        if n == 0:
            return DGaussInt(1, 0)
        return DGaussInt(self.x**n, n * self.x ** (n - 1) * self.y)

    def conj(self) -> "DGaussInt":
        return DGaussInt(self.x, -self.y)

    def norm(self) -> int:
        return self.x * self.x

    def __str__(self):
        return format_dnum(self.to_dnum())


RingElement = Union[HInt, DGaussInt]


@dataclass(frozen=True, slots=True)
class MqPair:
    """Coordinates ``(m, n)`` of ``m + n*q`` for a fixed base ``q``."""

    m: int
    n: int


# --------------------------------------------------------------------------
# Z_D


def in_gd(v: HInt) -> bool:
    return (v.n1 - v.n2) % 2 == 0


def gd(x: int, y: int) -> HInt:
    """The hyperbolic Gaussian integer ``x + j*y``."""
    return HInt.from_std(x, y)


def h_divides(w: HInt, v: HInt) -> bool:
    """Whether ``w`` divides ``v`` in Z_D (componentwise)."""
    for wi, vi in ((w.n1, v.n1), (w.n2, v.n2)):
        if wi == 0:
            if vi != 0:
                return False
        elif vi % wi:
            return False
    return True


def h_divmod(v: HInt, w: HInt) -> tuple[HInt, HInt]:
    """Return ``(tau, phi)`` with ``v == tau + phi*w`` and ``0 <= tau <= |w| - 1``."""
    if w.n1 == 0 or w.n2 == 0:
        raise ZeroDivisorModulus(f"modulus {w} has zero norm")
    t1 = v.n1 % abs(w.n1)
    t2 = v.n2 % abs(w.n2)
    return HInt(t1, t2), HInt((v.n1 - t1) // w.n1, (v.n2 - t2) // w.n2)


def residue_count(w: HInt) -> int:
    """Size of Z_D / w Z_D, i.e. ``N_D(|w|)``."""
    if w.n1 == 0 or w.n2 == 0:
        raise ZeroDivisorModulus(f"modulus {w} has zero norm")
    return abs(w.n1) * abs(w.n2)


def residues(w: HInt) -> list[HInt]:
    """Representatives ``0 <= nu <= |w| - 1`` in row-major order (n1 outer)."""
    residue_count(w)
    return [HInt(i, k) for i in range(abs(w.n1)) for k in range(abs(w.n2))]


def binary_classes() -> list[HInt]:
    """Representatives of Z_D / 2 Z_D: ``0, 1, e1, e2``."""
    return [HInt(0, 0), HInt(1, 1), HInt(1, 0), HInt(0, 1)]


def h_exact_div(v: HInt, w: HInt) -> Optional[HInt]:
    """``v / w`` in Z_D, or ``None`` when ``w`` does not divide ``v``."""
    if w.n1 == 0 or w.n2 == 0:
        raise ZeroDivisorModulus(f"modulus {w} has zero norm")
    if v.n1 % w.n1 or v.n2 % w.n2:
        return None
    return HInt(v.n1 // w.n1, v.n2 // w.n2)


# --------------------------------------------------------------------------
# G_D and G_A divisibility


def gd_divides(q: HInt, v: HInt) -> tuple[bool, Optional[HInt]]:
    """Divisibility in G_D; returns ``(True, kappa)`` with ``v == kappa*q``."""
    n = q.norm()
    if n == 0:
        raise ZeroDivisorModulus(f"modulus {q} has zero norm")
    qx, qy = q.std()
    vx, vy = v.std()
    # v * conj(q) in standard coordinates
    px = vx * qx - vy * qy
    py = vy * qx - vx * qy
    if px % n or py % n:
        return False, None
    return True, gd(px // n, py // n)


def ga_divides(q: DGaussInt, v: DGaussInt) -> tuple[bool, Optional[DGaussInt]]:
    """Divisibility in G_A; returns ``(True, kappa)`` with ``v == kappa*q``."""
    n = q.norm()
    if n == 0:
        raise ZeroDivisorModulus(f"modulus {q} has zero norm")
    p = v * q.conj()
    if p.x % n or p.y % n:
        return False, None
    return True, DGaussInt(p.x // n, p.y // n)


def g_divides(q: RingElement, v: RingElement):
    """Dispatch to :func:`gd_divides` or :func:`ga_divides` by element type."""
    if isinstance(q, DGaussInt):
        return ga_divides(q, v)
    return gd_divides(q, v)


# --------------------------------------------------------------------------
# m + n q coordinates


def to_mq(v: RingElement, q: RingElement) -> MqPair:
    """Write ``v = m + n*q``.

    Needs ``q`` of canonical shape: ``|p1 - p2| == 1`` for a hyperbolic
    integer base acting on Z_D, or imaginary part ``±1`` for G_D and G_A.
    A hyperbolic ``v`` with mixed parity is treated as a Z_D element.
    """
    if isinstance(q, DGaussInt):
        if q.y not in (1, -1):
            raise BadBaseShape(f"{q} does not have imaginary part ±1")
        # e = b (q - a)
        return MqPair(v.x - q.x * q.y * v.y, q.y * v.y)
    s = q.n1 - q.n2
    if s in (1, -1):
        n = (v.n1 - v.n2) * s
        return MqPair(v.n1 - n * q.n1, n)
    if s in (2, -2) and in_gd(v):
        a, b = q.std()
        x, y = v.std()
        return MqPair(x - a * b * y, b * y)
    raise BadBaseShape(f"coordinate change to m + n*q is not unimodular for q = {q}")


def from_mq(p: MqPair, q: RingElement) -> RingElement:
    if isinstance(q, DGaussInt):
        return DGaussInt(p.m + p.n * q.x, p.n * q.y)
    return HInt(p.m + p.n * q.n1, p.m + p.n * q.n2)


# --------------------------------------------------------------------------
# Canonical residue keys


def lattice_coords(v: RingElement) -> tuple[int, int]:
    """Integer coordinates used for lattice computations.

    Z_D and G_D members both use ``(n1, n2)``; G_A uses ``(x, y)``.
    """
    return v.coords()


def quotient_key(q: RingElement, ring: str):
    """Return ``key(v)`` canonical on classes of ``R / qR``.

    ``ring`` is ``"ZD"``, ``"GD"`` or ``"GA"``.  Coordinates are ``(n1, n2)``
    for Z_D and ``(x, y)`` for G_D and G_A; the sublattice ``qR`` is brought
    to triangular form ``{(h1, c), (0, h2)}``.
    """
    if ring == "ZD":
        v1, v2 = (q.n1, 0), (0, q.n2)
    elif ring == "GD":
        a, b = q.std()
        v1, v2 = (a, b), (b, a)
    elif ring == "GA":
        v1, v2 = (q.x, q.y), (0, q.x)
    else:
        raise ValueError(f"unknown ring {ring!r}")
    det = v1[0] * v2[1] - v1[1] * v2[0]
    if det == 0:
        raise ZeroDivisorModulus(f"modulus {q} has zero norm")
    h1, s, t = _xgcd(v1[0], v2[0])
    c = s * v1[1] + t * v2[1]
    h2 = abs(det) // h1
    c %= h2

    if ring == "GD":
        def key(v):
            x, y = v.std()
            k = x // h1
            return x - k * h1, (y - k * c) % h2
    else:
        def key(v):
            x, y = v.coords()
            k = x // h1
            return x - k * h1, (y - k * c) % h2

    key.size = abs(det)
    return key


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) > 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
