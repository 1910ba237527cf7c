"""Text forms for bases, values and digit strings.

Grammar (whitespace is ignored)::

    base    := "hN(" int "," int ")" | "hC(" int [",mirror"] ")"
             | "hCq(" int "," int ")" | "hG(" int "," sint ")" | "dG(" int "," sint ")"
    string  := digits [ "." digits ]          big-endian
    digit   := int | "(" int "," int ")"      pairs only for hN
    value   := "h(" rat "," rat ")" | term { ("+"|"-") term }
    term    := rat | unit [rat] | rat unit    unit is "j" or "e"
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .algebra import DNum, HNum, format_dnum, format_hnum
from .errors import ParseError
from .numsys import Base, DigitString, Family
from .rings import DGaussInt, HInt

_INT = re.compile(r"[+-]?\d+")
_UINT_RAT = re.compile(r"\d+(?:/\d+)?")


class _Scanner:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.raw = text
        self.pos = 0

    def fail(self, message: str):
        raise ParseError(message, self.raw, self.pos)

    def peek(self) -> str:
        return self.text[self.pos : self.pos + 1]

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def accept(self, s: str) -> bool:
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.accept(s):
            self.fail(f"expected {s!r}")

    def int(self) -> int:
        m = _INT.match(self.text, self.pos)
        if not m:
            self.fail("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def urat(self):
        m = _UINT_RAT.match(self.text, self.pos)
        if not m:
            return None
        try:
            r = Fraction(m.group())
        except ZeroDivisionError:
            self.fail("zero denominator")
        self.pos = m.end()
        return r

    def rat(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        if sign == 1:
            self.accept("+")
        r = self.urat()
        if r is None:
            self.fail("expected a rational")
        return sign * r

    def end(self):
        if not self.at_end():
            self.fail("unexpected trailing text")


# --------------------------------------------------------------------------
# Rationals and plane values


def parse_rat(text: str) -> Fraction:
    s = _Scanner(text)
    r = s.rat()
    s.end()
    return r


def _parse_std(s: _Scanner, unit: str) -> tuple[Fraction, Fraction]:
    """``term {(+|-) term}`` with terms ``rat``, ``unit [rat]`` or ``rat unit``."""
    x = Fraction(0)
    y = Fraction(0)
    first = True
    while first or not s.at_end():
        if s.accept("-"):
            sign = -1
        elif s.accept("+"):
            sign = 1
        elif first:
            sign = 1
        else:
            s.fail("expected '+' or '-'")
        first = False
        if s.accept(unit):
            r = s.urat()
            y += sign * (1 if r is None else r)
            continue
        r = s.urat()
        if r is None:
            s.fail(f"expected a rational or {unit!r}")
        if s.accept("*" + unit) or s.accept(unit):
            y += sign * r
        else:
            x += sign * r
    return x, y


def parse_hnum(text: str) -> HNum:
    """``h(p1,p2)`` in idempotent coordinates, or ``x+jy``."""
    s = _Scanner(text)
    if s.accept("h("):
        p1 = s.rat()
        s.expect(",")
        p2 = s.rat()
        s.expect(")")
        s.end()
        return HNum(p1, p2)
    if s.at_end():
        s.fail("empty value")
    x, y = _parse_std(s, "j")
    return HNum.from_std(x, y)


def parse_dnum(text: str) -> DNum:
    s = _Scanner(text.replace("ε", "e"))
    if s.at_end():
        s.fail("empty value")
    x, y = _parse_std(s, "e")
    return DNum(x, y)


def parse_point(text: str, base: Base) -> Union[HNum, DNum]:
    if base.ring == "GA":
        return parse_dnum(text)
    return parse_hnum(text)


def parse_element(text: str, base: Base):
    """A lattice element of the base's ring."""
    z = parse_point(text, base)
    if base.ring == "GA":
        if z.x.denominator != 1 or z.y.denominator != 1:
            raise ParseError("not a dual Gaussian integer", text, 0)
        return DGaussInt(int(z.x), int(z.y))
    if z.p1.denominator != 1 or z.p2.denominator != 1:
        raise ParseError("not a hyperbolic integer", text, 0)
    v = HInt(int(z.p1), int(z.p2))
    if base.ring == "GD" and (v.n1 - v.n2) % 2:
        raise ParseError("not a hyperbolic Gaussian integer", text, 0)
    return v


def format_point(z, base: Base) -> str:
    """Render a ring element or plane point in the ring's preferred view."""
    if isinstance(z, (HInt, DGaussInt)):
        z = base.to_plane(z)
    if isinstance(z, DNum):
        return format_dnum(z)
    return format_hnum(z, "std" if base.ring == "GD" else "idem")


# --------------------------------------------------------------------------
# Bases


def parse_base(text: str) -> Base:
    s = _Scanner(text)
    try:
        if s.accept("hN("):
            p1 = s.int()
            s.expect(",")
            p2 = s.int()
            s.expect(")")
            base = Base.hyper_nh(p1, p2)
        elif s.accept("hCq("):
            p1 = s.int()
            s.expect(",")
            p2 = s.int()
            s.expect(")")
            base = Base(Family.HYPER_CANONICAL, HInt(p1, p2))
        elif s.accept("hC("):
            a = s.int()
            mirror = s.accept(",mirror")
            s.expect(")")
            base = Base.hyper_canonical(a, mirror)
        elif s.accept("hG(") or s.accept("dG("):
            fam = s.text[s.pos - 3 : s.pos - 1]
            a = s.int()
            s.expect(",")
            b = s.int()
            s.expect(")")
            base = Base.hgauss(a, b) if fam == "hG" else Base.dual(a, b)
        else:
            s.fail("expected a base descriptor hN, hC, hCq, hG or dG")
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None
    s.end()
    return base


# --------------------------------------------------------------------------
# Digit strings


def _parse_digit(s: _Scanner, base: Base):
    if base.family is Family.HYPER_NH:
        if s.accept("("):
            d1 = s.int()
            s.expect(",")
            d2 = s.int()
            s.expect(")")
            return HInt(d1, d2)
        d = s.int()
        return HInt(d, d)
    if s.peek() == "(":
        s.fail("pair digits are only valid for hN bases")
    return s.int()


def _parse_digits(s: _Scanner, base: Base) -> list:
    out = [_parse_digit(s, base)]
    while s.accept(","):
        out.append(_parse_digit(s, base))
    return out


def parse_digits(text: str, base: Base) -> DigitString:
    """Big-endian text to a little-endian :class:`DigitString`."""
    s = _Scanner(text)
    if s.at_end():
        s.fail("empty digit string")
    int_part = _parse_digits(s, base)
    frac = []
    if s.accept("."):
        frac = _parse_digits(s, base)
    s.end()
    return DigitString(base, tuple(reversed(int_part)), tuple(frac))


def format_digit(d) -> str:
    if isinstance(d, HInt):
        return f"({d.n1},{d.n2})"
    return str(d)


def format_digits(ds: DigitString) -> str:
    head = ",".join(format_digit(d) for d in reversed(ds.int_digits))
    if not ds.frac_digits:
        return head
    return head + "." + ",".join(format_digit(d) for d in ds.frac_digits)
