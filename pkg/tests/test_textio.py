from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperradix.algebra import DNum, HNum, format_dnum, format_hnum
from hyperradix.errors import ParseError
from hyperradix.numsys import Base, DigitString, encode
from hyperradix.rings import DGaussInt, HInt, gd
from hyperradix.textio import (
    format_digits,
    format_point,
    parse_base,
    parse_digits,
    parse_dnum,
    parse_element,
    parse_hnum,
    parse_rat,
)

F = Fraction
rats = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)


class TestValues:
    def test_rationals(self):
        assert parse_rat("1/3") == F(1, 3)
        assert parse_rat("-7/21") == F(-1, 3)
        assert parse_rat("+4") == 4

    def test_hyperbolic_forms(self):
        assert parse_hnum("h(6,3)") == HNum(6, 3)
        assert parse_hnum("h(1/2,-3)") == HNum(F(1, 2), -3)
        assert parse_hnum("1+j") == HNum(2, 0)
        assert parse_hnum("-1-j") == HNum(-2, 0)
        assert parse_hnum("2+j3") == parse_hnum("2+3j") == HNum.from_std(2, 3)
        assert parse_hnum("j") == HNum(1, -1)
        assert parse_hnum("1/3") == HNum(F(1, 3), F(1, 3))
        assert parse_hnum("-j1/4+1/2") == HNum.from_std(F(1, 2), F(-1, 4))

    def test_dual_forms(self):
        assert parse_dnum("1+e") == DNum(1, 1)
        assert parse_dnum("-1/2-e1/4") == DNum(F(-1, 2), F(-1, 4))
        assert parse_dnum("e") == DNum(0, 1)
        assert parse_dnum("1+ε") == DNum(1, 1)

    @pytest.mark.parametrize("text,pos", [("1+", 2), ("h(1,2", 5), ("1/0", 0), ("2x", 1), ("", 0)])
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as exc:
            parse_hnum(text)
        assert exc.value.position == pos

    @given(rats, rats)
    def test_hnum_roundtrip(self, a, b):
        z = HNum(a, b)
        assert parse_hnum(format_hnum(z)) == z
        assert parse_hnum(format_hnum(z, "std")) == z

    @given(rats, rats)
    def test_dnum_roundtrip(self, a, b):
        z = DNum(a, b)
        assert parse_dnum(format_dnum(z)) == z

    def test_elements(self):
        assert parse_element("h(6,3)", Base.hyper_nh(-2, -2)) == HInt(6, 3)
        assert parse_element("1+j", Base.hgauss(-3, 1)) == gd(1, 1)
        assert parse_element("5", Base.dual(-2, 1)) == DGaussInt(5, 0)
        with pytest.raises(ParseError):
            parse_element("h(1,0)", Base.hgauss(-3, 1))
        with pytest.raises(ParseError):
            parse_element("1/2", Base.dual(-2, 1))

    def test_format_point(self):
        assert format_point(gd(1, 1), Base.hgauss(-2, 1)) == "1+j"
        assert format_point(HInt(1, 0), Base.hyper_canonical(-1)) == "h(1,0)"
        assert format_point(DGaussInt(5, 0), Base.dual(-2, 1)) == "5"


class TestBases:
    @pytest.mark.parametrize(
        "text", ["hN(-2,-3)", "hC(-2)", "hC(-2,mirror)", "hCq(-3,-5)", "hG(-3,+1)", "hG(-3,-1)", "dG(-2,+1)", "dG(-3,-1)"]
    )
    def test_roundtrip(self, text):
        assert parse_base(text).descriptor == text

    def test_values(self):
        assert parse_base("hC(-2,mirror)") == Base.hyper_canonical(-2, True)
        assert parse_base("hG(-3,1)") == Base.hgauss(-3, 1)
        assert parse_base(" dG( -2 , +1 ) ") == Base.dual(-2, 1)

    @pytest.mark.parametrize("text", ["hX(1)", "hN(-2)", "hG(-3,+1", "hC(-2,mirrored)", "dG(-2,+1)x"])
    def test_rejects(self, text):
        with pytest.raises(ParseError):
            parse_base(text)


class TestDigits:
    def test_canonical(self):
        b = Base.dual(-2, 1)
        ds = parse_digits("1,3,0,1", b)
        assert ds.int_digits == (1, 0, 3, 1)
        assert format_digits(ds) == "1,3,0,1"

    def test_pairs(self):
        b = Base.hyper_nh(-2, -2)
        ds = parse_digits("(1,0),(1,0),(0,1),(1,1),(0,1)", b)
        assert ds == encode(HInt(6, 3), b)
        assert parse_digits("0.0,1,0,1", b).frac_digits == (HInt(0, 0), HInt(1, 1), HInt(0, 0), HInt(1, 1))

    def test_fraction_roundtrip(self):
        b = Base.hyper_nh(-2, -2)
        ds = DigitString(b, (HInt(1, 0),), (HInt(0, 0), HInt(1, 1)))
        assert format_digits(ds) == "(1,0).(0,0),(1,1)"
        assert parse_digits(format_digits(ds), b) == ds

    def test_rejects(self):
        with pytest.raises(ParseError):
            parse_digits("(1,0)", Base.dual(-2, 1))
        with pytest.raises(ParseError):
            parse_digits("1,,2", Base.dual(-2, 1))
        with pytest.raises(ParseError):
            parse_digits("", Base.dual(-2, 1))
