import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperradix.errors import BadBaseShape, ZeroDivisorModulus
from hyperradix.rings import (
    DGaussInt,
    HInt,
    MqPair,
    binary_classes,
    from_mq,
    g_divides,
    gd,
    h_divides,
    h_divmod,
    h_exact_div,
    in_gd,
    quotient_key,
    residue_count,
    residues,
    to_mq,
)

ints = st.integers(-10**6, 10**6)
hints = st.builds(HInt, ints, ints)


def congruent_box(a: HInt, b: HInt, w: HInt) -> bool:
    """Search kappa with a - b == kappa*w directly."""
    d = a - b
    bound = max(abs(d.n1), abs(d.n2))
    return any(HInt(k1, k2) * w == d for k1 in range(-bound, bound + 1) for k2 in range(-bound, bound + 1))


class TestDivisibility:
    def test_h_divides(self):
        assert h_divides(HInt(2, 3), HInt(6, -9))
        assert not h_divides(HInt(2, 0), HInt(4, 1))
        assert not h_divides(HInt(-1, -2), HInt(1, 1))

    def test_h_divmod_example(self):
        tau, phi = h_divmod(HInt(7, 5), HInt(2, -3))
        assert (tau, phi) == (HInt(1, 2), HInt(3, -1))
        assert tau + phi * HInt(2, -3) == HInt(7, 5)

    def test_h_divmod_trivial(self):
        v = HInt(-13, 8)
        assert h_divmod(v, HInt(1, 1)) == (HInt(0, 0), v)
        assert h_divmod(HInt(0, 0), HInt(4, -7)) == (HInt(0, 0), HInt(0, 0))

    def test_zero_modulus(self):
        with pytest.raises(ZeroDivisorModulus):
            h_divmod(HInt(1, 1), HInt(0, 3))
        with pytest.raises(ZeroDivisorModulus):
            residue_count(HInt(2, 0))

    def test_exact_div(self):
        assert h_exact_div(HInt(6, -9), HInt(2, 3)) == HInt(3, -3)
        assert h_exact_div(HInt(6, -8), HInt(2, 3)) is None

    @pytest.mark.parametrize("w1", [-5, -3, -1, 1, 2, 5])
    @pytest.mark.parametrize("w2", [-4, -2, 1, 3])
    def test_divmod_unique(self, w1, w2):
        w = HInt(w1, w2)
        for n1 in range(-30, 31, 7):
            for n2 in range(-30, 31, 5):
                v = HInt(n1, n2)
                sols = [
                    (HInt(t1, t2), HInt((n1 - t1) // w1, (n2 - t2) // w2))
                    for t1 in range(abs(w1))
                    for t2 in range(abs(w2))
                    if (n1 - t1) % w1 == 0 and (n2 - t2) % w2 == 0
                ]
                assert sols == [h_divmod(v, w)]

    @given(hints, st.builds(HInt, st.integers(-50, 50).filter(bool), st.integers(-50, 50).filter(bool)))
    def test_divmod_contract(self, v, w):
        tau, phi = h_divmod(v, w)
        assert tau + phi * w == v
        assert 0 <= tau.n1 < abs(w.n1) and 0 <= tau.n2 < abs(w.n2)


class TestResidues:
    def test_counts(self):
        assert residue_count(HInt(2, -3)) == 6
        assert residue_count(HInt(1, 5)) == 5

    def test_negabinary_digits(self):
        assert residues(HInt(-2, -2)) == [HInt(0, 0), HInt(0, 1), HInt(1, 0), HInt(1, 1)]

    def test_binary_classes(self):
        classes = binary_classes()
        assert classes == [HInt(0, 0), HInt(1, 1), HInt(1, 0), HInt(0, 1)]
        two = HInt(2, 2)
        for n1 in range(-20, 21):
            for n2 in range(-20, 21):
                v = HInt(n1, n2)
                hits = [c for c in classes if h_divides(two, v - c)]
                assert len(hits) == 1
                assert in_gd(v) == (hits[0] in (HInt(0, 0), HInt(1, 1)))

    @pytest.mark.parametrize("w", [HInt(2, -3), HInt(-2, -2), HInt(3, 1), HInt(-1, 4)])
    def test_residues_complete(self, w):
        res = residues(w)
        assert len(res) == residue_count(w)
        for i, a in enumerate(res):
            for b in res[i + 1 :]:
                assert not congruent_box(a, b, w)
        for n1 in range(-6, 7):
            for n2 in range(-6, 7):
                v = HInt(n1, n2)
                assert sum(h_divides(w, v - r) for r in res) == 1


class TestGaussian:
    def test_gd_example(self):
        ok, kappa = g_divides(gd(-2, 1), gd(3, 0))
        assert ok and kappa == gd(-2, -1)
        assert kappa * gd(-2, 1) == gd(3, 0)

    def test_ga_examples(self):
        q = DGaussInt(-2, 1)
        ok, kappa = g_divides(q, DGaussInt(4, 0))
        assert ok and kappa == DGaussInt(-2, -1)
        assert g_divides(q, DGaussInt(2, 0)) == (False, None)

    @pytest.mark.parametrize("a", [-4, -3, -2])
    def test_gd_integer_divisibility(self, a):
        q = gd(a, 1)
        for c in range(-40, 41):
            assert g_divides(q, gd(c, 0))[0] == (c % (a * a - 1) == 0)

    @pytest.mark.parametrize("q", [gd(-3, 1), gd(-2, -1), gd(-4, 2)])
    def test_gd_matches_search(self, q):
        for x in range(-6, 7):
            for y in range(-6, 7):
                v = gd(x, y)
                found = [k for k in (gd(s, t) for s in range(-8, 9) for t in range(-8, 9)) if k * q == v]
                ok, kappa = g_divides(q, v)
                assert ok == bool(found)
                if ok:
                    assert found == [kappa]

    @pytest.mark.parametrize("q", [DGaussInt(-2, 1), DGaussInt(-3, -1), DGaussInt(-2, 2)])
    def test_ga_matches_search(self, q):
        for x in range(-6, 7):
            for y in range(-6, 7):
                v = DGaussInt(x, y)
                found = [k for k in (DGaussInt(s, t) for s in range(-8, 9) for t in range(-20, 21)) if k * q == v]
                ok, kappa = g_divides(q, v)
                assert ok == bool(found)
                if ok:
                    assert found == [kappa]

    def test_gd_constructor(self):
        assert gd(1, 1) == HInt(2, 0)
        assert in_gd(HInt(2, 0)) and not in_gd(HInt(1, 0))
        with pytest.raises(ValueError):
            HInt(1, 0).std()


class TestMq:
    def test_examples(self):
        assert to_mq(HInt(1, 0), HInt(-1, -2)) == MqPair(2, 1)
        assert to_mq(gd(5, 3), gd(-3, 1)) == MqPair(5 + 9, 3)
        assert to_mq(DGaussInt(5, 3), DGaussInt(-2, 1)) == MqPair(11, 3)

    def test_bad_shape(self):
        with pytest.raises(BadBaseShape):
            to_mq(HInt(1, 0), HInt(-2, -5))
        with pytest.raises(BadBaseShape):
            to_mq(DGaussInt(1, 0), DGaussInt(-2, 2))

    @given(ints, ints, st.integers(-20, -1), st.booleans())
    def test_roundtrip_zd(self, n1, n2, a, mirror):
        q = HInt(a - 1, a) if mirror else HInt(a, a - 1)
        v = HInt(n1, n2)
        assert from_mq(to_mq(v, q), q) == v

    @given(ints, ints, st.integers(-20, -1), st.sampled_from([1, -1]))
    def test_roundtrip_gd(self, x, y, a, b):
        q = gd(a, b)
        v = gd(x, y)
        assert from_mq(to_mq(v, q), q) == v

    @given(ints, ints, st.integers(-20, 20), st.sampled_from([1, -1]))
    def test_roundtrip_ga(self, x, y, a, b):
        q = DGaussInt(a, b)
        v = DGaussInt(x, y)
        assert from_mq(to_mq(v, q), q) == v


class TestQuotientKey:
    @pytest.mark.parametrize(
        "q,ring,elem",
        [
            (HInt(-2, -3), "ZD", HInt),
            (gd(-3, 1), "GD", gd),
            (gd(-3, 2), "GD", gd),
            (DGaussInt(-2, 1), "GA", DGaussInt),
            (DGaussInt(-3, 2), "GA", DGaussInt),
        ],
    )
    def test_key_is_class_invariant(self, q, ring, elem):
        key = quotient_key(q, ring)
        assert key.size == abs(q.norm())
        seen = set()
        for x in range(-8, 9):
            for y in range(-8, 9):
                v = elem(x, y)
                assert key(v) == key(v + q * elem(1, 0)) == key(v - q * elem(0, 1))
                seen.add(key(v))
        assert len(seen) == key.size
