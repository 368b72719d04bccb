"""Power series arithmetic: pinned examples and structural properties."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moorealg.errors import (
    CompositionError,
    HeightUndefinedError,
    NotInvertibleError,
    ParseError,
    PrecisionError,
)
from moorealg.rings import CoeffRing
from moorealg.series import (
    PowerSeries,
    compose,
    derivative,
    format_series,
    height,
    is_canonical,
    is_trivial,
    parse_elem,
    parse_series,
    ps_arith,
    ps_t,
    reversion,
    series_from_json,
    series_to_json,
    super_derivative,
    weierstrass_rank,
)

from util import agree, rand_series

Q = CoeffRing("Q")
F5 = CoeffRing("Fp", p=5)
F7 = CoeffRing("Fp", p=7)
Z56 = CoeffRing("Zp", p=5, K=6)
Z56V = CoeffRing("Zp", p=5, K=6, laurent=True)


def qs(text, trunc=8):
    return parse_series(Q, text, trunc)


class TestPinnedValues:
    def test_compose_example(self):
        f = qs("t^2 + t^3", 4)
        g = qs("t - 1/2*t^2", 4)
        out = compose(f, g)
        assert out.trunc == 4
        assert out == parse_series(Q, "t^2 - 5/4*t^4", 4)

    def test_reversion_example(self):
        f = qs("t + t^2", 4)
        g = reversion(f)
        assert g == parse_series(Q, "t - t^2 + 2*t^3 - 5*t^4", 4)

    def test_derivative_example(self):
        u = parse_series(Z56V, "5*t + v*t^2", 8)
        assert derivative(u) == parse_series(Z56V, "5 + 2*v*t", 7)

    def test_height_example(self):
        u = parse_series(F5, "5*t + t^2", 8)
        assert height(u) == 2

    def test_trivial_canonical_predicates(self):
        t1 = parse_series(Z56, "5*t", 8)
        c1 = parse_series(Z56, "5*t + t^2", 8)
        n1 = parse_series(Z56, "5*t + t^2 + t^3", 8)
        assert is_trivial(t1) and not is_trivial(c1)
        assert is_canonical(c1) == (True, 2)
        assert is_canonical(t1) == (False, None)
        assert is_canonical(n1) == (False, None)
        assert not is_trivial(n1)

    def test_weierstrass_rank_examples(self):
        assert weierstrass_rank(parse_series(Z56V, "5 + 2*v*t", 8)) == 1
        assert weierstrass_rank(parse_series(Z56V, "1", 8)) == 0
        # derivative of 5t + v^3 t^3: first unit coefficient sits at degree 2
        assert weierstrass_rank(parse_series(Z56V, "5 + 3*v^3*t^2", 8)) == 2
        with pytest.raises(PrecisionError):
            weierstrass_rank(parse_series(Z56, "5 + 25*t", 8))

    def test_super_derivative(self):
        f = qs("t^2 + t^3 + 4*t^5", 8)
        assert super_derivative(f) == qs("t^2 + 4*t^4", 7)


class TestTruncationDiscipline:
    def test_mul_gains_from_orders(self):
        a = qs("t^2", 5)
        b = qs("t^3", 5)
        assert (a * b).trunc == 7  # min(5+3, 5+2)

    def test_mul_with_known_zero(self):
        z = PowerSeries(Q, {}, 5)
        a = qs("1 + t", 5)
        assert (z * a).trunc == 5 + 0  # order of a is 0
        assert (z * a).is_zero()

    def test_compose_keeps_linear_trunc(self):
        f = qs("t + t^2", 6)
        g = qs("t + t^3", 6)
        assert compose(f, g).trunc == 6

    def test_compose_stretches_with_inner_order(self):
        f = qs("t + t^2", 3)
        g = qs("t^2", 9)
        # errors in f enter at (3+1)*2 - 1 = 7; in g at (1-1)*2 + 9 = 9
        assert compose(f, g).trunc == 7

    def test_compose_needs_zero_constant(self):
        with pytest.raises(CompositionError):
            compose(qs("t"), qs("1 + t"))

    def test_coeff_beyond_truncation_raises(self):
        with pytest.raises(PrecisionError):
            qs("t", 3).coeff(4)


class TestReversion:
    def test_linear_unit_required(self):
        with pytest.raises(NotInvertibleError):
            reversion(qs("t^2"))
        with pytest.raises(NotInvertibleError):
            reversion(parse_series(Z56, "5*t + t^2", 6))

    def test_round_trip_both_ways(self):
        rng = random.Random(11)
        for ring in (Q, F7):
            for _ in range(10):
                f = rand_series(ring, rng, trunc=9, unit_linear=True)
                g = reversion(f)
                assert agree(compose(f, g), ps_t(ring, 9))
                assert agree(compose(g, f), ps_t(ring, 9))


class TestHeight:
    def test_zero_series_has_no_height(self):
        with pytest.raises(HeightUndefinedError):
            height(PowerSeries(Q, {}, 6))

    def test_orbit_invariance(self):
        rng = random.Random(23)
        for _ in range(20):
            u = rand_series(F7, rng, trunc=9, ord_min=2)
            if u.is_zero():
                continue
            f = rand_series(F7, rng, trunc=9, unit_linear=True)
            assert height(compose(u, f)) == height(u)


class TestAlgebraProperties:
    def test_compose_associative(self):
        rng = random.Random(7)
        for _ in range(15):
            f = rand_series(F7, rng, trunc=8, ord_min=1)
            g = rand_series(F7, rng, trunc=8, unit_linear=True)
            h = rand_series(F7, rng, trunc=8, unit_linear=True)
            left = compose(compose(f, g), h)
            right = compose(f, compose(g, h))
            assert agree(left, right)

    def test_product_rule(self):
        rng = random.Random(9)
        for _ in range(15):
            f = rand_series(Q, rng, trunc=7, ord_min=0)
            g = rand_series(Q, rng, trunc=7, ord_min=0)
            lhs = derivative(f * g)
            rhs = derivative(f) * g + f * derivative(g)
            assert agree(lhs, rhs)

    def test_chain_rule(self):
        rng = random.Random(31)
        for _ in range(10):
            f = rand_series(F7, rng, trunc=8, ord_min=1)
            g = rand_series(F7, rng, trunc=8, unit_linear=True)
            lhs = derivative(compose(f, g))
            rhs = compose(derivative(f), g) * derivative(g)
            assert agree(lhs, rhs)

    def test_ps_arith_dispatch(self):
        a, b = qs("t"), qs("t^2")
        assert ps_arith(a, b, "add") == qs("t + t^2")
        prod = ps_arith(a, b, "mul")
        # product picks up slack from each factor's order: min(8+2, 8+1) = 9
        assert prod.trunc == 9
        assert prod == PowerSeries(Q, {3: Q.one()}, 9)


class TestTextForm:
    @pytest.mark.parametrize(
        "ring,text",
        [
            (Q, "t - 1/2*t^2 + 5/8*t^3"),
            (Z56V, "5*t + v*t^2 + 3*t^4"),
            (Z56V, "(5 + v)*t^2"),
            (F5, "1 + 2*t"),
            (Q, "-t + 2*t^3"),
        ],
    )
    def test_round_trip(self, ring, text):
        s = parse_series(ring, text, 8)
        assert format_series(s) == text
        assert parse_series(ring, format_series(s), 8) == s

    def test_parse_positions(self):
        with pytest.raises(ParseError) as ei:
            parse_series(Q, "t + v", 8)
        assert ei.value.pos == 4
        with pytest.raises(ParseError):
            parse_series(Q, "t^-1", 8)
        with pytest.raises(ParseError):
            parse_series(Q, "t t", 8)

    def test_elem_round_trip(self):
        x = parse_elem(Z56V, "3*v^-1 + 2")
        assert x == Z56V.el({-1: 3, 0: 2})

    def test_random_round_trips(self):
        rng = random.Random(41)
        for ring in (Q, F7, Z56V):
            for _ in range(25):
                s = rand_series(ring, rng, trunc=7, ord_min=0)
                assert parse_series(ring, format_series(s), 7) == s


class TestJsonForm:
    def test_round_trip(self):
        s = parse_series(Z56V, "5*t + v*t^2", 12)
        blob = series_to_json(s)
        assert blob["ring"] == "Zp:5:6[v]"
        assert blob["trunc"] == 12
        assert series_from_json(blob) == s


@given(st.lists(st.fractions(min_value=-5, max_value=5), min_size=1, max_size=6))
@settings(max_examples=40)
def test_add_commutes_hypothesis(cs):
    a = PowerSeries(Q, {i: Q.el({0: c}) for i, c in enumerate(cs)}, 8)
    b = PowerSeries(Q, {i + 1: Q.el({0: c}) for i, c in enumerate(reversed(cs))}, 8)
    assert a + b == b + a
