import pytest
from hypothesis import given, settings

from ffdio.places import (
    INFINITY,
    Divisor,
    PrimeDivisor,
    check_sum_formula,
    divisor_of,
    ord_at,
    parse_prime,
)
from ffdio.parser import parse_ratfunc
from ffdio.ratfunc import Poly, RatFunc

from conftest import ratfuncs

T_PLACE = PrimeDivisor(Poly([0, 1]))


class TestPrimeDivisor:
    def test_parse(self):
        assert parse_prime("inf") is INFINITY
        assert parse_prime("t").poly == Poly([0, 1])
        assert parse_prime("2*t - 2").poly == Poly([-1, 1])  # normalized monic
        assert parse_prime("t^2 + 1").degree == 2

    def test_parse_rejects_reducible(self):
        with pytest.raises(ValueError):
            parse_prime("t^2 - 1")
        with pytest.raises(ValueError):
            parse_prime("t^2")
        with pytest.raises(ValueError):
            parse_prime("5")
        with pytest.raises(ValueError):
            parse_prime("1/t")

    def test_infinity(self):
        assert INFINITY.degree == 1
        assert not INFINITY.is_finite
        assert str(INFINITY) == "inf"


class TestOrd:
    @pytest.mark.parametrize(
        "text, prime, expected",
        [
            ("t^3", "t", 3),
            ("1/t^2", "t", -2),
            ("(t-1)/(t+1)", "t - 1", 1),
            ("(t-1)/(t+1)", "t + 1", -1),
            ("(t-1)/(t+1)", "t", 0),
            ("t^3/(t-1)", "inf", -2),
            ("5", "inf", 0),
            ("1/t^4", "inf", 4),
        ],
    )
    def test_examples(self, text, prime, expected):
        assert ord_at(parse_ratfunc(text), parse_prime(prime)) == expected

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            ord_at(RatFunc(Poly()), T_PLACE)

    @given(ratfuncs(nonzero=True), ratfuncs(nonzero=True))
    @settings(max_examples=40, deadline=None)
    def test_additivity(self, a, b):
        for p in (T_PLACE, INFINITY, PrimeDivisor(Poly([1, 0, 1]))):
            assert ord_at(a * b, p) == ord_at(a, p) + ord_at(b, p)


class TestDivisor:
    def test_example(self):
        d = divisor_of(parse_ratfunc("(t^2-1)/t^3"))
        assert d.multiplicity(parse_prime("t - 1")) == 1
        assert d.multiplicity(parse_prime("t + 1")) == 1
        assert d.multiplicity(T_PLACE) == -3
        assert d.multiplicity(INFINITY) == 1
        assert d.degree() == 0

    def test_matches_ord_at(self):
        x = parse_ratfunc("(t^2+1)^2/(t-2)")
        d = divisor_of(x)
        for p, m in d.support:
            assert ord_at(x, p) == m

    def test_from_dict_drops_zeros(self):
        d = Divisor.from_dict({T_PLACE: 0, INFINITY: 2})
        assert d.support == ((INFINITY, 2),)

    @given(ratfuncs(nonzero=True))
    @settings(max_examples=60, deadline=None)
    def test_sum_formula(self, x):
        assert check_sum_formula(x) == 0

    def test_higher_degree_places_weighted(self):
        # (t^2+1) has one zero of degree 2, balanced by a double pole at infinity.
        d = divisor_of(parse_ratfunc("t^2 + 1"))
        assert d.multiplicity(parse_prime("t^2+1")) == 1
        assert d.multiplicity(INFINITY) == -2
        assert d.degree() == 0
