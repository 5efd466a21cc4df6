from fractions import Fraction
from math import gcd
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from intfact.arith import primes_up_to
from intfact.poly import (
    RationalPoly,
    ZPoly,
    eval_at,
    fixed_divisor,
    fixed_divisor_bruteforce,
    image_fixed_divisor,
    is_image_primitive,
    is_int_valued,
    parse_poly,
    poly_product,
    to_text,
)

x = ZPoly.x()


def P(*coeffs):
    return ZPoly(coeffs)


def test_eval_examples():
    assert eval_at(RationalPoly(x * x - x, 2), 5) == 10
    assert eval_at(RationalPoly(x), 0) == 0
    assert eval_at(RationalPoly(x**3 - x, 6), 4) == Fraction(60, 6) == 10
    assert RationalPoly(x + ZPoly.const(1), 2)(2) == Fraction(3, 2)


def test_product_examples():
    assert poly_product([x, x - ZPoly.const(1)]) == P(0, -1, 1)
    assert poly_product([]) == P(1)
    assert poly_product([ZPoly.linear(2), ZPoly.linear(2), ZPoly.linear(-1)]) == P(4, 0, -3, 1)


def test_trimming_and_degree():
    assert P(1, 2, 0, 0) == P(1, 2)
    assert P().is_zero() and P().degree == -1
    assert ZPoly.from_roots([0, 1]) == P(0, -1, 1)


@pytest.mark.parametrize("g,want", [(P(0, -1, 1), 2), (P(0, 1), 1), (P(0, -1, 0, 1), 6)])
def test_fixed_divisor_examples(g, want):
    assert fixed_divisor(g) == want
    values = [g(a) for a in range(-20, 21)]
    assert reduce(gcd, values, 0) == want


@pytest.mark.parametrize("g,r,want", [(P(0, -1, 1), 10, 2), (P(2, 1, 1), 8, 2), (P(2, 2), 5, 2)])
def test_fixed_divisor_bruteforce_examples(g, r, want):
    assert fixed_divisor_bruteforce(g, r) == want


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        fixed_divisor(P())
    with pytest.raises(ValueError):
        fixed_divisor_bruteforce(P(), 5)
    with pytest.raises(ValueError):
        fixed_divisor_bruteforce(P(0, 0, 1), 1)


@pytest.mark.parametrize(
    "f,want",
    [(RationalPoly(P(0, -1, 1), 2), True), (RationalPoly(P(1, 0, 1), 2), False), (RationalPoly(P(0, -1, 0, 1), 6), True)],
)
def test_int_valued_examples(f, want):
    assert is_int_valued(f) is want


def test_image_primitive_examples():
    assert is_image_primitive(RationalPoly(P(0, -1, 1), 2))
    assert not is_image_primitive(RationalPoly(P(0, 3)))
    assert is_image_primitive(RationalPoly(x))
    with pytest.raises(ValueError):
        is_image_primitive(RationalPoly(P(1, 0, 1), 2))
    assert image_fixed_divisor(RationalPoly(P(0, 0, 6))) == 6


def test_rational_poly_reduced_form():
    f = RationalPoly(P(0, -2, 2), 4)
    assert f.num == P(0, -1, 1) and f.den == 2
    assert RationalPoly(P(0, 1), -3) == RationalPoly(P(0, -1), 3)
    assert RationalPoly(P(), 5).den == 1
    with pytest.raises(ZeroDivisionError):
        RationalPoly(x, 0)


def test_mixed_multiplication():
    h = RationalPoly(P(0, -1, 1), 2)
    assert x * h == RationalPoly(P(0, 0, -1, 1), 2)
    assert h * x == x * h
    assert 3 * x == P(0, 3)


def test_text_format_round_trip():
    f = parse_poly("[0,-1,1]/2")
    assert f == RationalPoly(P(0, -1, 1), 2)
    assert to_text(f) == "[0,-1,1]/2"
    assert to_text(parse_poly("[ 3 , 0 , 1 ]")) == "[3,0,1]"
    assert to_text(parse_poly("[]")) == "[0]"
    assert str(ZPoly.x()) == "[0,1]"


@pytest.mark.parametrize("text", ["0,1", "[0,a]", "[0,1]/0", "[1]/x", "(1,2)"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_poly(text)


def test_json_round_trip():
    f = RationalPoly(P(5, 0, -7, 1), 3)
    assert RationalPoly.from_json(f.to_json()) == f
    assert ZPoly.from_json(P(1, 2).to_json()) == P(1, 2)


coeffs = st.lists(st.integers(-10**4, 10**4), min_size=1, max_size=9).filter(lambda c: any(c))
polys = coeffs.map(ZPoly)


@given(polys, st.integers(0, 30))
def test_fixed_divisor_matches_bruteforce(g, extra):
    r = g.degree + 1 + extra
    assert fixed_divisor(g) == fixed_divisor_bruteforce(g, r)


@given(polys, st.integers(-100, 100))
def test_fixed_divisor_divides_all_values(g, a):
    assert g(a) % fixed_divisor(g) == 0


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5), st.lists(st.integers(-50, 50), min_size=1, max_size=5))
def test_submultiplicative(ra, rb):
    f, g = ZPoly.from_roots(ra), ZPoly.from_roots(rb)
    assert fixed_divisor(f * g) % (fixed_divisor(f) * fixed_divisor(g)) == 0


@given(polys)
def test_prime_bound_for_primitive(g):
    cont = g.content()
    prim = ZPoly(c // cont for c in g.coeffs)
    d = fixed_divisor(prim)
    big = [q for q in primes_up_to(max(d, 2)) if d % q == 0 and q > prim.degree]
    assert big == []


@settings(max_examples=60)
@given(polys, st.integers(1, 30))
def test_int_valued_means_integer_samples(g, den):
    f = RationalPoly(g, den)
    if is_int_valued(f):
        assert all(f(a).denominator == 1 for a in range(-50, 51))
    else:
        assert any(f(a).denominator != 1 for a in range(-50, 51))


@given(polys, polys, st.integers(-30, 30))
def test_ring_operations_evaluate(f, g, a):
    assert (f * g)(a) == f(a) * g(a)
    assert (f + g)(a) == f(a) + g(a)
    assert (f - g)(a) == f(a) - g(a)
