from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchbox.exactalg import LinComb, as_rational, bilinear_extend, format_rational, lincomb_sum

from conftest import lincombs, rationals

KEYS = ["x", "y", "z", "w"]
elements = lincombs(KEYS)


def test_as_rational_accepts_exact_inputs():
    assert as_rational(3) == Fraction(3)
    assert as_rational("-3/4") == Fraction(-3, 4)
    assert as_rational(" 2 ") == 2
    assert as_rational(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, None, [1]])
def test_as_rational_rejects_inexact_inputs(bad):
    with pytest.raises(TypeError):
        as_rational(bad)


def test_format_rational():
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"


def test_zero_coefficients_are_dropped():
    x = LinComb([("x", 1), ("y", 0), ("x", -1)])
    assert x.is_zero()
    assert x == 0
    assert len(LinComb({"x": 2, "y": "1/3"})) == 2


def test_canonical_order_is_by_text():
    x = LinComb({"b": 1, "a": 2, "c": 3})
    assert [k for k, _ in x.terms()] == ["a", "b", "c"]
    assert repr(x) == "2*a + 1*b + 3*c"


def test_json_round_trip():
    x = LinComb({"x": Fraction(-1, 2), "y": 3})
    data = x.to_json()
    assert data == {"terms": [{"key": "x", "coeff": "-1/2"}, {"key": "y", "coeff": "3"}]}
    assert LinComb.from_json(data) == x


@given(elements, elements, elements)
def test_addition_is_associative_and_commutative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


@given(elements)
def test_additive_inverse(a):
    assert a - a == LinComb.zero()
    assert -(-a) == a
    assert a + LinComb.zero() == a


@given(rationals, rationals, elements, elements)
def test_scalar_distributivity(c, d, a, b):
    assert c * (a + b) == c * a + c * b
    assert (c + d) * a == c * a + d * a
    assert (c * d) * a == c * (d * a)


@given(elements, elements)
def test_equal_elements_hash_equal(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert hash(a + b) == hash(b + a)


@given(st.lists(elements, max_size=5))
def test_lincomb_sum_matches_folded_addition(items):
    acc = LinComb.zero()
    for item in items:
        acc = acc + item
    assert lincomb_sum(items) == acc


def _concat(s, t, sep):
    return LinComb({s + sep + t: 1, t: 2})


product = bilinear_extend(_concat)


@given(elements, elements, elements, rationals)
def test_bilinear_extension_is_bilinear(a, b, c, q):
    assert product(a + b, c, ".") == product(a, c, ".") + product(b, c, ".")
    assert product(a, b + c, ".") == product(a, b, ".") + product(a, c, ".")
    assert product(q * a, b, ".") == q * product(a, b, ".")
    assert product(a, q * b, ".") == q * product(a, b, ".")


def test_bilinear_extension_on_basis():
    assert product(LinComb.basis("x", 2), LinComb.basis("y", 3), "-") == LinComb({"x-y": 6, "y": 12})
