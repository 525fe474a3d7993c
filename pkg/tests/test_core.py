import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gstar.core import (
    ColorSet,
    DomainError,
    all_colorsets,
    format_family,
    format_rational,
    lcm_denominators,
    parse_colorset,
    parse_family,
    parse_rational,
    rat_arith,
    set_ops,
    upward_closure,
)

fractions = st.builds(Fraction, st.integers(-10**6, 10**6), st.integers(1, 10**6))


def test_rat_arith_examples():
    assert rat_arith(Fraction(1, 3), Fraction(1, 6), "add") == Fraction(1, 2)
    assert rat_arith("2/4", 0, "add") == Fraction(1, 2)
    assert rat_arith(Fraction(11, 12), Fraction(5, 6), "cmp") == 1
    assert rat_arith(Fraction(5, 6), Fraction(11, 12), "cmp") == -1
    assert rat_arith(1, 1, "cmp") == 0


def test_division_by_zero_is_explicit():
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")


def test_unknown_op():
    with pytest.raises(DomainError):
        rat_arith(1, 2, "pow")


def _naive(p1, q1, p2, q2, op):
    # integer-pair reference, reduced at the end
    if op == "add":
        p, q = p1 * q2 + p2 * q1, q1 * q2
    elif op == "sub":
        p, q = p1 * q2 - p2 * q1, q1 * q2
    elif op == "mul":
        p, q = p1 * p2, q1 * q2
    else:
        p, q = p1 * q2, q1 * p2
    if q < 0:
        p, q = -p, -q
    g = math.gcd(p, q)
    return p // g, q // g


@given(fractions, fractions, st.sampled_from(["add", "sub", "mul", "div"]))
def test_arith_matches_integer_pairs(x, y, op):
    if op == "div" and y == 0:
        return
    got = rat_arith(x, y, op)
    p, q = _naive(x.numerator, x.denominator, y.numerator, y.denominator, op)
    assert (got.numerator, got.denominator) == (p, q)
    assert got.denominator > 0 and math.gcd(abs(got.numerator), got.denominator) == 1


@given(fractions)
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_rational_format():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


@pytest.mark.parametrize("bad", ["1/0", "x", "1/-2", "", "1.5"])
def test_parse_rational_rejects(bad):
    with pytest.raises(DomainError):
        parse_rational(bad)


def test_set_ops_examples():
    r3 = 3
    assert set_ops(ColorSet.of([1, 2], r3), ColorSet.of([1, 3], r3), "intersect") == ColorSet.of([1], r3)
    assert set_ops(ColorSet.of([1, 2], 5), ColorSet.of([3, 4], 5), "is_disjoint") is True
    assert set_ops(ColorSet.of([1, 4, 7], 9), ColorSet.of([1, 4, 7], 9), "card") == 3
    assert set_ops(ColorSet.of([1, 2], 3), ColorSet.of([2], 3), "minus") == ColorSet.of([1], 3)
    assert set_ops(ColorSet.of([1], 3), ColorSet.of([3], 3), "union") == ColorSet.of([1, 3], 3)


def test_set_ops_mismatched_r():
    with pytest.raises(DomainError):
        set_ops(ColorSet.of([1], 2), ColorSet.of([1], 3), "union")


def test_colorset_validation():
    with pytest.raises(DomainError):
        ColorSet(0b1000, 3)
    with pytest.raises(DomainError):
        ColorSet.of([4], 3)
    with pytest.raises(DomainError):
        ColorSet(0, 0)


def test_colorset_text():
    assert str(ColorSet.of([3, 1], 3)) == "{1,3}"
    assert str(ColorSet(0, 2)) == "{}"
    assert parse_colorset("{ 1, 3 }", 3) == ColorSet.of([1, 3], 3)
    with pytest.raises(DomainError):
        parse_colorset("{1,1}", 3)
    with pytest.raises(DomainError):
        parse_colorset("1,2", 3)


def test_family_text_round_trip():
    fam = frozenset({ColorSet.of([2, 3], 3), ColorSet.of([1], 3)})
    text = format_family(fam)
    assert text == "{1};{2,3}"
    assert parse_family(text, 3) == fam
    assert parse_family("", 3) == frozenset()


def test_canonical_order():
    assert [str(s) for s in all_colorsets(3)] == ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]


def test_upward_closure():
    up = upward_closure(ColorSet.of([1], 3))
    assert {str(s) for s in up} == {"{1}", "{1,2}", "{1,3}", "{1,2,3}"}


def test_lcm_examples():
    F = Fraction
    assert lcm_denominators([F(1, 2), F(1, 3)]) == 6
    assert lcm_denominators([F(1, 2), F(1, 2), F(1)]) == 2
    assert lcm_denominators([F(5, 12), F(7, 12), F(1, 2), F(1, 3)]) == 12
    with pytest.raises(DomainError):
        lcm_denominators([])


@given(st.lists(fractions, min_size=1, max_size=6))
def test_lcm_is_least(values):
    N = lcm_denominators(values)
    assert all((N * v).denominator == 1 for v in values)
    for p in range(2, 50):
        if N % p == 0:
            assert not all(((N // p) * v).denominator == 1 for v in values)
