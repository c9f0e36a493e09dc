from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbgw.exact import QSeries, format_fraction, parse_fraction


@pytest.mark.parametrize("text, value", [
    ("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), (" 6/3 ", Fraction(2)), ("0/5", Fraction(0)),
])
def test_parse_fraction(text, value):
    assert parse_fraction(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1/0", "a/2", "", "1//2"])
def test_parse_fraction_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_fraction(bad)


def test_format_fraction_lowest_terms():
    assert format_fraction(Fraction(4, 6)) == "2/3"
    assert format_fraction(Fraction(8, 4)) == "2"
    assert format_fraction(-3) == "-3"


def test_qseries_drops_zeros_and_truncates():
    s = QSeries({0: 1, 1: 0, 5: 2}, truncation=3)
    assert s.coeffs == {0: Fraction(1)}
    assert (QSeries.monomial(2, 1, 3) * QSeries.monomial(2, 1, 3)).is_zero()


def test_qseries_product():
    a = QSeries({0: 1, 1: Fraction(1, 2)}, 3)
    b = QSeries({1: 2, 2: -1}, 3)
    assert (a * b) == QSeries({1: 2, 3: Fraction(-1, 2)}, 3)


def test_qseries_scalar_equality():
    assert QSeries.constant(3) == 3
    assert QSeries({}) == 0


series = st.dictionaries(st.integers(0, 4), st.fractions(max_denominator=7).filter(bool), max_size=4)


@given(series, series, series)
def test_qseries_ring_axioms(a, b, c):
    a, b, c = (QSeries(x, 4) for x in (a, b, c))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
