from fractions import Fraction
from math import comb

import pytest
from hypothesis import assume, given, strategies as st

from orbgw.errors import DegenerateConfiguration, InvalidInput
from orbgw.plane_curves import (INF, as_point, compute_table, cross_ratio, enumerate_splittings,
                                mobius, reassemble, table_from_splittings)

KNOWN = {1: 1, 2: 1, 3: 12, 4: 620, 5: 87304}


def _kontsevich_oracle(d_max):
    # the closed recursion written out directly, with comb() returning 0 out of range
    n = {1: 1}
    for d in range(2, d_max + 1):
        n[d] = sum(n[a] * n[d - a] * (a * a * (d - a) ** 2 * comb(3 * d - 4, 3 * a - 2)
                                      - a ** 3 * (d - a) * comb(3 * d - 4, 3 * a - 1))
                   for a in range(1, d))
    return n


def test_table_values():
    assert compute_table(1).as_dict() == {1: 1}
    assert compute_table(5).as_dict() == KNOWN


def test_table_matches_oracle_and_is_positive():
    t = compute_table(15)
    assert t.as_dict() == _kontsevich_oracle(15)
    assert all(isinstance(v, int) and v > 0 for v in t.as_dict().values())


def test_table_rejects_zero():
    with pytest.raises(InvalidInput):
        compute_table(0)


def test_d2_by_hand():
    right = enumerate_splittings(2, "right")
    left = enumerate_splittings(2, "left")
    assert [(t.d1, t.d2) for t in right] == [(1, 1)]
    # two ways to place the two free points one per line, versus both on C1
    assert sum(t.weight for t in right) == 2
    assert sum(t.weight for t in left) == 1
    assert reassemble(2, {1: 1}) == 1


def test_d3_point_split():
    term = next(t for t in enumerate_splittings(3, "right") if (t.d1, t.d2) == (1, 2))
    assert term.point_split == 5
    assert reassemble(3, {1: 1, 2: 1}) == 12


def test_splittings_reject_small_d():
    with pytest.raises(InvalidInput):
        enumerate_splittings(1, "right")


def test_splittings_reassemble_table():
    assert table_from_splittings(10) == compute_table(10).as_dict()


def _cr_direct(a, b, c, d):
    return (a - b) / (a - d) * (c - d) / (c - b)


def test_cross_ratio_examples():
    assert cross_ratio(2, 0, 1, 3) == 4
    assert cross_ratio(Fraction(3, 7), 0, 1, "inf") == Fraction(3, 7)
    assert cross_ratio(5, 0, 1, INF) == 5
    assert as_point("oo") is INF and as_point("-1/2") == Fraction(-1, 2)


def test_cross_ratio_degenerate():
    with pytest.raises(DegenerateConfiguration):
        cross_ratio(1, 1, 2, 3)
    with pytest.raises(DegenerateConfiguration):
        cross_ratio("inf", 1, 2, INF)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(st.lists(rationals, min_size=4, max_size=4, unique=True))
def test_cross_ratio_matches_direct_formula(pts):
    v = cross_ratio(*pts)
    assert v == _cr_direct(*pts)
    assert v not in (0, 1) and v is not INF


@given(st.lists(rationals, min_size=4, max_size=4, unique=True),
       st.tuples(rationals, rationals, rationals, rationals))
def test_cross_ratio_mobius_invariance(pts, coeffs):
    a, b, c, d = coeffs
    assume(a * d - b * c != 0)
    f = mobius(a, b, c, d)
    assert cross_ratio(*(f(x) for x in pts)) == cross_ratio(*pts)
