from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbgw.errors import InvalidInput
from orbgw.exact import QSeries
from orbgw.ring import check_associativity, check_commutativity, check_grading, multiply
from orbgw.teardrop import (NON_HOMOGENEOUS, TeardropElement, degree_of, deg_q_weighted,
                            derived_pairing, export_presentation, format_teardrop, from_polynomial,
                            multiply_teardrop, parse_expression, polynomial_degree, relation)

PS = (2, 3, 5, 7)


def B(p, label, t=3):
    return TeardropElement.basis(p, label, t)


def _reduce_oracle(p, poly, t):
    """Reduce modulo p*a^(p+1) - q by repeatedly clearing the top a-power."""
    poly = {k: Fraction(v) for k, v in poly.items() if v}
    while True:
        top = max((e for e, n in poly), default=-1)
        if top <= p:
            break
        for (e, n) in [k for k in poly if k[0] == top]:
            c = poly.pop((e, n))
            key = (e - p - 1, n + 1)
            poly[key] = poly.get(key, 0) + c / p
    return {k: v for k, v in poly.items() if v and k[1] <= t}


def _poly_mul(a, b):
    out = {}
    for (e1, n1), c1 in a.items():
        for (e2, n2), c2 in b.items():
            out[(e1 + e2, n1 + n2)] = out.get((e1 + e2, n1 + n2), 0) + c1 * c2
    return out


@pytest.mark.parametrize("p", PS)
def test_example_products(p):
    a1, x = B(p, "A1"), B(p, "x")
    for i in range(1, p - 1):
        assert B(p, f"A{i}") * a1 == B(p, f"A{i + 1}")
    last = B(p, f"A{p - 1}") if p > 2 else a1
    assert a1 * last == x
    assert x * a1 == TeardropElement.q(p) * Fraction(1, p)
    assert (x * a1).at_q_zero().is_zero()
    assert format_teardrop(x * a1) == f"1/{p}*q"


@pytest.mark.parametrize("p", PS)
def test_relation_normalizes_to_zero(p):
    assert from_polynomial(p, relation(p)).is_zero()
    assert polynomial_degree(p, relation(p)) == Fraction(2 * (p + 1), p)


def test_p2_export():
    ring = export_presentation(2)
    assert ring.labels == ["1", "A1", "x"]
    q = QSeries.monomial(1, 1, 3)
    assert multiply({"A1": 1}, {"A1": 1}, ring) == {"x": QSeries.constant(1, 3)}
    assert multiply({"A1": 1}, {"x": 1}, ring) == {"1": q * Fraction(1, 2)}
    assert multiply({"x": 1}, {"x": 1}, ring) == {"A1": q * Fraction(1, 2)}


@pytest.mark.parametrize("p", PS)
def test_export_checks(p):
    ring = export_presentation(p, 3)
    assert check_grading(ring) == []
    assert check_associativity(ring) == []
    assert check_commutativity(ring) == []


@pytest.mark.parametrize("p", PS)
def test_derived_pairing(p):
    g = derived_pairing(p)
    n = p + 1
    for i in range(n):
        for j in range(n):
            assert g[i][j] == (Fraction(1, p) if i + j == p else 0)
    # invariance <a*b, c> = <a, b*c> on the classical product
    ring = export_presentation(p, 0)
    labels = ring.labels

    def pair(u, v):
        return sum(_scalar(cu) * _scalar(cv) * g[labels.index(a)][labels.index(b)]
                   for a, cu in u.items() for b, cv in v.items())

    for a in labels:
        for b in labels:
            for c in labels:
                assert pair(multiply({a: 1}, {b: 1}, ring), {c: 1}) == \
                    pair({a: 1}, multiply({b: 1}, {c: 1}, ring))


def test_degrees():
    for p in PS:
        assert degree_of(B(p, "A1")) == Fraction(2, p)
        assert degree_of(B(p, "1") + B(p, "A1")) is NON_HOMOGENEOUS
        assert deg_q_weighted(p, 1) == Fraction(2 * (p + 1), p)
    assert degree_of(TeardropElement.zero(3)) is None
    assert deg_q_weighted(1, 1) == 4
    assert deg_q_weighted(2, 3) == Fraction(5, 3)
    with pytest.raises(InvalidInput):
        deg_q_weighted(2, 4)


def test_mismatched_p():
    with pytest.raises(InvalidInput):
        multiply_teardrop(B(2, "A1"), B(3, "A1"))


def test_parser():
    assert parse_expression(2, "A1 * A1") == B(2, "x")
    assert parse_expression(3, "x*A1") == TeardropElement.q(3) * Fraction(1, 3)
    assert parse_expression(3, "3*A1^4 - q").is_zero()
    assert parse_expression(5, "(1 + A1)^2") == B(5, "1") + B(5, "A1") * 2 + B(5, "A2")
    assert parse_expression(3, "1/2 q A2") == TeardropElement.q(3) * B(3, "A2") * Fraction(1, 2)
    with pytest.raises(InvalidInput):
        parse_expression(3, "A7")
    with pytest.raises(InvalidInput):
        parse_expression(3, "A1 +")


def _scalar(c):
    return c.at_zero() if isinstance(c, QSeries) else Fraction(c)


def _elements(p):
    term = st.tuples(st.integers(0, p), st.integers(0, 2), st.fractions(max_denominator=5))
    return st.lists(term, max_size=4).map(
        lambda ts: {(e, n): c for e, n, c in ts})


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PS).flatmap(lambda p: st.tuples(st.just(p), _elements(p), _elements(p),
                                                        _elements(p))))
def test_ring_laws_against_oracle(args):
    p, a, b, c = args
    ea, eb, ec = (from_polynomial(p, t, 3) for t in (a, b, c))
    assert ea * eb == eb * ea
    assert (ea * eb) * ec == ea * (eb * ec)
    assert ea * (eb + ec) == ea * eb + ea * ec
    expect = _reduce_oracle(p, _poly_mul(ea.terms(), eb.terms()), 3)
    assert (ea * eb).terms() == expect
