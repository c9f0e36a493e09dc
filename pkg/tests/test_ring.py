from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from orbgw.errors import IncompleteData, IntegrityError, InvalidInput, SingularPairing, StructuralError
from orbgw.exact import QSeries
from orbgw.fixtures import P2_LABELS, P2_PAIRING, p2_numbers, p2_presentation
from orbgw.ring import (GradedBasisElement, GradedRingPresentation, all_numbers, check_associativity,
                        check_commutativity, check_grading, classes_from_numbers, format_element,
                        identity_matrix_check, invert_pairing, multiply, numbers_from_classes,
                        perturb, zero_ring)
from orbgw.serialize import dumps_presentation, loads_presentation
from orbgw.teardrop import export_presentation


def _gauss_inverse(m):
    # textbook adjugate-free inverse for tiny matrices, kept separate from invert_pairing
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        r = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[r] = aug[r], aug[c]
        aug[c] = [x / aug[c][c] for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def test_invert_pairing_examples():
    def rows(m):
        return [list(r) for r in m]
    assert rows(invert_pairing([[1, 0], [0, 1]])) == [[1, 0], [0, 1]]
    assert rows(invert_pairing(P2_PAIRING)) == rows(P2_PAIRING)
    assert rows(invert_pairing([[2]])) == [[Fraction(1, 2)]]


def test_invert_pairing_singular():
    with pytest.raises(SingularPairing):
        invert_pairing([[1, 2], [2, 4]])


@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_invert_pairing_matches_elimination(flat):
    m = [flat[0:3], flat[3:6], flat[6:9]]
    try:
        inv = invert_pairing(m)
    except SingularPairing:
        return
    assert [list(r) for r in inv] == _gauss_inverse(m)
    assert identity_matrix_check([[Fraction(x) for x in r] for r in m], inv)


def test_identity_acts_as_unit():
    for ring in (p2_presentation(), export_presentation(3)):
        for lab in ring.labels:
            assert multiply({"1": 1}, {lab: 1}, ring) == {lab: QSeries.constant(1, ring.truncation)}


def test_p2_quantum_products():
    ring = p2_presentation()
    # <H, H2, H2>_1 = 1 and g^{H2,1} = 1, so H*H2 = q*1
    assert multiply({"H": 1}, {"H2": 1}, ring) == {"1": QSeries.monomial(1, 1, 3)}
    assert multiply({"H": 1}, {"H": 1}, ring) == {"H2": QSeries.constant(1, 3)}
    assert multiply({"H2": 1}, {"H2": 1}, ring) == {"H": QSeries.monomial(1, 1, 3)}
    assert format_element(multiply({"H": 1}, {"H2": 1}, ring)) == "q"


def test_p2_classical_part_from_numbers():
    nums = {k: v for k, v in p2_numbers(0).items()}
    basis = [GradedBasisElement(l, 2 * i) for i, l in enumerate(P2_LABELS)]
    structure = classes_from_numbers(nums, P2_PAIRING, basis, truncation=0)
    # H^a H^b = H^{a+b} when a+b <= 2, else 0
    for a, b in product(range(3), repeat=2):
        expect = {a + b: QSeries.constant(1, 0)} if a + b <= 2 else {}
        assert structure.get((a, b), {}) == expect


def test_zero_numbers_give_zero_classes():
    basis = [GradedBasisElement("1", 0), GradedBasisElement("y", 2)]
    nums = {((a, b, c), n): 0 for a, b, c in product("1y", repeat=3) for n in range(2)}
    assert classes_from_numbers(nums, [[0, 1], [1, 0]], basis, truncation=1) == {}


def test_missing_number_named():
    nums = p2_numbers(1)
    del nums[(("H", "H", "H2"), 1)]
    basis = [GradedBasisElement(l, 2 * i) for i, l in enumerate(P2_LABELS)]
    with pytest.raises(IncompleteData, match="H, H, H2"):
        classes_from_numbers(nums, P2_PAIRING, basis, truncation=1)


def test_numbers_from_classes_trivial_and_teardrop():
    ring = p2_presentation()
    assert numbers_from_classes(ring, ("1", "1"), "1", 1) == 0
    for p in (2, 3, 5, 7):
        t = export_presentation(p)
        last = f"A{p - 1}" if p > 2 else "A1"
        # extra must pair to 1 with the x class: x-dual is p*1 under <1, x> = 1/p
        assert numbers_from_classes(t, ("A1", last), "1", 0) * p == 1


@pytest.mark.parametrize("ring", [p2_presentation(), export_presentation(2), export_presentation(5)],
                         ids=["P2", "teardrop2", "teardrop5"])
def test_round_trip_numbers_classes(ring):
    rebuilt = classes_from_numbers(all_numbers(ring), ring.pairing, ring.basis, ring.truncation)
    assert rebuilt == ring.structure
    assert identity_matrix_check(ring.pairing, ring.inverse_pairing)


def test_check_associativity_perturbed():
    ring = export_presentation(3)
    assert check_associativity(ring) == []
    bad = perturb(ring, "A1", "A2", "A1")
    report = check_associativity(bad)
    assert report
    assert any(v.triple == ("A1", "A1", "A1") for v in report)


def test_check_grading():
    assert check_grading(export_presentation(5)) == []
    assert check_grading(zero_ring()) == []
    assert check_associativity(zero_ring()) == []
    ring = p2_presentation(q_degree=5)
    triples = {(v.i, v.j, v.k) for v in check_grading(ring)}
    assert ("H2", "H2", "H") in triples
    with pytest.raises(IntegrityError):
        multiply({"H2": 1}, {"H2": 1}, ring)


def test_unknown_label():
    with pytest.raises(StructuralError):
        multiply({"Z": 1}, {"1": 1}, p2_presentation())


def test_construction_validation():
    b = (GradedBasisElement("1", 0), GradedBasisElement("y", 2))
    with pytest.raises(InvalidInput):
        GradedRingPresentation(b, [[0, 1], [2, 0]], {}, 2, 1)
    with pytest.raises(SingularPairing):
        GradedRingPresentation(b, [[1, 1], [1, 1]], {}, 2, 1)
    with pytest.raises(InvalidInput):
        GradedBasisElement("z", -2)


def test_truncation_coherence():
    hi, lo = p2_presentation(5), p2_presentation(3)
    for key, row in lo.structure.items():
        assert {k: c.truncate(3) for k, c in hi.structure[key].items()} == row


def test_serialize_round_trip():
    for ring in (p2_presentation(), export_presentation(7), zero_ring()):
        text = dumps_presentation(ring)
        back = loads_presentation(text)
        assert back == ring
        assert dumps_presentation(back) == text
    with pytest.raises(InvalidInput):
        loads_presentation("{not json")


def test_commutativity_of_fixtures():
    assert check_commutativity(p2_presentation()) == []
    assert check_commutativity(perturb(p2_presentation(), "H", "H2", "H"))
