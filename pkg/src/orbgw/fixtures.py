"""Shipped ring instances: P^2, teardrops, and B G for the fixture groups."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from .exact import DEFAULT_TRUNCATION
from .groups import bg_ring, fixture_groups
from .plane_curves import compute_table
from .ring import GradedBasisElement, GradedRingPresentation, presentation_from_numbers
from .teardrop import export_presentation

P2_LABELS = ("1", "H", "H2")
P2_PAIRING = ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def p2_three_point_number(a: int, b: int, c: int, d: int) -> int:
    """<H^a, H^b, H^c>_d on P^2.

    Degree 0 is the triple intersection.  For d > 0 the fundamental class
    kills the invariant, each H contributes a factor d, and what remains
    counts degree-d rational curves through the point insertions.
    """
    if d == 0:
        return int(a + b + c == 2)
    exps = (a, b, c)
    if 0 in exps or sum(exps) != 3 * d + 2:
        return 0
    points = exps.count(2)
    if points != 3 * d - 1:
        return 0
    return d ** exps.count(1) * compute_table(d)[d]


def p2_numbers(truncation: int = DEFAULT_TRUNCATION) -> dict:
    return {((P2_LABELS[a], P2_LABELS[b], P2_LABELS[c]), d): p2_three_point_number(a, b, c, d)
            for a, b, c in product(range(3), repeat=3) for d in range(truncation + 1)}


def p2_presentation(truncation: int = DEFAULT_TRUNCATION, q_degree=6) -> GradedRingPresentation:
    """Small quantum cohomology of P^2; ``q_degree`` is overridable for negative tests."""
    basis = tuple(GradedBasisElement(lab, Fraction(2 * i)) for i, lab in enumerate(P2_LABELS))
    return presentation_from_numbers(p2_numbers(truncation), P2_PAIRING, basis,
                                     q_degree, truncation)


def shipped_rings(truncation: int = DEFAULT_TRUNCATION) -> dict[str, GradedRingPresentation]:
    rings = {"P2": p2_presentation(truncation)}
    for p in (2, 3, 5, 7):
        rings[f"teardrop{p}"] = export_presentation(p, truncation)
    for name, g in fixture_groups().items():
        rings[f"B{name}"] = bg_ring(g)
    return rings
