"""Exact computations for genus-0 Gromov-Witten theory of orbifolds.

Plane curve counts, B G and teardrop quantum rings, ages of twisted sectors,
orbifold Riemann-Roch, and a generic graded-ring engine with associativity,
grading and pairing checks.  All arithmetic is exact.
"""
from .exact import QSeries, format_fraction, parse_fraction
from .ring import (GradedBasisElement, GradedRingPresentation, check_associativity,
                   check_commutativity, check_grading, classes_from_numbers, invert_pairing,
                   multiply, numbers_from_classes)

__version__ = "0.1.0"

__all__ = [
    "GradedBasisElement", "GradedRingPresentation", "QSeries", "check_associativity",
    "check_commutativity", "check_grading", "classes_from_numbers", "format_fraction",
    "invert_pairing", "multiply", "numbers_from_classes", "parse_fraction",
]
