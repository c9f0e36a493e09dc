"""Rational plane curve counts and the cross ratio on P^1.

``compute_table`` runs Kontsevich's recursion directly.  ``enumerate_splittings``
lists the individual nodal configurations on both sides of the cross-ratio
equation; reassembling them recovers the same numbers through a separate code
path (it carries its own binomial table).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

from .errors import DegenerateConfiguration, InvalidInput

Side = Literal["left", "right"]


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class PlaneCurveTable:
    values: tuple[tuple[int, int], ...]

    def __getitem__(self, d: int) -> int:
        return self.values[d - 1][1]

    def as_dict(self) -> dict[int, int]:
        return dict(self.values)

    @property
    def max_degree(self) -> int:
        return len(self.values)


def compute_table(d_max: int) -> PlaneCurveTable:
    """N_d for d = 1..d_max, exact."""
    if d_max < 1:
        raise InvalidInput("d_max must be a positive integer")
    N = [0, 1]
    for d in range(2, d_max + 1):
        total = 0
        for d1 in range(1, d):
            d2 = d - d1
            total += N[d1] * N[d2] * (
                d1 * d1 * d2 * d2 * _binom(3 * d - 4, 3 * d1 - 2)
                - d1 ** 3 * d2 * _binom(3 * d - 4, 3 * d1 - 1))
        N.append(total)
    for d, n in enumerate(N[1:], start=1):
        if not isinstance(n, int) or n < 1:
            raise ArithmeticError(f"N_{d} = {n} is not a positive integer")
    return PlaneCurveTable(tuple((d, N[d]) for d in range(1, d_max + 1)))


# --- splittings ------------------------------------------------------------

def _pascal_row(n: int) -> list[int]:
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


@dataclass(frozen=True)
class SplittingTerm:
    """One reducible configuration C1 u C2 with deg C1 = d1, deg C2 = d2.

    ``point_split`` counts ways to distribute the free points; the remaining
    fields count choices of the node z and of the marked points q, r.
    """

    d: int
    d1: int
    d2: int
    point_split: int
    node_choices: int
    q_choices: int
    r_choices: int
    side: Side

    @property
    def weight(self) -> int:
        return self.point_split * self.node_choices * self.q_choices * self.r_choices


def enumerate_splittings(d: int, side: Side) -> list[SplittingTerm]:
    """Ordered splittings d = d1 + d2 contributing to one side of the equation.

    Right side (p1, q | p2, r): p1, q on C1 and p2, r on C2, with 3*d1 - 2 of
    the remaining 3d - 4 points on C1.  Left side (p1, p2 | q, r): p1, p2 on
    C2 and q, r on C1, with 3*d1 - 1 points on C1.
    """
    if d < 2:
        raise InvalidInput("splittings need d >= 2")
    if side not in ("left", "right"):
        raise InvalidInput(f"side must be 'left' or 'right', got {side!r}")
    row = _pascal_row(3 * d - 4)
    terms = []
    for d1 in range(1, d):
        d2 = d - d1
        k = 3 * d1 - 2 if side == "right" else 3 * d1 - 1
        split = row[k] if 0 <= k < len(row) else 0
        r_choices = d2 if side == "right" else d1
        terms.append(SplittingTerm(d, d1, d2, split, d1 * d2, d1, r_choices, side))
    return terms


def reassemble(d: int, known: dict[int, int]) -> int:
    """N_d from the two sides: right-side total minus left-side reducible terms."""
    right = sum(t.weight * known[t.d1] * known[t.d2] for t in enumerate_splittings(d, "right"))
    left = sum(t.weight * known[t.d1] * known[t.d2] for t in enumerate_splittings(d, "left"))
    return right - left


def table_from_splittings(d_max: int) -> dict[int, int]:
    known = {1: 1}
    for d in range(2, d_max + 1):
        known[d] = reassemble(d, known)
    return known


# --- cross ratio -----------------------------------------------------------

class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ProjectivePoint = Union[Fraction, _Infinity]

BOUNDARY_LABELS = {
    Fraction(0): "(p1,p2|q,r)",
    Fraction(1): "(p1,q|p2,r)",
    INF: "(p1,r|p2,q)",
}


def as_point(value) -> ProjectivePoint:
    if value is INF:
        return INF
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return INF
        from .exact import parse_fraction
        return parse_fraction(value)
    return Fraction(value)


def mobius(a, b, c, d):
    """The map x -> (a x + b) / (c x + d) on Q u {inf}; needs ad - bc != 0."""
    a, b, c, d = (Fraction(v) for v in (a, b, c, d))
    if a * d - b * c == 0:
        raise InvalidInput("Mobius map must have nonzero determinant")

    def apply(x: ProjectivePoint) -> ProjectivePoint:
        if x is INF:
            return a / c if c else INF
        den = c * x + d
        if den == 0:
            return INF
        return (a * x + b) / den

    return apply


def cross_ratio(p1, p2, q, r) -> ProjectivePoint:
    """CR(p1, p2, q, r) = (p1 - p2)/(p1 - r) * (q - r)/(q - p2), exactly.

    r is first sent to infinity by an exact Mobius map, after which the
    ratio reduces to (p1 - p2)/(q - p2).
    """
    pts = [as_point(v) for v in (p1, p2, q, r)]
    for i in range(4):
        for j in range(i):
            if pts[i] == pts[j]:
                raise DegenerateConfiguration("cross ratio needs four distinct points")
    r_ = pts[3]
    send = (lambda x: x) if r_ is INF else mobius(0, 1, 1, -r_)
    a, b, c = (send(x) for x in pts[:3])
    return (a - b) / (c - b)
