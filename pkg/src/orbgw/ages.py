"""Ages of cyclic-group representations and twisted-sector tables."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import InvalidInput
from .ring import GradedBasisElement

UNTWISTED = "X"


@dataclass(frozen=True)
class WeightVector:
    """Diagonal action of a generator of mu_r: zeta_r**k_i on the i-th line."""

    r: int
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(k) for k in self.weights))
        if self.r < 1:
            raise InvalidInput("r must be a positive integer")
        for k in self.weights:
            if not 0 <= k < self.r:
                raise InvalidInput(f"weight {k} outside [0, {self.r - 1}]")

    @property
    def rank(self) -> int:
        return len(self.weights)

    def __add__(self, other: WeightVector) -> WeightVector:
        if other.r != self.r:
            raise InvalidInput("can only concatenate weight vectors with equal r")
        return WeightVector(self.r, self.weights + other.weights)


def age(w: WeightVector) -> Fraction:
    return Fraction(sum(w.weights), w.r)


def involution_partner(w: WeightVector) -> WeightVector:
    """The representation composed with zeta -> zeta**-1."""
    return WeightVector(w.r, tuple((w.r - k) % w.r for k in w.weights))


@dataclass(frozen=True)
class TwistedSector:
    label: str
    band_order: int
    age: Fraction
    partner_label: str
    weights: WeightVector | None = None


def sector_label(i: int) -> str:
    return UNTWISTED if i == 0 else f"Omega{i}"


def sector_table_cyclic(p: int, tangent_weight: int = 1) -> list[TwistedSector]:
    """Rigidified inertia of a curve with one stacky point of order ``p``.

    Sector i (1 <= i < p) corresponds to i in Z/p acting on the tangent line by
    ``zeta_p**(i * tangent_weight)``.  Its band order is the order of i in Z/p.
    """
    if p < 1:
        raise InvalidInput("p must be a positive integer")
    out = [TwistedSector(UNTWISTED, 1, Fraction(0), UNTWISTED, WeightVector(1, (0,)))]
    for i in range(1, p):
        w = WeightVector(p, ((i * tangent_weight) % p,))
        out.append(TwistedSector(sector_label(i), p // gcd(i, p), age(w),
                                 sector_label(p - i), w))
    return out


def graded_degrees(sectors: Sequence[TwistedSector],
                   underlying_degrees: Mapping[str, Sequence[int]]) -> list[GradedBasisElement]:
    """Orbifold degree ``k + 2 * age`` for each class in ``H^k`` of each sector.

    A sector contributing a single class keeps its own label; otherwise labels
    are ``"<sector>.H<k>"``.
    """
    out = []
    for s in sectors:
        degs = list(underlying_degrees.get(s.label, ()))
        for k in degs:
            if k < 0:
                raise InvalidInput("cohomological degree must be non-negative")
            if k % 2:
                raise InvalidInput(f"odd class H^{k} on {s.label}: only even cohomology is supported")
            label = s.label if len(degs) == 1 else f"{s.label}.H{k}"
            out.append(GradedBasisElement(label, k + 2 * s.age))
    return out
