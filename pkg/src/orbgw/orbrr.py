"""Euler characteristics of bundles on twisted curves.

chi(C, E) = rank(E) chi(C, O) + deg E - sum over markings of age_p(E)

Only chi(O) enters, so nodal curves are handled by passing their chi(O).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInput
from .exact import Scalar, parse_fraction

# Age of O(n) at the order-p point of P(p, 1).  "residue" means (n mod p)/p;
# "inverse" is its image under the involution.  Frozen to the convention that
# matches the monomial count on every tested (p, n); see calibrate_age_convention.
AGE_CONVENTION = "residue"


@dataclass(frozen=True)
class OrbifoldSheafData:
    rank: int
    degree: Fraction
    chi_O: int
    marking_ages: tuple[Fraction, ...] = ()
    band_orders: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "degree", Fraction(self.degree))
        object.__setattr__(self, "marking_ages", tuple(Fraction(a) for a in self.marking_ages))
        if self.rank < 1:
            raise InvalidInput("rank must be a positive integer")
        for a in self.marking_ages:
            if not 0 <= a < self.rank:
                raise InvalidInput(f"marking age {a} outside [0, {self.rank})")
        if self.band_orders is not None:
            if len(self.band_orders) != len(self.marking_ages):
                raise InvalidInput("one band order per marking")
            lcm = math.lcm(*self.band_orders)
            if lcm % self.degree.denominator:
                raise InvalidInput(f"degree {self.degree} has denominator not dividing {lcm}")
            for a, r in zip(self.marking_ages, self.band_orders):
                if r % a.denominator:
                    raise InvalidInput(f"age {a} incompatible with band order {r}")


def chi(data: OrbifoldSheafData) -> Fraction:
    """Exact Euler characteristic.  Honest sheaf data gives an integer."""
    return data.rank * data.chi_O + data.degree - sum(data.marking_ages, Fraction(0))


def is_integral(value: Fraction) -> bool:
    return Fraction(value).denominator == 1


def direct_sum(a: OrbifoldSheafData, b: OrbifoldSheafData) -> OrbifoldSheafData:
    """Data of E + F on the same curve: ranks, degrees and per-marking ages add."""
    if a.chi_O != b.chi_O or len(a.marking_ages) != len(b.marking_ages):
        raise InvalidInput("direct sum needs the same curve and markings")
    return OrbifoldSheafData(a.rank + b.rank, a.degree + b.degree, a.chi_O,
                             tuple(x + y for x, y in zip(a.marking_ages, b.marking_ages)))


def teardrop_line_bundle(p: int, n: int, convention: str = AGE_CONVENTION) -> OrbifoldSheafData:
    """O(n) on P(p, 1): degree n/p, one marking of band order p."""
    if p < 2:
        raise InvalidInput("p must be >= 2")
    if convention == "residue":
        a = Fraction(n % p, p)
    elif convention == "inverse":
        a = Fraction((-n) % p, p)
    else:
        raise InvalidInput(f"unknown age convention {convention!r}")
    return OrbifoldSheafData(1, Fraction(n, p), 1, (a,), (p,))


def line_bundle_oracle_teardrop(p: int, n: int) -> int:
    """Number of monomials x^a y^b with p*a + b = n (weights p and 1)."""
    if p < 2 or n < 0:
        raise InvalidInput("need p >= 2 and n >= 0")
    return sum(1 for a in range(n // p + 1) for b in range(n + 1) if p * a + b == n)


def calibrate_age_convention(ps: Sequence[int] = (2, 3, 5),
                             span: int = 3) -> list[str]:
    """Conventions whose chi matches the monomial count for all p and n in [0, span*p]."""
    ok = []
    for conv in ("residue", "inverse"):
        if all(chi(teardrop_line_bundle(p, n, conv)) == line_bundle_oracle_teardrop(p, n)
               for p in ps for n in range(span * p + 1)):
            ok.append(conv)
    return ok


def parse_ages(text: str | Sequence[Scalar]) -> tuple[Fraction, ...]:
    if isinstance(text, str):
        return tuple(parse_fraction(t) for t in text.split(",") if t.strip())
    return tuple(Fraction(a) for a in text)
