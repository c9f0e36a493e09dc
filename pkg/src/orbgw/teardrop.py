"""Quantum cohomology of the teardrop P(p, 1).

Elements are polynomials in A1 of degree <= p with coefficients in truncated
q-series.  Normal form uses ``A1**(p+1) -> q/p``; the basis is ``1``,
``A_i = A1**i`` for ``1 <= i < p`` and ``x = A1**p``.

Degrees are real cohomological degrees: ``deg A1 = 2/p``, ``deg x = 2``,
``deg q = 2(p+1)/p``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping

from .errors import InvalidInput
from .exact import DEFAULT_TRUNCATION, QSeries, Scalar, format_fraction
from .ring import GradedBasisElement, GradedRingPresentation


class _NonHomogeneous:
    def __repr__(self) -> str:
        return "NON_HOMOGENEOUS"


NON_HOMOGENEOUS = _NonHomogeneous()


def basis_labels(p: int) -> list[str]:
    return ["1"] + [f"A{i}" for i in range(1, p)] + ["x"]


def _check_p(p: int) -> None:
    if not isinstance(p, int) or p < 2:
        raise InvalidInput("p must be an integer >= 2")


@dataclass(frozen=True, eq=False)
class TeardropElement:
    p: int
    coeffs: dict[int, QSeries]
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        _check_p(self.p)
        clean = {}
        for e, c in self.coeffs.items():
            if not 0 <= e <= self.p:
                raise InvalidInput(f"A1-exponent {e} not in normal form")
            if not isinstance(c, QSeries):
                c = QSeries.constant(c, self.truncation)
            c = QSeries(c.coeffs, self.truncation)
            if c:
                clean[e] = c
        object.__setattr__(self, "coeffs", clean)

    # construction -------------------------------------------------------------
    @classmethod
    def zero(cls, p: int, truncation: int = DEFAULT_TRUNCATION) -> TeardropElement:
        return cls(p, {}, truncation)

    @classmethod
    def scalar(cls, p: int, value: Scalar, truncation: int = DEFAULT_TRUNCATION) -> TeardropElement:
        return from_polynomial(p, {(0, 0): value}, truncation)

    @classmethod
    def q(cls, p: int, truncation: int = DEFAULT_TRUNCATION) -> TeardropElement:
        return from_polynomial(p, {(0, 1): 1}, truncation)

    @classmethod
    def basis(cls, p: int, label: str, truncation: int = DEFAULT_TRUNCATION) -> TeardropElement:
        labels = basis_labels(p)
        if label not in labels:
            raise InvalidInput(f"unknown teardrop basis label {label!r} for p={p}")
        return cls(p, {labels.index(label): 1}, truncation)

    def terms(self) -> dict[tuple[int, int], Fraction]:
        """``{(A1-exponent, q-exponent): coefficient}``."""
        return {(e, n): c for e, s in self.coeffs.items() for n, c in s.items()}

    # arithmetic --------------------------------------------------------------
    def _same(self, other: TeardropElement) -> None:
        if other.p != self.p:
            raise InvalidInput(f"mismatched p: {self.p} vs {other.p}")

    def _lift(self, other) -> TeardropElement:
        if isinstance(other, TeardropElement):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return TeardropElement.scalar(self.p, other, self.truncation)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        t = min(self.truncation, other.truncation)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, QSeries({}, t)) + c
        return TeardropElement(self.p, out, t)

    __radd__ = __add__

    def __neg__(self) -> TeardropElement:
        return TeardropElement(self.p, {e: -c for e, c in self.coeffs.items()}, self.truncation)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return multiply_teardrop(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TeardropElement:
        if n < 0:
            raise InvalidInput("negative powers are not defined")
        out = TeardropElement.scalar(self.p, 1, self.truncation)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = TeardropElement.scalar(self.p, other, self.truncation)
        if not isinstance(other, TeardropElement):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, tuple(sorted(self.terms().items()))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def at_q_zero(self) -> TeardropElement:
        return TeardropElement(self.p, {e: c.at_zero() for e, c in self.coeffs.items()}, self.truncation)

    def __str__(self) -> str:
        return format_teardrop(self)

    def __repr__(self) -> str:
        return f"TeardropElement(p={self.p}, {format_teardrop(self)})"


def from_polynomial(p: int, terms: Mapping[tuple[int, int], Scalar],
                    truncation: int = DEFAULT_TRUNCATION) -> TeardropElement:
    """Normalize ``sum c * A1**e * q**n`` using ``A1**(p+1) = q/p``."""
    _check_p(p)
    acc: dict[int, dict[int, Fraction]] = {}
    for (e, n), c in terms.items():
        if e < 0 or n < 0:
            raise InvalidInput("exponents must be non-negative")
        c = Fraction(c)
        while e > p:
            e -= p + 1
            n += 1
            c /= p
        if n > truncation or not c:
            continue
        slot = acc.setdefault(e, {})
        slot[n] = slot.get(n, Fraction(0)) + c
    return TeardropElement(p, {e: QSeries(cs, truncation) for e, cs in acc.items()}, truncation)


def multiply_teardrop(a: TeardropElement, b: TeardropElement) -> TeardropElement:
    if a.p != b.p:
        raise InvalidInput(f"mismatched p: {a.p} vs {b.p}")
    t = min(a.truncation, b.truncation)
    raw: dict[tuple[int, int], Fraction] = {}
    for (e1, n1), c1 in a.terms().items():
        for (e2, n2), c2 in b.terms().items():
            key = (e1 + e2, n1 + n2)
            raw[key] = raw.get(key, Fraction(0)) + c1 * c2
    return from_polynomial(a.p, raw, t)


def term_degree(p: int, e: int, n: int) -> Fraction:
    return Fraction(2 * e, p) + n * Fraction(2 * (p + 1), p)


def polynomial_degree(p: int, terms: Mapping[tuple[int, int], Scalar]):
    """Common degree of the nonzero terms, or ``NON_HOMOGENEOUS`` (``None`` for 0)."""
    degs = {term_degree(p, e, n) for (e, n), c in terms.items() if c}
    if not degs:
        return None
    if len(degs) > 1:
        return NON_HOMOGENEOUS
    return degs.pop()


def degree_of(a: TeardropElement):
    return polynomial_degree(a.p, a.terms())


def deg_q_weighted(a: int, b: int) -> Fraction:
    """Degree of q for the weighted projective line P(a, b)."""
    if a < 1 or b < 1:
        raise InvalidInput("weights must be positive integers")
    if gcd(a, b) != 1:
        raise InvalidInput(f"weights {a}, {b} are not coprime")
    return 2 * (Fraction(1, a) + Fraction(1, b))


def relation(p: int) -> dict[tuple[int, int], Fraction]:
    """The defining relation ``p A1**(p+1) - q`` as raw terms."""
    return {(p + 1, 0): Fraction(p), (0, 1): Fraction(-1)}


def derived_pairing(p: int) -> list[list[Fraction]]:
    """Pairing on the basis (1, A1, ..., A_{p-1}, x).

    Defined as 1/p times the x-coefficient of the classical (q = 0) product,
    using ``integral of x = 1/p``.  This gives ``<1, x> = <A_i, A_{p-i}> = 1/p``
    and is invariant: ``<a*b, c> = <a, b*c>``.
    """
    _check_p(p)
    labels = basis_labels(p)
    elems = [TeardropElement.basis(p, lab, 0) for lab in labels]
    return [[(a * b).at_q_zero().coeffs.get(p, QSeries({}, 0)).at_zero() / p for b in elems]
            for a in elems]


def export_presentation(p: int, truncation: int = DEFAULT_TRUNCATION) -> GradedRingPresentation:
    _check_p(p)
    labels = basis_labels(p)
    basis = tuple(GradedBasisElement(lab, Fraction(2 * e, p)) for e, lab in enumerate(labels))
    elems = [TeardropElement.basis(p, lab, truncation) for lab in labels]
    structure = {}
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            structure[(i, j)] = dict((a * b).coeffs)
    return GradedRingPresentation(basis, derived_pairing(p), structure,
                                  deg_q_weighted(p, 1), truncation, 0)


def format_teardrop(a: TeardropElement) -> str:
    if a.is_zero():
        return "0"
    labels = basis_labels(a.p)
    parts = []
    for (e, n), c in sorted(a.terms().items()):
        q = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
        lab = "" if e == 0 else labels[e]
        mono = "*".join(s for s in (q, lab) if s)
        if not mono:
            parts.append(format_fraction(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{format_fraction(c)}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


# --- expression parser -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(A\d+)|(x)|(q)|([-+*/^()∗·]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InvalidInput(f"cannot parse expression at {text[pos:]!r}")
        tok = m.group(m.lastindex)
        out.append("*" if tok in ("∗", "·") else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, p: int, text: str, truncation: int):
        self.p, self.t = p, truncation
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect=None):
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise InvalidInput(f"expected {expect or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> TeardropElement:
        if not self.toks:
            raise InvalidInput("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise InvalidInput(f"trailing input at {self.peek()!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() is not None and self.peek() not in ("+", "-", ")"):
            if self.peek() == "*":
                self.take()
            val = val * self.factor()
        return val

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise InvalidInput("exponent must be a non-negative integer")
            base = base ** int(tok)
        return base

    def atom(self):
        tok = self.take()
        p, t = self.p, self.t
        if tok.isdigit():
            val = Fraction(int(tok))
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise InvalidInput("bad fraction denominator")
                val /= int(den)
            return TeardropElement.scalar(p, val, t)
        if tok == "q":
            return TeardropElement.q(p, t)
        if tok == "x" or tok.startswith("A"):
            return TeardropElement.basis(p, tok, t)
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise InvalidInput(f"unexpected token {tok!r}")


def parse_expression(p: int, text: str, truncation: int = DEFAULT_TRUNCATION) -> TeardropElement:
    """Parse e.g. ``"1/2*q*A1 + x"``.  Juxtaposition also multiplies."""
    _check_p(p)
    return _Parser(p, text, truncation).parse()
