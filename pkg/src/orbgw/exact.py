"""Exact scalars and truncated q-series.

Every number in the package is a :class:`fractions.Fraction` or a Python
``int``; nothing is ever rounded.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Scalar = Union[int, Fraction]

DEFAULT_TRUNCATION = 3

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_fraction(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"`` or ``"num"`` into a Fraction.

    Only integer numerators/denominators are accepted; decimal notation is
    refused so that no floating point value can sneak in.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    m = _FRACTION_RE.match(str(text))
    if not m:
        raise ValueError(f"not an exact fraction: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_fraction(value: Scalar) -> str:
    """Render in lowest terms as ``num/den``, integers without ``/1``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class QSeries:
    """A power series in q truncated after ``q**truncation``.

    Exponents count multiples of the positive generator of the curve-class
    monoid.  Zero coefficients are never stored.  Instances are immutable.
    """

    __slots__ = ("_coeffs", "_truncation")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None,
                 truncation: int = DEFAULT_TRUNCATION):
        if truncation < 0:
            raise ValueError("truncation order must be non-negative")
        clean: dict[int, Fraction] = {}
        for n, c in (coeffs or {}).items():
            if n < 0:
                raise ValueError(f"negative q-exponent {n}")
            if n > truncation:
                continue
            c = Fraction(c)
            if c:
                clean[int(n)] = c
        self._coeffs = clean
        self._truncation = truncation

    @classmethod
    def constant(cls, value: Scalar, truncation: int = DEFAULT_TRUNCATION) -> QSeries:
        return cls({0: value}, truncation)

    @classmethod
    def monomial(cls, n: int, value: Scalar = 1,
                 truncation: int = DEFAULT_TRUNCATION) -> QSeries:
        return cls({n: value}, truncation)

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def __getitem__(self, n: int) -> Fraction:
        return self._coeffs.get(n, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._coeffs.items()))

    def exponents(self) -> list[int]:
        return sorted(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _coerce(self, other) -> QSeries:
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QSeries.constant(other, self._truncation)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = min(self._truncation, other._truncation)
        out = dict(self._coeffs)
        for n, c in other._coeffs.items():
            out[n] = out.get(n, 0) + c
        return QSeries(out, t)

    __radd__ = __add__

    def __neg__(self) -> QSeries:
        return QSeries({n: -c for n, c in self._coeffs.items()}, self._truncation)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = min(self._truncation, other._truncation)
        out: dict[int, Fraction] = {}
        for n1, c1 in self._coeffs.items():
            for n2, c2 in other._coeffs.items():
                n = n1 + n2
                if n <= t:
                    out[n] = out.get(n, 0) + c1 * c2
        return QSeries(out, t)

    __rmul__ = __mul__

    def shift(self, n: int) -> QSeries:
        """Multiply by ``q**n``."""
        return QSeries({e + n: c for e, c in self._coeffs.items()}, self._truncation)

    def truncate(self, order: int) -> QSeries:
        return QSeries(self._coeffs, min(order, self._truncation))

    def at_zero(self) -> Fraction:
        """Value at q = 0."""
        return self[0]

    def __eq__(self, other) -> bool:
        # truncation order is bookkeeping; equality is on coefficients
        if isinstance(other, QSeries):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._coeffs == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"QSeries({format_qseries(self)}, truncation={self._truncation})"

    def __str__(self) -> str:
        return format_qseries(self)


def format_qseries(s: QSeries) -> str:
    if s.is_zero():
        return "0"
    parts = []
    for n, c in s.items():
        if n == 0:
            parts.append(format_fraction(c))
            continue
        mono = "q" if n == 1 else f"q^{n}"
        if c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{format_fraction(c)}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def sum_series(items: Iterable[QSeries], truncation: int) -> QSeries:
    total = QSeries({}, truncation)
    for s in items:
        total = total + s
    return total
