"""Graded ring presentations over truncated q-series.

A presentation is an ordered basis with rational degrees, a Poincare pairing
and structure constants ``gamma_i * gamma_j = sum_k c_ij^k(q) gamma_k``.  The
checks here (grading, associativity, commutativity) report violations rather
than raise, so that a broken presentation can be inspected.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import IncompleteData, IntegrityError, InvalidInput, SingularPairing, StructuralError
from .exact import DEFAULT_TRUNCATION, QSeries, Scalar, format_fraction

Matrix = tuple[tuple[Fraction, ...], ...]
StructureConstants = dict[tuple[int, int], dict[int, QSeries]]
Element = dict[str, QSeries]


@dataclass(frozen=True)
class GradedBasisElement:
    label: str
    degree: Fraction

    def __post_init__(self):
        object.__setattr__(self, "degree", Fraction(self.degree))
        if self.degree < 0:
            raise InvalidInput(f"negative degree for {self.label!r}")


def invert_pairing(pairing: Sequence[Sequence[Scalar]]) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(pairing)
    if any(len(row) != n for row in pairing):
        raise InvalidInput("pairing matrix must be square")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(pairing)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularPairing("pairing matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _mat(pairing: Sequence[Sequence[Scalar]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in pairing)


@dataclass(frozen=True, eq=False)
class GradedRingPresentation:
    """Graded ring over Q[[q]]/(q^{T+1}) built from even classes.

    Degrees include the age shift, so they may be any non-negative rational
    (A1 on the p=2 teardrop sits in degree 1).  Parity is that of the
    underlying class and is enforced where classes are created, see
    :func:`orbgw.ages.graded_degrees`.

    ``structure`` maps index pairs ``(i, j)`` to ``{k: c_ij^k}``; missing
    pairs are zero products.  ``identity`` is the index of the unit.
    """

    basis: tuple[GradedBasisElement, ...]
    pairing: Matrix
    structure: StructureConstants
    q_degree: Fraction = Fraction(0)
    truncation: int = DEFAULT_TRUNCATION
    identity: int = 0
    _inverse: Matrix = field(init=False, repr=False)
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "pairing", _mat(self.pairing))
        object.__setattr__(self, "q_degree", Fraction(self.q_degree))
        n = len(self.basis)
        labels = [b.label for b in self.basis]
        if len(set(labels)) != n:
            raise InvalidInput("basis labels must be unique")
        if self.truncation < 0:
            raise InvalidInput("truncation order must be non-negative")
        if len(self.pairing) != n or any(len(r) != n for r in self.pairing):
            raise InvalidInput("pairing must be a square matrix matching the basis")
        for i in range(n):
            for j in range(i):
                if self.pairing[i][j] != self.pairing[j][i]:
                    raise InvalidInput(f"pairing not symmetric at ({i}, {j})")
        object.__setattr__(self, "_inverse", invert_pairing(self.pairing))
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

        clean: StructureConstants = {}
        for (i, j), row in self.structure.items():
            for idx in (i, j, *row):
                if not 0 <= idx < n:
                    raise StructuralError(f"structure constant index {idx} out of range")
            kept = {}
            for k, s in row.items():
                if not isinstance(s, QSeries):
                    s = QSeries.constant(s, self.truncation)
                s = s.truncate(self.truncation)
                if s:
                    kept[k] = QSeries(s.coeffs, self.truncation)
            if kept:
                clean[(i, j)] = kept
        object.__setattr__(self, "structure", clean)

        if not 0 <= self.identity < n:
            raise InvalidInput("identity index out of range")
        one = QSeries.constant(1, self.truncation)
        e = self.identity
        for j in range(n):
            if clean.get((e, j), {}) != {j: one} or clean.get((j, e), {}) != {j: one}:
                raise InvalidInput(
                    f"identity {self.basis[e].label!r} does not act as unit on "
                    f"{self.basis[j].label!r}")

    @property
    def labels(self) -> list[str]:
        return [b.label for b in self.basis]

    @property
    def inverse_pairing(self) -> Matrix:
        return self._inverse

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise StructuralError(f"unknown basis label {label!r}") from None

    def degree(self, label: str) -> Fraction:
        return self.basis[self.index(label)].degree

    def constant(self, i: int, j: int, k: int) -> QSeries:
        return self.structure.get((i, j), {}).get(k, QSeries({}, self.truncation))

    def basis_element(self, label: str) -> Element:
        self.index(label)
        return {label: QSeries.constant(1, self.truncation)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedRingPresentation):
            return NotImplemented
        return (self.basis == other.basis and self.pairing == other.pairing
                and self.structure == other.structure
                and self.q_degree == other.q_degree
                and self.truncation == other.truncation
                and self.identity == other.identity)

    def with_structure(self, structure: StructureConstants, **changes) -> GradedRingPresentation:
        kw = dict(basis=self.basis, pairing=self.pairing, structure=structure,
                  q_degree=self.q_degree, truncation=self.truncation,
                  identity=self.identity)
        kw.update(changes)
        return GradedRingPresentation(**kw)


def _homogeneous(ring: GradedRingPresentation, i: int, j: int, k: int, n: int) -> bool:
    b = ring.basis
    return b[i].degree + b[j].degree == b[k].degree + n * ring.q_degree


def _as_indexed(ring: GradedRingPresentation, a: Mapping[str, Scalar | QSeries]) -> dict[int, QSeries]:
    out = {}
    for label, c in a.items():
        if not isinstance(c, QSeries):
            c = QSeries.constant(c, ring.truncation)
        if c:
            out[ring.index(label)] = c.truncate(ring.truncation)
    return out


def _product(ring, a: dict[int, QSeries], b: dict[int, QSeries], strict: bool) -> dict[int, QSeries]:
    t = ring.truncation
    out: dict[int, QSeries] = {}
    for i, ca in a.items():
        for j, cb in b.items():
            coeff = ca * cb
            if not coeff:
                continue
            for k, c in ring.structure.get((i, j), {}).items():
                if strict:
                    for n in c.exponents():
                        if not _homogeneous(ring, i, j, k, n):
                            lab = ring.labels
                            raise IntegrityError(
                                f"{lab[i]}*{lab[j]} has q^{n} term on {lab[k]} "
                                f"violating the grading")
                term = coeff * c
                if term:
                    out[k] = out.get(k, QSeries({}, t)) + term
    return {k: v for k, v in out.items() if v}


def multiply(a: Mapping[str, Scalar | QSeries], b: Mapping[str, Scalar | QSeries],
             ring: GradedRingPresentation) -> Element:
    """Bilinear product of two ring elements given as ``{label: coefficient}``.

    Raises :class:`IntegrityError` if a structure constant that contributes
    to the product is not homogeneous.
    """
    prod = _product(ring, _as_indexed(ring, a), _as_indexed(ring, b), strict=True)
    return {ring.labels[k]: v for k, v in sorted(prod.items())}


@dataclass(frozen=True)
class AssociativityViolation:
    triple: tuple[str, str, str]
    left: Element
    right: Element


@dataclass(frozen=True)
class GradingViolation:
    i: str
    j: str
    k: str
    q_exponent: int
    source_degree: Fraction
    target_degree: Fraction


@dataclass(frozen=True)
class CommutativityViolation:
    pair: tuple[str, str]
    left: Element
    right: Element


def _unit(i: int, t: int) -> dict[int, QSeries]:
    return {i: QSeries.constant(1, t)}


def check_associativity(ring: GradedRingPresentation) -> list[AssociativityViolation]:
    """Compare ``(a*b)*c`` and ``a*(b*c)`` for every ordered basis triple."""
    n, t, labels = len(ring.basis), ring.truncation, ring.labels
    basis = [_unit(i, t) for i in range(n)]
    pair = {(i, j): _product(ring, basis[i], basis[j], strict=False)
            for i in range(n) for j in range(n)}
    bad = []
    for a, b, c in product(range(n), repeat=3):
        left = _product(ring, pair[a, b], basis[c], strict=False)
        right = _product(ring, basis[a], pair[b, c], strict=False)
        if left != right:
            bad.append(AssociativityViolation(
                (labels[a], labels[b], labels[c]),
                {labels[k]: v for k, v in sorted(left.items())},
                {labels[k]: v for k, v in sorted(right.items())}))
    return bad


def check_grading(ring: GradedRingPresentation) -> list[GradingViolation]:
    """Homogeneity of every nonzero ``q^n`` term of every structure constant."""
    bad = []
    b = ring.basis
    for (i, j), row in sorted(ring.structure.items()):
        for k, c in sorted(row.items()):
            for n in c.exponents():
                if not _homogeneous(ring, i, j, k, n):
                    bad.append(GradingViolation(
                        b[i].label, b[j].label, b[k].label, n,
                        b[i].degree + b[j].degree, b[k].degree + n * ring.q_degree))
    return bad


def check_commutativity(ring: GradedRingPresentation) -> list[CommutativityViolation]:
    n, labels = len(ring.basis), ring.labels
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            left = ring.structure.get((i, j), {})
            right = ring.structure.get((j, i), {})
            if left != right:
                bad.append(CommutativityViolation(
                    (labels[i], labels[j]),
                    {labels[k]: v for k, v in sorted(left.items())},
                    {labels[k]: v for k, v in sorted(right.items())}))
    return bad


# --- classes <-> numbers --------------------------------------------------

NumberKey = tuple[tuple[str, str, str], int]


def classes_from_numbers(numbers: Mapping[NumberKey, Scalar],
                         pairing: Sequence[Sequence[Scalar]],
                         basis: Sequence[GradedBasisElement],
                         truncation: int = DEFAULT_TRUNCATION) -> StructureConstants:
    """Turn three-point numbers ``<a, b, alpha_i>_beta`` into class-valued products.

    ``a * b = sum_beta q^beta sum_{i,j} <a, b, alpha_i>_beta g^{ij} alpha_j``.
    Every ordered triple of basis labels and every ``beta <= truncation`` must
    be present in ``numbers``.
    """
    labels = [b.label for b in basis]
    n = len(labels)
    ginv = invert_pairing(pairing)
    out: StructureConstants = {}
    for a, b in product(range(n), repeat=2):
        row: dict[int, dict[int, Fraction]] = {}
        for beta in range(truncation + 1):
            vals = []
            for i in range(n):
                key = ((labels[a], labels[b], labels[i]), beta)
                if key not in numbers:
                    raise IncompleteData(f"missing number <{', '.join(key[0])}>_{beta}")
                vals.append(Fraction(numbers[key]))
            for j in range(n):
                c = sum((vals[i] * ginv[i][j] for i in range(n) if vals[i]), Fraction(0))
                if c:
                    row.setdefault(j, {})[beta] = c
        if row:
            out[(a, b)] = {j: QSeries(cs, truncation) for j, cs in row.items()}
    return out


def numbers_from_classes(ring: GradedRingPresentation, gammas: tuple[str, str],
                         extra: str, beta: int) -> Fraction:
    """``<gamma_1, gamma_2, extra>_beta``: the q^beta part of the product paired with ``extra``."""
    a, b = (ring.index(g) for g in gammas)
    e = ring.index(extra)
    total = Fraction(0)
    for k, c in ring.structure.get((a, b), {}).items():
        if c[beta]:
            total += c[beta] * ring.pairing[k][e]
    return total


def all_numbers(ring: GradedRingPresentation) -> dict[NumberKey, Fraction]:
    """Every three-point number the presentation determines, up to truncation."""
    labels = ring.labels
    return {((a, b, c), beta): numbers_from_classes(ring, (a, b), c, beta)
            for a, b, c in product(labels, repeat=3)
            for beta in range(ring.truncation + 1)}


def presentation_from_numbers(numbers: Mapping[NumberKey, Scalar],
                              pairing: Sequence[Sequence[Scalar]],
                              basis: Sequence[GradedBasisElement],
                              q_degree: Scalar,
                              truncation: int = DEFAULT_TRUNCATION,
                              identity: int = 0) -> GradedRingPresentation:
    structure = classes_from_numbers(numbers, pairing, basis, truncation)
    return GradedRingPresentation(tuple(basis), pairing, structure, q_degree, truncation, identity)


def format_element(elem: Mapping[str, QSeries]) -> str:
    """Human-readable rendering such as ``x + 1/2*q*A1``."""
    if not elem:
        return "0"
    parts = []
    for label, c in elem.items():
        for n, v in c.items():
            q = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
            mono = "*".join(p for p in (q, label) if p and p != "1") or "1"
            if v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_fraction(v)}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def identity_matrix_check(pairing: Matrix, inverse: Matrix) -> bool:
    """``g_ij g^jk == delta_i^k`` exactly."""
    n = len(pairing)
    return all(sum(pairing[i][j] * inverse[j][k] for j in range(n)) == int(i == k)
               for i in range(n) for k in range(n))


def zero_ring() -> GradedRingPresentation:
    one = QSeries.constant(1, 0)
    return GradedRingPresentation((GradedBasisElement("1", Fraction(0)),), ((1,),),
                                  {(0, 0): {0: one}}, 0, 0)


def perturb(ring: GradedRingPresentation, i: str, j: str, k: str,
            delta: Scalar = 1, beta: int = 0) -> GradedRingPresentation:
    """Copy of ``ring`` with ``c_ij^k`` shifted by ``delta * q**beta``."""
    a, b, c = ring.index(i), ring.index(j), ring.index(k)
    structure = {key: dict(row) for key, row in ring.structure.items()}
    row = structure.setdefault((a, b), {})
    row[c] = row.get(c, QSeries({}, ring.truncation)) + QSeries.monomial(beta, delta, ring.truncation)
    return ring.with_structure(structure)

