"""Finite groups as multiplication tables, and the ring of B G.

Two independent constructions of the same ring live here:

* :func:`bg_ring` sums ``|C(gh)| / |C(g) n C(h)|`` over simultaneous
  conjugacy classes of pairs, one orbit at a time;
* :func:`center_oracle` multiplies class sums in the group algebra by brute
  force over all pairs of elements.

:func:`verify_bg_is_center` compares them under ``x_(g) -> class sum of (g)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import InvalidGroup, InvalidInput, TooLarge
from .exact import QSeries
from .ring import GradedBasisElement, GradedRingPresentation

DEFAULT_MAX_ORDER = 5000

Perm = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group on indices ``0..order-1``.

    ``mult[a, b]`` is the index of ``a b``.  For groups built from
    permutations ``a b`` means "apply b, then a" and ``elements`` keeps the
    permutations (0-based images) for display.
    """

    mult: np.ndarray
    identity: int
    inverse: np.ndarray
    elements: tuple[Perm, ...] | None = None

    @property
    def order(self) -> int:
        return int(self.mult.shape[0])

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x] = g x g^-1``."""
        return K.conjugation_table(self.mult, self.inverse)

    @cached_property
    def class_labels(self) -> np.ndarray:
        return K.class_labels(self.conj)

    @cached_property
    def centralizer_orders(self) -> np.ndarray:
        return K.centralizer_sizes(self.conj)

    def element_name(self, g: int) -> str:
        if self.elements is None:
            return str(g)
        return format_cycles(self.elements[g])


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: tuple[int, ...]
    centralizer_order: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class PairClass:
    representative_pair: tuple[int, int]
    product_class: int          # position in conjugacy_classes(g)
    joint_centralizer_order: int


# --- construction -------------------------------------------------------------

def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def from_table(rows: Sequence[Sequence[int]]) -> GroupTable:
    """Validate a row-major multiplication table and wrap it."""
    try:
        mult = np.array(rows, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise InvalidGroup(f"table is not a rectangular integer matrix: {exc}") from exc
    if mult.ndim != 2 or mult.shape[0] != mult.shape[1] or mult.shape[0] == 0:
        raise InvalidGroup("table must be a non-empty square matrix")
    n = mult.shape[0]
    if mult.min() < 0 or mult.max() >= n:
        raise InvalidGroup("table entries must be element indices")
    ar = np.arange(n)
    ids = [e for e in range(n) if (mult[e] == ar).all() and (mult[:, e] == ar).all()]
    if not ids:
        raise InvalidGroup("table has no identity element")
    e = ids[0]
    inverse = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        hits = np.nonzero(mult[a] == e)[0]
        if len(hits) != 1 or mult[hits[0], a] != e:
            raise InvalidGroup(f"element {a} has no two-sided inverse")
        inverse[a] = hits[0]
    for a in range(n):
        if len(np.unique(mult[a])) != n or len(np.unique(mult[:, a])) != n:
            raise InvalidGroup("table is not a Latin square")
    mult = _freeze(mult)
    if K.associativity_failures(mult):
        raise InvalidGroup("table is not associative")
    return GroupTable(mult, e, _freeze(inverse))


def from_permutations(generators: Sequence[Perm], max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Close a set of permutations (0-based image tuples) under composition.

    Elements are numbered identity first, then in order of first appearance in a
    breadth-first closure that multiplies each known element on the right by
    each generator in turn.
    """
    degree = max((len(p) for p in generators), default=1) or 1
    gens = []
    for p in generators:
        p = tuple(p) + tuple(range(len(p), degree))
        if sorted(p) != list(range(degree)):
            raise InvalidGroup(f"not a permutation: {p}")
        gens.append(p)
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident: 0}
    head = 0
    while head < len(elements):
        g = elements[head]
        head += 1
        for s in gens:
            h = tuple(g[s[x]] for x in range(degree))
            if h not in seen:
                if len(elements) >= max_order:
                    raise TooLarge(f"group order exceeds bound {max_order}")
                seen[h] = len(elements)
                elements.append(h)
    perms = np.array(elements, dtype=np.int64)
    n = len(elements)
    mult = np.empty((n, n), dtype=np.int64)
    if degree ** degree < 2 ** 62:
        weights = np.array([degree ** i for i in range(degree)], dtype=np.int64)
        keys = perms @ weights
        order = np.argsort(keys)
        sorted_keys = keys[order]
        for a in range(n):
            comp = perms[a][perms]          # comp[b, x] = a(b(x))
            mult[a] = order[np.searchsorted(sorted_keys, comp @ weights)]
    else:
        for a in range(n):
            comp = perms[a][perms]
            mult[a] = [seen[tuple(row)] for row in comp.tolist()]
    inverse = np.empty(n, dtype=np.int64)
    for a in range(n):
        inverse[a] = int(np.nonzero(mult[a] == 0)[0][0])
    # composition of permutations is associative; identity and inverses by construction
    return GroupTable(_freeze(mult), 0, _freeze(inverse), tuple(elements))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """``"(1 2)(3 4)"`` -> ``[[1, 2], [3, 4]]`` (points as written, 1-based)."""
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise InvalidInput(f"unexpected text in cycle notation: {stripped!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if any(p < 1 for p in pts):
            raise InvalidInput("cycle points are 1-based positive integers")
        if len(set(pts)) != len(pts):
            raise InvalidInput(f"repeated point in cycle ({body})")
        cycles.append(pts)
    return cycles


def cycles_to_perm(cycles: list[list[int]], degree: int) -> Perm:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def format_cycles(perm: Perm) -> str:
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = perm[x]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def parse_group_spec(text: str, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Parse the group file format.

    ``perm: (1 2)(3 4); (1 2 3)`` gives generators in cycle notation;
    ``table:`` followed by whitespace-separated rows gives a table.
    """
    body = text.strip()
    low = body.lower()
    if low.startswith("perm:"):
        gens_text = re.sub(r"\)\s*,\s*\(", ");(", body[5:])
        chunks = [c.strip() for c in gens_text.split(";") if c.strip()]
        if not chunks:
            raise InvalidInput("no generators given")
        cycles = [parse_cycles(c) for c in chunks]
        degree = max([p for cs in cycles for cyc in cs for p in cyc], default=1)
        return from_permutations([cycles_to_perm(cs, degree) for cs in cycles], max_order)
    if low.startswith("table:"):
        rows = []
        for line in body[6:].splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([int(t) for t in re.split(r"[\s,]+", line) if t])
            except ValueError as exc:
                raise InvalidInput(f"bad table row {line!r}") from exc
        if len(rows) > max_order:
            raise TooLarge(f"group order exceeds bound {max_order}")
        return from_table(rows)
    raise InvalidInput("group spec must start with 'perm:' or 'table:'")


def build_group(spec, max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """Build from a spec string, a list of permutations, or ``{"table": rows}``."""
    if isinstance(spec, GroupTable):
        return spec
    if isinstance(spec, str):
        return parse_group_spec(spec, max_order)
    if isinstance(spec, dict) and "table" in spec:
        return from_table(spec["table"])
    return from_permutations([tuple(p) for p in spec], max_order)


# --- classes ------------------------------------------------------------------

def conjugacy_classes(g: GroupTable) -> list[ConjClass]:
    labels = g.class_labels
    cent = g.centralizer_orders
    out = []
    for rep in np.unique(labels):
        members = tuple(int(x) for x in np.nonzero(labels == rep)[0])
        out.append(ConjClass(int(rep), members, int(cent[rep])))
    return out


def _class_index(g: GroupTable, classes: list[ConjClass]) -> np.ndarray:
    idx = np.empty(g.order, dtype=np.int64)
    for i, c in enumerate(classes):
        idx[list(c.members)] = i
    return idx


def pair_classes(g: GroupTable, i: int, j: int,
                 classes: list[ConjClass] | None = None) -> list[PairClass]:
    """Simultaneous conjugacy classes of pairs (a, b), a in class i, b in class j.

    Every such class contains a pair whose first entry is the representative of
    class i, so it suffices to take orbits of the centralizer of that
    representative on class j.
    """
    classes = classes if classes is not None else conjugacy_classes(g)
    cidx = _class_index(g, classes)
    a = classes[i].representative
    members = np.array(classes[j].members, dtype=np.int64)
    rep, stab = K.pair_orbits(g.conj, a, members)
    out = []
    for t, b in enumerate(members):
        if rep[t] == b:
            ab = int(g.mult[a, b])
            out.append(PairClass((a, int(b)), int(cidx[ab]), int(stab[t])))
    return out


def class_label(c: ConjClass) -> str:
    return f"x{c.representative}"


def _bg_pairing(g: GroupTable, classes: list[ConjClass]) -> list[list[Fraction]]:
    cidx = _class_index(g, classes)
    n = len(classes)
    pairing = [[Fraction(0)] * n for _ in range(n)]
    for i, c in enumerate(classes):
        j = int(cidx[g.inverse[c.representative]])
        pairing[i][j] = Fraction(1, c.centralizer_order)
    return pairing


def bg_ring(g: GroupTable) -> GradedRingPresentation:
    """Orbifold cohomology of B G on the basis of conjugacy classes.

    All ages vanish and there are no curve classes, so every degree is 0 and
    only q^0 appears.  The pairing is ``<x_(g), x_(h)> = 1/|C(g)|`` when
    ``(h) = (g^-1)`` and 0 otherwise.
    """
    classes = conjugacy_classes(g)
    n = len(classes)
    structure: dict[tuple[int, int], dict[int, QSeries]] = {}
    for i in range(n):
        for j in range(n):
            row: dict[int, Fraction] = {}
            for pc in pair_classes(g, i, j, classes):
                k = pc.product_class
                w = Fraction(classes[k].centralizer_order, pc.joint_centralizer_order)
                row[k] = row.get(k, Fraction(0)) + w
            structure[(i, j)] = {k: QSeries.constant(v, 0) for k, v in row.items()}
    basis = tuple(GradedBasisElement(class_label(c), Fraction(0)) for c in classes)
    ident = int(_class_index(g, classes)[g.identity])
    return GradedRingPresentation(basis, _bg_pairing(g, classes), structure, 0, 0, ident)


def center_oracle(g: GroupTable) -> GradedRingPresentation:
    """Class sums multiplied out in Q[G] by brute force over all element pairs.

    The coefficient of the class sum C_k in C_i C_j is read off at the
    representative of k; every other member of k is checked to carry the same
    coefficient.  The pairing is the coefficient of the identity divided by |G|.
    """
    classes = conjugacy_classes(g)
    n = len(classes)
    cidx = _class_index(g, classes)
    structure: dict[tuple[int, int], dict[int, QSeries]] = {}
    pairing = [[Fraction(0)] * n for _ in range(n)]
    for i, ci in enumerate(classes):
        counts = K.class_product_counts(g.mult, cidx, np.array(ci.members, dtype=np.int64), n)
        for j in range(n):
            row = {}
            for k, ck in enumerate(classes):
                vals = counts[j, list(ck.members)]
                if (vals != vals[0]).any():
                    raise ArithmeticError("product of class sums is not central")
                if vals[0]:
                    row[k] = QSeries.constant(int(vals[0]), 0)
            structure[(i, j)] = row
            pairing[i][j] = Fraction(int(counts[j, g.identity]), g.order)
    basis = tuple(GradedBasisElement(class_label(c), Fraction(0)) for c in classes)
    return GradedRingPresentation(basis, pairing, structure, 0, 0, int(cidx[g.identity]))


@dataclass(frozen=True)
class CenterMismatch:
    what: str           # "structure" or "pairing"
    key: tuple[str, ...]
    bg_value: Fraction
    center_value: Fraction


def verify_bg_is_center(g: GroupTable) -> list[CenterMismatch]:
    """Compare :func:`bg_ring` with :func:`center_oracle` entry by entry."""
    bg, center = bg_ring(g), center_oracle(g)
    labels = bg.labels
    n = len(labels)
    bad = []
    if bg.identity != center.identity:
        bad.append(CenterMismatch("identity", (labels[bg.identity], labels[center.identity]),
                                  Fraction(1), Fraction(1)))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a = bg.constant(i, j, k).at_zero()
                b = center.constant(i, j, k).at_zero()
                if a != b:
                    bad.append(CenterMismatch("structure", (labels[i], labels[j], labels[k]), a, b))
            if bg.pairing[i][j] != center.pairing[i][j]:
                bad.append(CenterMismatch("pairing", (labels[i], labels[j]),
                                          bg.pairing[i][j], center.pairing[i][j]))
    return bad


# --- fixtures -----------------------------------------------------------------

def cyclic(n: int) -> GroupTable:
    if n == 1:
        return from_permutations([(0,)])
    return from_permutations([tuple((x + 1) % n for x in range(n))])


def quaternion() -> GroupTable:
    """Q8 from the multiplication of the units +-1, +-i, +-j, +-k."""
    # unit products: (u, v) -> (sign, w) with units 0=1, 1=i, 2=j, 3=k
    unit = {(0, v): (1, v) for v in range(4)}
    unit.update({(u, 0): (1, u) for u in range(4)})
    unit.update({(1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
                 (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
                 (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)})
    elems = [(s, u) for u in range(4) for s in (1, -1)]
    index = {e: i for i, e in enumerate(elems)}
    rows = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, w = unit[(u1, u2)]
            row.append(index[(s1 * s2 * s, w)])
        rows.append(row)
    return from_table(rows)


FIXTURE_SPECS = {
    "S3": "perm: (1 2); (1 2 3)",
    "S4": "perm: (1 2); (1 2 3 4)",
    "D4": "perm: (1 2 3 4); (1 3)",
}


def fixture_groups() -> dict[str, GroupTable]:
    """Z/n for n <= 8, S3, S4, D4 and Q8."""
    groups = {f"Z{n}": cyclic(n) for n in range(1, 9)}
    groups.update({name: parse_group_spec(spec) for name, spec in FIXTURE_SPECS.items()})
    groups["Q8"] = quaternion()
    return groups
