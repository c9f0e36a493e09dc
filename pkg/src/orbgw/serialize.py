"""Canonical text serialization of ring presentations.

The format is JSON with sorted keys, two-space indent and a trailing newline.
All rationals are strings in lowest terms (``"2/5"``, ``"3"``).  Structure
constants are a sorted list of ``[i, j, k, q_exponent, value]`` rows using
basis indices.
"""
from __future__ import annotations

import json
from typing import Any

from .errors import InvalidInput
from .exact import QSeries, format_fraction, parse_fraction
from .ring import GradedBasisElement, GradedRingPresentation

FORMAT_VERSION = 1


def presentation_to_dict(ring: GradedRingPresentation) -> dict[str, Any]:
    rows = []
    for (i, j), row in sorted(ring.structure.items()):
        for k, series in sorted(row.items()):
            for n, c in series.items():
                rows.append([i, j, k, n, format_fraction(c)])
    return {
        "basis": [{"label": b.label, "degree": format_fraction(b.degree)} for b in ring.basis],
        "format": FORMAT_VERSION,
        "identity": ring.identity,
        "pairing": [[format_fraction(x) for x in row] for row in ring.pairing],
        "q_degree": format_fraction(ring.q_degree),
        "structure_constants": rows,
        "truncation_order": ring.truncation,
    }


def dumps_canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps_presentation(ring: GradedRingPresentation) -> str:
    return dumps_canonical(presentation_to_dict(ring))


def presentation_from_dict(data: dict[str, Any]) -> GradedRingPresentation:
    try:
        basis = tuple(GradedBasisElement(str(b["label"]), parse_fraction(b["degree"]))
                      for b in data["basis"])
        pairing = [[parse_fraction(x) for x in row] for row in data["pairing"]]
        truncation = int(data["truncation_order"])
        collected: dict[tuple[int, int], dict[int, dict[int, Any]]] = {}
        for i, j, k, n, value in data["structure_constants"]:
            slot = collected.setdefault((int(i), int(j)), {}).setdefault(int(k), {})
            if int(n) in slot:
                raise InvalidInput(f"duplicate structure constant ({i}, {j}, {k}, {n})")
            slot[int(n)] = parse_fraction(value)
        structure = {ij: {k: QSeries(cs, truncation) for k, cs in row.items()}
                     for ij, row in collected.items()}
        return GradedRingPresentation(basis, pairing, structure,
                                      parse_fraction(data["q_degree"]), truncation,
                                      int(data.get("identity", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"malformed presentation: {exc}") from exc


def loads_presentation(text: str) -> GradedRingPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"presentation is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput("presentation must be a JSON object")
    return presentation_from_dict(data)
