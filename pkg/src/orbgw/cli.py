"""Command-line entry point.

Exit status: 0 when every check passes, 2 when a computation-level check
fails, 1 on usage or parse errors.  ``--format structured`` prints a canonical
JSON envelope ``{command, inputs, result, checks}``.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import ages, groups, orbrr, plane_curves, teardrop
from .errors import OrbGWError
from .exact import DEFAULT_TRUNCATION, format_fraction, parse_fraction
from .ring import (check_associativity, check_commutativity, check_grading,
                   format_element)
from .serialize import dumps_canonical, dumps_presentation, loads_presentation, presentation_to_dict

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


@dataclass
class OutputEnvelope:
    command: str
    inputs: dict[str, Any]
    result: Any
    checks: list[tuple[str, bool]] = field(default_factory=list)
    text: str = ""                     # human-readable rendering
    details: list[str] = field(default_factory=list)   # failure details, to stderr

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def structured(self) -> str:
        return dumps_canonical({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "checks": [{"name": n, "pass": p} for n, p in self.checks],
        })


# --- subcommands --------------------------------------------------------------

def _nd(args) -> OutputEnvelope:
    table = plane_curves.compute_table(args.max_d)
    rows = table.values
    via_splittings = plane_curves.table_from_splittings(args.max_d)
    lines = ["d N_d"] + [f"{d} {n}" for d, n in rows]
    result: dict[str, Any] = {"N": [[d, str(n)] for d, n in rows]}
    if args.terms:
        terms = []
        lines.append("")
        lines.append("side d d1 d2 point_split z q r weight")
        for d in range(2, args.max_d + 1):
            for side in ("right", "left"):
                for t in plane_curves.enumerate_splittings(d, side):
                    terms.append({"d": d, "d1": t.d1, "d2": t.d2, "side": side,
                                  "point_split": str(t.point_split), "weight": str(t.weight)})
                    lines.append(f"{side} {d} {t.d1} {t.d2} {t.point_split} {t.node_choices} "
                                 f"{t.q_choices} {t.r_choices} {t.weight}")
        result["terms"] = terms
    checks = [
        ("positive_integers", all(isinstance(n, int) and n >= 1 for _, n in rows)),
        ("splitting_reassembly", all(via_splittings[d] == n for d, n in rows)),
    ]
    return OutputEnvelope("nd", {"max_d": args.max_d, "terms": args.terms}, result, checks,
                          "\n".join(lines))


def _point_str(v) -> str:
    return "inf" if v is plane_curves.INF else format_fraction(v)


def _cross_ratio(args) -> OutputEnvelope:
    pts = [plane_curves.as_point(a) for a in args.points]
    cr = plane_curves.cross_ratio(*pts)
    checks = [("not_boundary", cr is not plane_curves.INF and cr not in (0, 1))]
    return OutputEnvelope("cross-ratio", {"points": [_point_str(p) for p in pts]},
                          _point_str(cr), checks, _point_str(cr))


def _ring_checks(ring) -> tuple[list[tuple[str, bool]], list[str]]:
    grading = check_grading(ring)
    assoc = check_associativity(ring)
    comm = check_commutativity(ring)
    details = []
    for v in grading:
        details.append(f"grading violated: {v.i}*{v.j} -> q^{v.q_exponent} {v.k} "
                       f"(degree {format_fraction(v.source_degree)} != "
                       f"{format_fraction(v.target_degree)})")
    for v in assoc:
        a, b, c = v.triple
        details.append(f"associativity violated at ({a}, {b}, {c}): "
                       f"({a}*{b})*{c} = {format_element(v.left)}, "
                       f"{a}*({b}*{c}) = {format_element(v.right)}")
    for v in comm:
        a, b = v.pair
        details.append(f"commutativity violated at ({a}, {b}): "
                       f"{format_element(v.left)} != {format_element(v.right)}")
    checks = [("grading", not grading), ("associativity", not assoc), ("commutativity", not comm)]
    return checks, details


def _emit_presentation(command, inputs, ring, args, checks, details) -> OutputEnvelope:
    text = dumps_presentation(ring).rstrip("\n")
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        text = f"wrote {args.output} ({len(ring.basis)} basis elements)"
    return OutputEnvelope(command, inputs, presentation_to_dict(ring), checks, text, details)


def _bg_ring(args) -> OutputEnvelope:
    spec = Path(args.group).read_text(encoding="utf-8")
    g = groups.parse_group_spec(spec, args.max_order)
    ring = groups.bg_ring(g)
    checks, details = _ring_checks(ring)
    if args.verify_center:
        bad = groups.verify_bg_is_center(g)
        checks.append(("bg_is_center", not bad))
        details += [f"center mismatch {m.what} {m.key}: bg={format_fraction(m.bg_value)} "
                    f"center={format_fraction(m.center_value)}" for m in bad]
    inputs = {"group": spec.strip(), "order": g.order, "verify_center": args.verify_center}
    return _emit_presentation("bg-ring", inputs, ring, args, checks, details)


def _weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"bad weight list {text!r}") from exc


def _age(args) -> OutputEnvelope:
    w = ages.WeightVector(args.r, _weights(args.weights))
    partner = ages.involution_partner(w)
    a, b = ages.age(w), ages.age(partner)
    nonzero = sum(1 for k in w.weights if k)
    result = {"age": format_fraction(a), "partner_weights": list(partner.weights),
              "partner_age": format_fraction(b)}
    checks = [("age_in_range", a == 0 or a < w.rank),
              ("involution_sum", a + b == nonzero)]
    text = f"age = {format_fraction(a)}"
    return OutputEnvelope("age", {"r": args.r, "weights": list(w.weights)}, result, checks, text)


def _sectors(args) -> OutputEnvelope:
    table = ages.sector_table_cyclic(args.p, args.tangent_weight)
    by_label = {s.label: s for s in table}
    rows = [{"label": s.label, "band_order": s.band_order, "age": format_fraction(s.age),
             "partner": s.partner_label} for s in table]
    involutive = all(by_label[by_label[s.label].partner_label].partner_label == s.label
                     for s in table)
    lines = ["label r age partner"] + [
        f"{r['label']} {r['band_order']} {r['age']} {r['partner']}" for r in rows]
    return OutputEnvelope("sectors", {"p": args.p, "tangent_weight": args.tangent_weight},
                          rows, [("involution", involutive)], "\n".join(lines))


def _teardrop(args) -> OutputEnvelope:
    inputs = {"p": args.p, "truncation": args.truncation, "action": args.action}
    if args.action == "multiply":
        if len(args.exprs) != 2:
            raise UsageError("teardrop multiply takes exactly two expressions")
        a, b = (teardrop.parse_expression(args.p, e, args.truncation) for e in args.exprs)
        prod = a * b
        inputs["exprs"] = [str(a), str(b)]
        deg = teardrop.degree_of(prod)
        result = {"product": str(prod),
                  "degree": format_fraction(deg) if deg not in (None, teardrop.NON_HOMOGENEOUS)
                  else repr(deg)}
        return OutputEnvelope("teardrop", inputs, result, [], str(prod))
    if args.exprs:
        raise UsageError("teardrop export takes no expressions")
    ring = teardrop.export_presentation(args.p, args.truncation)
    checks, details = _ring_checks(ring)
    return _emit_presentation("teardrop", inputs, ring, args, checks, details)


def _chi(args) -> OutputEnvelope:
    data = orbrr.OrbifoldSheafData(args.rank, parse_fraction(args.deg), args.chi0,
                                   orbrr.parse_ages(args.ages or ""))
    value = orbrr.chi(data)
    inputs = {"rank": data.rank, "deg": format_fraction(data.degree), "chi0": data.chi_O,
              "ages": [format_fraction(a) for a in data.marking_ages]}
    checks = [("integral", orbrr.is_integral(value))]
    return OutputEnvelope("chi", inputs, format_fraction(value), checks,
                          f"chi = {format_fraction(value)}")


def _ring_check(args) -> OutputEnvelope:
    ring = loads_presentation(Path(args.file).read_text(encoding="utf-8"))
    checks, details = _ring_checks(ring)
    lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in checks] + details
    return OutputEnvelope("ring-check", {"file": str(args.file)},
                          {"violations": details}, checks, "\n".join(lines))


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text",
                        help="text table (default) or canonical JSON envelope")
    p = _Parser(prog="orbgw", description="Exact genus-0 orbifold Gromov-Witten toolkit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("nd", parents=[common], help="rational plane curve counts N_d")
    s.add_argument("--max-d", type=int, required=True)
    s.add_argument("--terms", action="store_true", help="per-splitting breakdown")
    s.set_defaults(func=_nd)

    s = sub.add_parser("cross-ratio", parents=[common],
                       help="CR(p1, p2, q, r); use 'inf' for infinity, '--' before negatives")
    s.add_argument("points", nargs=4)
    s.set_defaults(func=_cross_ratio)

    s = sub.add_parser("bg-ring", parents=[common], help="orbifold cohomology ring of B G")
    s.add_argument("--group", required=True, help="group spec file ('perm:' or 'table:')")
    s.add_argument("--verify-center", action="store_true")
    s.add_argument("--max-order", type=int, default=groups.DEFAULT_MAX_ORDER)
    s.add_argument("--output")
    s.set_defaults(func=_bg_ring)

    s = sub.add_parser("age", parents=[common], help="age of a mu_r representation")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--weights", required=True, help="comma-separated k1,k2,...")
    s.set_defaults(func=_age)

    s = sub.add_parser("sectors", parents=[common], help="twisted sectors of P(p,1)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--tangent-weight", type=int, default=1)
    s.set_defaults(func=_sectors)

    s = sub.add_parser("teardrop", parents=[common], help="quantum ring of P(p,1)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    s.add_argument("--output")
    s.add_argument("action", choices=("multiply", "export"))
    s.add_argument("exprs", nargs="*")
    s.set_defaults(func=_teardrop)

    s = sub.add_parser("chi", parents=[common], help="orbifold Riemann-Roch")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--deg", required=True)
    s.add_argument("--chi0", type=int, required=True)
    s.add_argument("--ages", default="")
    s.set_defaults(func=_chi)

    s = sub.add_parser("ring-check", parents=[common],
                       help="grading/associativity/commutativity of a presentation file")
    s.add_argument("file")
    s.set_defaults(func=_ring_check)
    return p


def dispatch(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        env = args.func(args)
    except UsageError as exc:
        stderr.write(str(exc).rstrip("\n") + "\n")
        return EXIT_USAGE
    except (OrbGWError, ValueError, ZeroDivisionError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    if args.format == "structured":
        stdout.write(env.structured())
    else:
        stdout.write(env.text + "\n")
        for name, ok in env.checks:
            if not ok:
                stderr.write(f"check failed: {name}\n")
    for line in env.details:
        stderr.write(line + "\n")
    return EXIT_OK if env.ok else EXIT_CHECK


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
