"""Command-line entry point: ``mangle VERB INPUT [--output json|text]``.

Exit status is 0 on success, 1 when a mathematical precondition fails (the
witness goes to stderr) and 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from .complexes import SimplicialComplex
from .errors import DomainError, InputError, MangleError
from .fans import FanData, normal_fan
from .hodge import PsiMap
from .io import Document, decode, dumps, parse_gaussian, read_document
from .polytopes import Presentation
from .quadrics import QuadricSystem, quadrics_from_presentation
from . import reports

VERBS = ("analyze", "gale", "quadrics", "fan", "delzant", "betti", "hodge", "lagrangian", "pipeline")

ACCEPTS = {
    "analyze": ("presentation",),
    "gale": ("presentation",),
    "quadrics": ("presentation", "quadrics"),
    "fan": ("presentation", "fan"),
    "delzant": ("presentation",),
    "betti": ("presentation", "fan", "complex"),
    "hodge": ("presentation", "fan"),
    "lagrangian": ("presentation", "quadrics"),
    "pipeline": ("presentation",),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mangle",
        description="Exact computations for polytopes, quadrics, fans and moment-angle manifolds.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    helps = {
        "analyze": "vertices, genericity, boundedness and redundancy of a presentation",
        "gale": "Gale dual quadrics and Gale diagram",
        "quadrics": "nondegeneracy, small-case topology and moment map of the quadrics",
        "fan": "fan validity, completeness, regularity and quotient data",
        "delzant": "Delzant test; exits 1 with the failing vertex when it fails",
        "betti": "Betti numbers of the moment-angle manifold",
        "hodge": "Hodge numbers for a complex structure",
        "lagrangian": "D-action, embedding test and topology of the Lagrangian",
        "pipeline": "every report reachable from a presentation",
    }
    for verb in VERBS:
        p = sub.add_parser(verb, help=helps[verb])
        p.add_argument("input", help="JSON input file")
        p.add_argument("--output", choices=("text", "json"), default="text")
        if verb == "betti":
            p.add_argument("--oracle", action="store_true", help="also run the independent Koszul computation")
        if verb == "hodge":
            p.add_argument("--psi", help="JSON file holding a custom Psi matrix, or an object with key \"psi\"")
    return parser


def _load_psi(path: str) -> PsiMap:
    from pathlib import Path

    try:
        data = decode(Path(path).read_text(), path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if isinstance(data, dict):
        if "psi" not in data:
            raise InputError(f"{path}: expected a list or an object with key \"psi\"")
        data = data["psi"]
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError(f"{path}: Psi must be a list of rows")
    return PsiMap([[parse_gaussian(x, f"psi[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(data)])


def _as_fan(value: Presentation | FanData) -> FanData:
    return normal_fan(value) if isinstance(value, Presentation) else value


def run_verb(verb: str, doc: Document, args: argparse.Namespace) -> tuple[dict, int]:
    if doc.kind not in ACCEPTS[verb]:
        raise InputError(f"{verb} expects {' or '.join(ACCEPTS[verb])} input, got {doc.kind}")
    value = doc.value
    status = 0
    if verb == "analyze":
        report = reports.analyze_report(value)
    elif verb == "gale":
        report = reports.gale_report(value)
    elif verb == "quadrics":
        q = value if isinstance(value, QuadricSystem) else quadrics_from_presentation(value)
        report = reports.quadrics_report(q)
    elif verb == "fan":
        report = reports.fan_report(_as_fan(value))
    elif verb == "delzant":
        report = reports.delzant_report(value)
        status = 0 if report["delzant"] else 1
    elif verb == "betti":
        target = value if isinstance(value, SimplicialComplex) else _as_fan(value)
        report = reports.betti_report(target, oracle=args.oracle)
    elif verb == "hodge":
        fan = _as_fan(value)
        if isinstance(value, Presentation) and (fan.m - fan.n) % 2:
            fan = reports.with_ghost(fan)
        psi = _load_psi(args.psi) if args.psi else (PsiMap(doc.psi) if doc.psi is not None else None)
        report = reports.hodge_report(fan, psi)
    elif verb == "lagrangian":
        q = value if isinstance(value, QuadricSystem) else quadrics_from_presentation(value, "real")
        report = reports.lagrangian_report(q)
    else:
        report = reports.pipeline_report(value)
    if doc.notices:
        report = {**report, "notices": doc.notices}
    return report, status


def _text_lines(data: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, val in data.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text_lines(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(f"{pad}  - " + ", ".join(f"{k}={_flat(v)}" for k, v in item.items()))
        elif isinstance(val, str) and "\n" in val:
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  {line}" for line in val.splitlines())
        else:
            lines.append(f"{pad}{key}: {_flat(val)}")
    return lines


def _flat(val: Any) -> str:
    if isinstance(val, list):
        return "[" + ", ".join(_flat(v) for v in val) + "]"
    if isinstance(val, bool):
        return "yes" if val else "no"
    if val is None:
        return "-"
    return str(val)


def render_text(verb: str, report: dict) -> str:
    if verb == "betti":
        lines = []
        if "model" in report:
            lines.append(" ".join(map(str, report["model"])))
        if "oracle" in report:
            prefix = "oracle: " if "model" in report else ""
            lines.append(prefix + " ".join(map(str, report["oracle"])))
        lines.extend(f"notice: {n}" for n in report.get("notices", []))
        return "\n".join(lines)
    if verb == "hodge":
        head = [f"Psi: {report['psi']}", f"ell = {report['ell']}, ghost vertices k = {report['ghost_count']}", ""]
        body = [report["diamond"], ""] + [f"h^{key} = {v}" for key, v in report["hodge"].items()]
        return "\n".join(head + body)
    return "\n".join(_text_lines(report))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = read_document(args.input)
        report, status = run_verb(args.verb, doc, args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return 1
    except MangleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = dumps(report) if args.output == "json" else render_text(args.verb, report)
    print(out)
    if status:
        print("not Delzant: see failing_vertex and failing_active", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
