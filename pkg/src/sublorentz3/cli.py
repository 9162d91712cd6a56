"""Command-line front end.

Subcommands: validate, adapt, invariants, classify, recognize, construct,
table, prolongation.  Input is a structure document (file path or '-' for
stdin); construct emits a document so it can be piped straight into
classify.  Exit codes: 0 success, 1 malformed input or parameters, 2
mathematical inconsistency (Jacobi or contact violation, inconsistent
classification, table mismatches), 3 marginal-only result under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import __version__
from .algebra import DEFAULT_TOL, LieAlgebra3, jacobi_defect
from .classify import (
    FOOTNOTES,
    ClassificationReport,
    Status,
    classify,
    construct_from_invariants,
    table_report,
)
from .document import (
    InputDocument,
    fmt_float,
    parse_document,
    round12,
    serialize_document,
)
from .errors import (
    BadParameter,
    ContactViolation,
    DegenerateDistribution,
    DocumentError,
    InfeasibleParameters,
    JacobiViolation,
    NotALieAlgebra,
    ReebSolveFailure,
    SignatureMismatch,
    SingularMatrix,
    SubLorentzError,
)
from .frames import (
    AdaptedStructure,
    adapt_structure,
    flip_orientation,
    structure_residuals,
)
from .invariants import invariant_set
from .prolongation import heisenberg_symbol, line_symbol, prolongation_dim
from .recognize import recognize

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_INCONSISTENT = 2
EXIT_MARGINAL = 3

_BAD_INPUT_ERRORS = (
    DocumentError,
    SignatureMismatch,
    DegenerateDistribution,
    BadParameter,
    InfeasibleParameters,
    SingularMatrix,
    ValueError,
)
_MATH_ERRORS = (NotALieAlgebra, ContactViolation, ReebSolveFailure)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exit code collides with ours
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None


def _round_tree(value):
    if isinstance(value, float):
        return round12(value)
    if isinstance(value, dict):
        return {k: _round_tree(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_tree(v) for v in value]
    return value


def _render_text(data: dict, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    for key, value in data.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_text(value, indent + 1))
        elif isinstance(value, (list, tuple)):
            if value and isinstance(value[0], dict):
                lines.append(f"{pad}{key}:")
                for item in value:
                    lines.append(f"{pad}  -")
                    lines.extend(_render_text(item, indent + 2))
            else:
                rendered = " ".join(
                    fmt_float(v) if isinstance(v, float) else str(v) for v in value
                )
                lines.append(f"{pad}{key} = {rendered}")
        elif isinstance(value, float):
            lines.append(f"{pad}{key} = {fmt_float(value)}")
        elif isinstance(value, bool):
            lines.append(f"{pad}{key} = {'true' if value else 'false'}")
        else:
            lines.append(f"{pad}{key} = {value}")
    return lines


def _emit(data: dict, as_json: bool):
    if as_json:
        print(json.dumps(_round_tree(data), indent=2))
    else:
        print("\n".join(_render_text(data)))


def _vector(v) -> list:
    return [float(x) for x in np.asarray(v).ravel()]


def _structure_section(s: AdaptedStructure) -> dict:
    return {
        "X1": _vector(s.X1),
        "X2": _vector(s.X2),
        "X3": _vector(s.X3),
        "eta": _vector(s.eta),
        "structure_functions": {
            "c": s.sf.c,
            "c213": s.sf.c213,
            "c123": s.sf.c123,
            "c112": s.sf.c112,
            "c212": s.sf.c212,
        },
    }


def _invariants_section(s: AdaptedStructure, tol: float) -> dict:
    inv = invariant_set(s, tol)
    data = {
        "kappa": inv.kappa,
        "h": {"a": inv.h.a, "b": inv.h.b, "det": inv.h.det},
        "normal_form": {
            "class": inv.hform.klass.value,
            "boost_t": inv.hform.t,
            "marginal": inv.hform.marginal,
        },
    }
    if inv.hform.chi is not None:
        data["normal_form"]["chi"] = inv.hform.chi
    if inv.tau is not None:
        data["tau"] = inv.tau
    return data


def _classification_section(report: ClassificationReport) -> dict:
    row = report.row
    data = {
        "row": {
            "id": row.row_id,
            "h_class": row.h_class.value,
            "condition": row.condition,
            "kappa": row.kappa,
            "solution": row.solution_id,
            "expected_algebra": row.expected_algebra.label,
        },
        "realized_algebra": report.realized_algebra.label,
        "status": report.status.value,
        "jacobi_defect": report.jacobi_defect,
    }
    if row.tau_or_chi is not None:
        data["row"]["tau_or_chi"] = row.tau_or_chi
    if row.footnote:
        data["row"]["footnote"] = FOOTNOTES[row.footnote]
    if report.marginal_flags:
        data["marginal_flags"] = list(report.marginal_flags)
    return data


def _adapt_from_doc(doc: InputDocument) -> AdaptedStructure:
    return adapt_structure(doc.algebra, doc.distribution, doc.metric, doc.flags)


def _tolerance(doc: InputDocument, args) -> float:
    return args.tolerance if args.tolerance is not None else doc.tolerance


def _with_tolerance(doc: InputDocument, args) -> InputDocument:
    tol = _tolerance(doc, args)
    doc.tolerance = tol
    doc.algebra = LieAlgebra3(doc.algebra.c, tol)
    return doc


def cmd_validate(args) -> int:
    doc = _with_tolerance(parse_document(_read_input(args.input)), args)
    tol = doc.tolerance
    data = {"tolerance": tol}
    failures = 0

    defect = jacobi_defect(doc.algebra)
    data["jacobi_defect"] = defect
    jacobi_ok = defect <= tol * max(1.0, doc.algebra.scale) ** 2
    data["jacobi_ok"] = jacobi_ok

    evals = np.linalg.eigvalsh(doc.metric.gram)
    data["metric_eigenvalues"] = [float(v) for v in evals]
    data["metric_ok"] = bool(evals[0] < -tol and evals[1] > tol)

    sv = np.linalg.svd(doc.distribution, compute_uv=False)
    data["distribution_ok"] = bool(sv[0] > tol and sv[1] > tol * sv[0])

    contact_ok = False
    if data["metric_ok"] and data["distribution_ok"] and jacobi_ok:
        try:
            s = _adapt_from_doc(doc)
            contact_ok = True
            data["residuals"] = {k: float(v) for k, v in structure_residuals(s).items()}
        except (ContactViolation, ReebSolveFailure) as exc:
            data["contact_error"] = str(exc)
    data["contact_ok"] = contact_ok

    if not (data["metric_ok"] and data["distribution_ok"]):
        failures = EXIT_BAD_INPUT
    elif not (jacobi_ok and contact_ok):
        failures = EXIT_INCONSISTENT
    data["ok"] = failures == 0
    _emit(data, args.json)
    return failures


def cmd_adapt(args) -> int:
    doc = _with_tolerance(parse_document(_read_input(args.input)), args)
    s = _adapt_from_doc(doc)
    data = {"tolerance": doc.tolerance}
    data.update(_structure_section(s))
    data["residuals"] = {k: float(v) for k, v in structure_residuals(s).items()}
    _emit(data, args.json)
    return EXIT_OK


def cmd_invariants(args) -> int:
    doc = _with_tolerance(parse_document(_read_input(args.input)), args)
    s = _adapt_from_doc(doc)
    data = {"tolerance": doc.tolerance}
    data.update(_invariants_section(s, doc.tolerance))
    _emit(data, args.json)
    marginal = data.get("normal_form", {}).get("marginal", False)
    if args.strict and marginal:
        return EXIT_MARGINAL
    return EXIT_OK


def cmd_classify(args) -> int:
    doc = _with_tolerance(parse_document(_read_input(args.input)), args)
    defect = jacobi_defect(doc.algebra)
    if defect > doc.tolerance * max(1.0, doc.algebra.scale) ** 2:
        raise JacobiViolation(f"Jacobi defect {defect:.3e} exceeds tolerance")
    s = _adapt_from_doc(doc)
    report = classify(s, doc.tolerance)
    data = {"tolerance": doc.tolerance}
    data["invariants"] = _invariants_section(s, doc.tolerance)
    data.update(_classification_section(report))
    _emit(data, args.json)
    if report.status is Status.INCONSISTENT:
        return EXIT_INCONSISTENT
    if args.strict and report.status is Status.MARGINAL:
        return EXIT_MARGINAL
    return EXIT_OK


def cmd_recognize(args) -> int:
    doc = _with_tolerance(parse_document(_read_input(args.input)), args)
    cls = recognize(doc.algebra, doc.tolerance)
    data = {
        "tolerance": doc.tolerance,
        "algebra": cls.label,
        "tag": cls.tag.name,
    }
    if cls.eta is not None:
        data["eta"] = cls.eta
    data["marginal"] = cls.marginal
    _emit(data, args.json)
    if args.strict and cls.marginal:
        return EXIT_MARGINAL
    return EXIT_OK


def cmd_construct(args) -> int:
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOL
    s = construct_from_invariants(
        args.case,
        args.solution,
        kappa=args.kappa,
        chi=args.chi,
        tau=args.tau,
        aux=args.aux,
        sign=args.sign,
        tol=tol,
    )
    if args.flip != "none":
        s = flip_orientation(s, args.flip)
    doc = InputDocument(
        algebra=s.alg,
        basis=("X1", "X2", "X3"),
        flags=s.flags,
        tolerance=tol,
    )
    header = f"constructed: case={args.case} solution={args.solution or '-'}"
    sys.stdout.write(serialize_document(doc, header=header))
    return EXIT_OK


def cmd_table(args) -> int:
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOL
    records = table_report(tol=tol)
    mismatches = sum(1 for r in records if not r.match)
    if args.json:
        data = {
            "tolerance": tol,
            "records": [
                {
                    "case": r.case,
                    "solution": r.solution,
                    "params": {k: v for k, v in r.params},
                    "flip": r.flip,
                    "row": r.row_id,
                    "expected": r.expected,
                    "realized": r.realized,
                    "status": r.status.value,
                    "match": r.match,
                }
                for r in records
            ],
            "total": len(records),
            "mismatches": mismatches,
            "footnotes": dict(sorted(FOOTNOTES.items())),
        }
        _emit(data, True)
    else:
        for r in records:
            params = " ".join(f"{k}={fmt_float(v)}" for k, v in r.params)
            if r.flip != "none":
                params += f" flip={r.flip}"
            mark = "ok " if r.match else "BAD"
            print(
                f"{mark} {r.case}/{r.solution} {params} -> {r.row_id} "
                f"expected {r.expected} realized {r.realized} [{r.status.value}]"
            )
        print(f"total = {len(records)}")
        print(f"mismatches = {mismatches}")
        for name in sorted(FOOTNOTES):
            print(f"note {name}: {FOOTNOTES[name]}")
    return EXIT_OK if mismatches == 0 else EXIT_INCONSISTENT


_SYMBOLS = {
    "contact": lambda tol: heisenberg_symbol(True, tol),
    "contact-flat": lambda tol: heisenberg_symbol(False, tol),
    "line-scalar": lambda tol: line_symbol(tol),
}


def cmd_prolongation(args) -> int:
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOL
    symbol = _SYMBOLS[args.symbol](tol)
    dim = prolongation_dim(symbol)
    _emit(
        {
            "tolerance": tol,
            "symbol": args.symbol,
            "prolongation_dim": dim,
        },
        args.json,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="sublorentz3",
        description="Classify left-invariant contact structures with a (-,+) metric "
        "on 3D Lie groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tolerance", type=float, default=None,
        help="override the working tolerance (default: document value or 1e-9)",
    )
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when the result is only marginal")
    common.add_argument("--json", action="store_true", help="structured output")

    sub = parser.add_subparsers(dest="command", required=True)

    def doc_cmd(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="structure document path, or - for stdin")
        p.set_defaults(func=func)
        return p

    doc_cmd("validate", cmd_validate, "check a structure document")
    doc_cmd("adapt", cmd_adapt, "compute the adapted frame and structure functions")
    doc_cmd("invariants", cmd_invariants, "compute kappa, h, normal form, chi/tau")
    doc_cmd("classify", cmd_classify, "full classification report")
    doc_cmd("recognize", cmd_recognize, "identify the Lie algebra class")

    pc = sub.add_parser("construct", parents=[common],
                        help="emit the structure document of a solution branch")
    pc.add_argument("--case", required=True,
                    choices=["zero", "degenerate", "det-pos", "det-neg"])
    pc.add_argument("--solution", default=None,
                    help="A/B for zero, 1/2/3 for degenerate and det-pos")
    pc.add_argument("--kappa", type=float, default=0.0)
    pc.add_argument("--chi", type=float, default=None)
    pc.add_argument("--tau", type=float, default=None)
    pc.add_argument("--aux", type=float, default=None,
                    help="extra branch datum (c112 for case zero/A)")
    pc.add_argument("--sign", type=int, default=1, choices=[1, -1],
                    help="sign of b for degenerate solution 3")
    pc.add_argument("--flip", default="none",
                    choices=["none", "time", "space", "both"],
                    help="reverse orientations after construction")
    pc.set_defaults(func=cmd_construct)

    pt = sub.add_parser("table", parents=[common],
                        help="regenerate and verify the classification table")
    pt.add_argument("--grid", default="default", choices=["default"],
                    help="parameter grid (only the built-in default)")
    pt.set_defaults(func=cmd_table)

    pp = sub.add_parser("prolongation", parents=[common],
                        help="dimension of the first symbol prolongation")
    pp.add_argument("--symbol", default="contact", choices=sorted(_SYMBOLS))
    pp.set_defaults(func=cmd_prolongation)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _BAD_INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except _MATH_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except SubLorentzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
