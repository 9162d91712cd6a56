"""Human-writable structure documents and deterministic serialization.

Format: one statement per line, '#' starts a comment.

    basis = E1 E2 E3
    bracket E1 E2 = 0 0 1
    bracket E1 E3 = 0 0 0
    bracket E2 E3 = 0 0 0
    distribution = 1 0 0 ; 0 1 0
    metric = -1 0 ; 0 1
    time_orientation = 1
    space_orientation = 1
    tolerance = 1e-9

Unspecified brackets are zero; distribution defaults to the first two basis
directions, the metric to diag(-1, 1) and both orientations to +1.  Floats
render at 12 significant digits so that output is byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import DEFAULT_TOL, LieAlgebra3
from .errors import DocumentError
from .frames import MetricOnH, OrientationFlags

DEFAULT_BASIS = ("E1", "E2", "E3")


def fmt_float(x: float) -> str:
    """Fixed 12-significant-digit rendering; '-0' collapses to '0'."""
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def round12(x: float) -> float:
    return float(fmt_float(x))


@dataclass
class InputDocument:
    """Parsed structure description in a user-chosen basis."""

    algebra: LieAlgebra3
    basis: tuple = DEFAULT_BASIS
    distribution: np.ndarray = field(
        default_factory=lambda: np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    )
    metric: MetricOnH = field(
        default_factory=lambda: MetricOnH(np.diag([-1.0, 1.0]))
    )
    flags: OrientationFlags = OrientationFlags()
    tolerance: float = DEFAULT_TOL


def _floats(text: str, n: int, what: str) -> list:
    parts = text.split()
    if len(parts) != n:
        raise DocumentError(f"{what}: expected {n} numbers, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise DocumentError(f"{what}: {exc}") from None


def _sign(text: str, what: str) -> int:
    try:
        v = int(float(text))
    except ValueError as exc:
        raise DocumentError(f"{what}: {exc}") from None
    if v not in (1, -1):
        raise DocumentError(f"{what}: must be +1 or -1, got {text}")
    return v


def parse_document(text: str) -> InputDocument:
    basis = list(DEFAULT_BASIS)
    brackets: dict = {}
    distribution = None
    metric_rows = None
    time_sign, space_sign = 1, 1
    tolerance = DEFAULT_TOL

    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            statements.append((lineno, line))

    # A basis statement may rename labels used by bracket lines; scan it first.
    for lineno, line in statements:
        if line.startswith("basis"):
            _, _, rhs = line.partition("=")
            labels = rhs.split()
            if len(labels) != 3 or len(set(labels)) != 3:
                raise DocumentError(f"line {lineno}: basis needs 3 distinct labels")
            basis = labels

    for lineno, line in statements:
        key, eq, rhs = line.partition("=")
        key, rhs = key.strip(), rhs.strip()
        if not eq:
            raise DocumentError(f"line {lineno}: expected 'key = value'")
        if key.startswith("bracket"):
            parts = key.split()
            if len(parts) != 3:
                raise DocumentError(f"line {lineno}: bracket needs two labels")
            try:
                i, j = basis.index(parts[1]), basis.index(parts[2])
            except ValueError:
                raise DocumentError(
                    f"line {lineno}: unknown basis label in {parts[1:]!r}"
                ) from None
            if i == j:
                raise DocumentError(f"line {lineno}: bracket of a label with itself")
            coeffs = np.array(_floats(rhs, 3, f"line {lineno}: bracket"))
            if i > j:
                i, j = j, i
                coeffs = -coeffs
            if (i, j) in brackets:
                raise DocumentError(f"line {lineno}: duplicate bracket {parts[1:]!r}")
            brackets[(i, j)] = coeffs
        elif key == "basis":
            continue
        elif key == "distribution":
            vecs = rhs.split(";")
            if len(vecs) != 2:
                raise DocumentError(f"line {lineno}: distribution needs 2 vectors")
            distribution = np.array(
                [_floats(v, 3, f"line {lineno}: distribution") for v in vecs]
            )
        elif key == "metric":
            rows = rhs.split(";")
            if len(rows) == 1:
                flat = _floats(rhs, 4, f"line {lineno}: metric")
                metric_rows = np.array(flat).reshape(2, 2)
            elif len(rows) == 2:
                metric_rows = np.array(
                    [_floats(r, 2, f"line {lineno}: metric") for r in rows]
                )
            else:
                raise DocumentError(f"line {lineno}: metric needs 2 rows")
            if abs(metric_rows[0, 1] - metric_rows[1, 0]) > 1e-12 * max(
                1.0, float(np.max(np.abs(metric_rows)))
            ):
                raise DocumentError(f"line {lineno}: metric must be symmetric")
        elif key == "time_orientation":
            time_sign = _sign(rhs, f"line {lineno}: time_orientation")
        elif key == "space_orientation":
            space_sign = _sign(rhs, f"line {lineno}: space_orientation")
        elif key == "tolerance":
            try:
                tolerance = float(rhs)
            except ValueError as exc:
                raise DocumentError(f"line {lineno}: tolerance: {exc}") from None
            if not 0.0 < tolerance < 1.0:
                raise DocumentError(f"line {lineno}: tolerance must be in (0, 1)")
        else:
            raise DocumentError(f"line {lineno}: unknown key {key!r}")

    alg = LieAlgebra3.from_dict(brackets, tol=tolerance)
    doc = InputDocument(algebra=alg, basis=tuple(basis), tolerance=tolerance)
    if distribution is not None:
        doc.distribution = distribution
    if metric_rows is not None:
        doc.metric = MetricOnH(metric_rows)
    doc.flags = OrientationFlags(time_sign, space_sign)
    return doc


def serialize_document(doc: InputDocument, header: Optional[str] = None) -> str:
    """Canonical text form; parse(serialize(doc)) reproduces doc."""
    lines = []
    if header:
        lines.append(f"# {header}")
    lines.append(f"basis = {' '.join(doc.basis)}")
    pairs = ((0, 1), (0, 2), (1, 2))
    for i, j in pairs:
        coeffs = " ".join(fmt_float(v) for v in doc.algebra.c[i, j])
        lines.append(f"bracket {doc.basis[i]} {doc.basis[j]} = {coeffs}")
    dist = " ; ".join(
        " ".join(fmt_float(v) for v in row) for row in doc.distribution
    )
    lines.append(f"distribution = {dist}")
    metric = " ; ".join(
        " ".join(fmt_float(v) for v in row) for row in doc.metric.gram
    )
    lines.append(f"metric = {metric}")
    lines.append(f"time_orientation = {doc.flags.time_sign:+d}")
    lines.append(f"space_orientation = {doc.flags.space_sign:+d}")
    lines.append(f"tolerance = {fmt_float(doc.tolerance)}")
    return "\n".join(lines) + "\n"
