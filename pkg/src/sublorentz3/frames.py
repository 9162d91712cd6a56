"""Adapted frames for left-invariant contact structures with a (-,+) metric.

Turns raw input (algebra, rank-2 distribution H, Lorentzian metric on H,
orientation choices) into the frame (X1 timelike, X2 spacelike, X3 Reeb)
and the six structure functions

    [X1, X3] = c X1 + c213 X2
    [X2, X3] = c123 X1 - c X2
    [X1, X2] = c112 X1 + c212 X2 + X3

where the contact form eta is normalized by eta([X2, X1]) = 1, eta(X3) = -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_TOL, LieAlgebra3, bracket, jacobi_defect
from .errors import (
    ContactViolation,
    DegenerateDistribution,
    ReebSolveFailure,
    SignatureMismatch,
)


@dataclass(frozen=True)
class MetricOnH:
    """Gram matrix of the metric on a chosen basis of the distribution."""

    gram: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=float).reshape(2, 2)
        g = 0.5 * (g + g.T)
        object.__setattr__(self, "gram", g)
        self.gram.setflags(write=False)

    def eigensystem(self):
        """Eigenvalues ascending with matching eigenvectors (columns)."""
        return np.linalg.eigh(self.gram)


@dataclass(frozen=True)
class OrientationFlags:
    time_sign: int = 1
    space_sign: int = 1

    def __post_init__(self):
        if self.time_sign not in (1, -1) or self.space_sign not in (1, -1):
            raise ValueError("orientation signs must be +1 or -1")


@dataclass(frozen=True)
class StructureFunctions:
    """The six frame structure functions (c213 = c^2_13 and so on)."""

    c: float
    c213: float
    c123: float
    c112: float
    c212: float

    def as_tuple(self) -> tuple:
        return (self.c, self.c213, self.c123, self.c112, self.c212)

    @property
    def scale(self) -> float:
        return max(1.0, max(abs(v) for v in self.as_tuple()))


@dataclass(frozen=True)
class AdaptedStructure:
    """Algebra plus adapted frame, contact form and structure functions."""

    alg: LieAlgebra3
    X1: np.ndarray
    X2: np.ndarray
    X3: np.ndarray
    sf: StructureFunctions
    flags: OrientationFlags
    eta: np.ndarray
    reeb_residual: float = 0.0

    @property
    def tol(self) -> float:
        return self.alg.tol


def _orient(v: np.ndarray, sign: int) -> np.ndarray:
    """Deterministic sign convention: first nonzero coordinate positive."""
    for x in v:
        if x != 0.0:
            return sign * v if x > 0 else -sign * v
    return v


def orthonormalize_h(
    alg: LieAlgebra3,
    h_basis,
    g: MetricOnH,
    flags: OrientationFlags = OrientationFlags(),
) -> tuple[np.ndarray, np.ndarray]:
    """Pseudo-orthonormal frame of H: g(X1,X1) = -1, g(X1,X2) = 0, g(X2,X2) = 1.

    The timelike leg comes from the negative eigendirection of the Gram
    matrix; the spacelike leg is projected against it and normalized.
    """
    tol = alg.tol
    H = np.asarray(h_basis, dtype=float).reshape(2, 3)
    sv = np.linalg.svd(H, compute_uv=False)
    if sv[0] <= tol or sv[1] <= tol * sv[0]:
        raise DegenerateDistribution("distribution basis is linearly dependent")

    evals, evecs = g.eigensystem()
    if not (evals[0] < -tol and evals[1] > tol):
        raise SignatureMismatch(
            f"metric eigenvalues {evals[0]:.3e}, {evals[1]:.3e} are not (-, +)"
        )
    gram = g.gram
    u_minus = _orient(evecs[:, 0], flags.time_sign)
    x1 = u_minus / np.sqrt(-(u_minus @ gram @ u_minus))
    # Eigenvectors of a symmetric Gram matrix are already g-orthogonal; the
    # projection only guards rounding.  g(x1, x1) = -1, so subtracting the
    # g-component along x1 means adding g(v, x1) * x1.
    u_plus = evecs[:, 1] + float(evecs[:, 1] @ gram @ x1) * x1
    u_plus = _orient(u_plus, flags.space_sign)
    x2 = u_plus / np.sqrt(u_plus @ gram @ u_plus)
    return H.T @ x1, H.T @ x2


def reeb_frame(
    alg: LieAlgebra3,
    X1,
    X2,
    flags: OrientationFlags = OrientationFlags(),
) -> AdaptedStructure:
    """Complete (X1, X2) to the adapted frame via the normalized contact form.

    eta is the annihilator of span{X1, X2} scaled so eta([X2, X1]) = 1; the
    Reeb vector X3 solves eta(X3) = -1 with eta([X3, v]) = 0 for all v.
    """
    tol = alg.tol
    X1 = np.asarray(X1, dtype=float).reshape(3)
    X2 = np.asarray(X2, dtype=float).reshape(3)
    b12 = bracket(alg, X1, X2)

    span = np.stack([X1, X2])
    coeffs, _, _, _ = np.linalg.lstsq(span.T, b12, rcond=None)
    off_h = b12 - span.T @ coeffs
    if np.linalg.norm(off_h) <= tol * max(1.0, float(np.linalg.norm(b12))):
        raise ContactViolation("[X1, X2] lies in the distribution")

    # eta: annihilates X1, X2; eta(b12) = -1 so that eta([X2, X1]) = 1.
    A = np.stack([X1, X2, b12])
    try:
        eta = np.linalg.solve(A, np.array([0.0, 0.0, -1.0]))
    except np.linalg.LinAlgError as exc:
        raise ContactViolation(f"frame plus [X1, X2] does not span: {exc}") from None

    # Reeb vector: 4 conditions, 3 unknowns (one bracket row is dependent).
    rows = [eta]
    rhs = [-1.0]
    for i in range(3):
        # linear form v -> eta([v, E_i])
        rows.append(np.array([eta @ alg.c[m, i] for m in range(3)]))
        rhs.append(0.0)
    M = np.stack(rows)
    b = np.array(rhs)
    X3, _, rank, _ = np.linalg.lstsq(M, b, rcond=None)
    residual = float(np.linalg.norm(M @ X3 - b))
    eta_scale = max(1.0, float(np.linalg.norm(eta)) * max(1.0, alg.scale))
    if rank < 3 or residual > tol * eta_scale:
        raise ReebSolveFailure(
            f"Reeb system rank {rank}, residual {residual:.3e}"
        )

    frame = np.stack([X1, X2, X3], axis=1)
    co13 = np.linalg.solve(frame, bracket(alg, X1, X3))
    co23 = np.linalg.solve(frame, bracket(alg, X2, X3))
    co12 = np.linalg.solve(frame, b12)
    checks = {
        "X3 component of [X1,X3]": abs(co13[2]),
        "X3 component of [X2,X3]": abs(co23[2]),
        "X3 normalization of [X1,X2]": abs(co12[2] - 1.0),
        "trace relation c113 + c223": abs(co13[0] + co23[1]),
    }
    worst = max(checks.values())
    if worst > tol * max(1.0, alg.scale, float(np.linalg.cond(frame))):
        name = max(checks, key=checks.get)
        raise ReebSolveFailure(f"adapted-frame consistency failed: {name} = {worst:.3e}")

    sf = StructureFunctions(
        c=float(co13[0]),
        c213=float(co13[1]),
        c123=float(co23[0]),
        c112=float(co12[0]),
        c212=float(co12[1]),
    )
    return AdaptedStructure(
        alg=alg, X1=X1, X2=X2, X3=X3, sf=sf, flags=flags, eta=eta,
        reeb_residual=residual,
    )


def adapt_structure(
    alg: LieAlgebra3,
    h_basis,
    g: MetricOnH,
    flags: OrientationFlags = OrientationFlags(),
) -> AdaptedStructure:
    """Full adaptation pipeline: orthonormalize the distribution, then Reeb."""
    X1, X2 = orthonormalize_h(alg, h_basis, g, flags)
    return reeb_frame(alg, X1, X2, flags)


def from_structure_functions(
    sf: StructureFunctions,
    tol: float = DEFAULT_TOL,
    flags: OrientationFlags = OrientationFlags(),
) -> AdaptedStructure:
    """Structure whose ambient basis is the adapted frame itself."""
    rows = [
        (sf.c112, sf.c212, 1.0),
        (sf.c, sf.c213, 0.0),
        (sf.c123, -sf.c, 0.0),
    ]
    alg = LieAlgebra3.from_pairs(rows, tol)
    return AdaptedStructure(
        alg=alg,
        X1=np.array([1.0, 0.0, 0.0]),
        X2=np.array([0.0, 1.0, 0.0]),
        X3=np.array([0.0, 0.0, 1.0]),
        sf=sf,
        flags=flags,
        eta=np.array([0.0, 0.0, -1.0]),
    )


def flip_orientation(s: AdaptedStructure, which: str) -> AdaptedStructure:
    """Reverse the time and/or space orientation and recompute the frame."""
    if which not in ("time", "space", "both"):
        raise ValueError("which must be 'time', 'space' or 'both'")
    t = -1 if which in ("time", "both") else 1
    p = -1 if which in ("space", "both") else 1
    flags = OrientationFlags(s.flags.time_sign * t, s.flags.space_sign * p)
    return reeb_frame(s.alg, t * s.X1, p * s.X2, flags)


def structure_residuals(s: AdaptedStructure) -> dict:
    """Named consistency residuals of an adapted structure, for reporting."""
    alg = s.alg
    frame = np.stack([s.X1, s.X2, s.X3], axis=1)
    co12 = np.linalg.solve(frame, bracket(alg, s.X1, s.X2))
    co13 = np.linalg.solve(frame, bracket(alg, s.X1, s.X3))
    co23 = np.linalg.solve(frame, bracket(alg, s.X2, s.X3))
    return {
        "jacobi_defect": jacobi_defect(alg),
        "eta_on_X1": abs(float(s.eta @ s.X1)),
        "eta_on_X2": abs(float(s.eta @ s.X2)),
        "eta_on_X3": abs(float(s.eta @ s.X3) + 1.0),
        "contact_normalization": abs(float(co12[2]) - 1.0),
        "trace_relation": abs(float(co13[0] + co23[1])),
        "reeb_residual": s.reeb_residual,
    }
