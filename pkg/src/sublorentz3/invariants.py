"""Curvature-gauge coefficients and the fundamental invariants kappa, h, chi, tau.

For left-invariant structures every frame-derivative term vanishes, so the
gauge coefficients and curvature components are polynomial in the six
structure functions.  The trace-free curvature component is encoded by the
pair (a, b) with

    h = ((a, b), (-b, -a)),   a = c,   b = (c123 - c213) / 2,

on which a hyperbolic frame rotation by t acts as

    a' = cosh(2t) a + sinh(2t) b,   b' = sinh(2t) a + cosh(2t) b.

Reduction under this action yields the boost normal form of h and, for
degenerate nonzero h, the residual invariant tau = c112 in the normalized
frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .algebra import DEFAULT_TOL
from .errors import NotDefined
from .frames import AdaptedStructure, reeb_frame


@dataclass(frozen=True)
class GaugeCoefficients:
    """Connection-gauge coefficients of the normalized section."""

    beta1: float
    beta2: float
    beta3: float


@dataclass(frozen=True)
class CurvatureGauge:
    """Curvature two-form coefficients on w_i ^ w_3 (the w_1 ^ w_2 parts vanish)."""

    omega1_13: float
    omega1_23: float
    omega2_13: float
    omega2_23: float
    omega4_13: float
    omega4_23: float


@dataclass(frozen=True)
class HTensor:
    """Trace-free curvature component, stored as the pair (a, b)."""

    a: float
    b: float

    @property
    def det(self) -> float:
        return self.b * self.b - self.a * self.a

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [-self.b, -self.a]])

    @property
    def scale(self) -> float:
        return max(abs(self.a), abs(self.b))

    def is_zero(self, eps: float = DEFAULT_TOL) -> bool:
        return self.scale <= eps


class HClass(Enum):
    """Boost orbit classes of the trace-free component."""

    ZERO = "zero"
    DEG_PP = "degenerate(+,+)"
    DEG_PM = "degenerate(+,-)"
    DEG_MP = "degenerate(-,+)"
    DEG_MM = "degenerate(-,-)"
    DET_POS = "det>0"
    DET_NEG = "det<0"


DEGENERATE_CLASSES = (HClass.DEG_PP, HClass.DEG_PM, HClass.DEG_MP, HClass.DEG_MM)

_DEG_BY_SIGNS = {
    (1, 1): HClass.DEG_PP,
    (1, -1): HClass.DEG_PM,
    (-1, 1): HClass.DEG_MP,
    (-1, -1): HClass.DEG_MM,
}


@dataclass(frozen=True)
class HNormalForm:
    """Normal form of h, the boost parameter reaching it, and its amplitude."""

    klass: HClass
    t: float
    chi: Optional[float] = None
    marginal: bool = False

    @property
    def matrix(self) -> np.ndarray:
        if self.klass is HClass.ZERO:
            return np.zeros((2, 2))
        if self.klass is HClass.DET_POS:
            return np.array([[0.0, self.chi], [-self.chi, 0.0]])
        if self.klass is HClass.DET_NEG:
            return np.array([[self.chi, 0.0], [0.0, -self.chi]])
        sa, sb = _DEG_SIGNS[self.klass]
        return np.array([[sa, sb], [-sb, -sa]], dtype=float)

    @property
    def degenerate(self) -> bool:
        return self.klass in DEGENERATE_CLASSES


_DEG_SIGNS = {v: k for k, v in _DEG_BY_SIGNS.items()}


@dataclass(frozen=True)
class InvariantSet:
    """Everything the classification consumes: kappa, h, its form, tau."""

    kappa: float
    h: HTensor
    hform: HNormalForm
    tau: Optional[float] = None


def gauge_coefficients(s: AdaptedStructure) -> GaugeCoefficients:
    sf = s.sf
    return GaugeCoefficients(
        beta1=sf.c112,
        beta2=-sf.c212,
        beta3=sf.c212 ** 2 - sf.c112 ** 2,
    )


def curvature_gauge(s: AdaptedStructure) -> CurvatureGauge:
    sf = s.sf
    g = gauge_coefficients(s)
    return CurvatureGauge(
        omega1_13=-sf.c,
        omega1_23=-(sf.c123 + g.beta3),
        omega2_13=-(sf.c213 + g.beta3),
        omega2_23=sf.c,
        omega4_13=-g.beta1 * sf.c - g.beta2 * sf.c213,
        omega4_23=-g.beta1 * sf.c123 + g.beta2 * sf.c,
    )


def kappa(s: AdaptedStructure) -> float:
    """Scalar curvature invariant; unchanged by hyperbolic frame rotations."""
    sf = s.sf
    return sf.c212 ** 2 - sf.c112 ** 2 + 0.5 * (sf.c123 + sf.c213)


def h_tensor(s: AdaptedStructure) -> HTensor:
    sf = s.sf
    return HTensor(a=sf.c, b=0.5 * (sf.c123 - sf.c213))


def so11_conjugate(h: HTensor, t: float) -> HTensor:
    """Action of a boost by t on the (a, b) pair."""
    ch, sh = math.cosh(2.0 * t), math.sinh(2.0 * t)
    return HTensor(a=ch * h.a + sh * h.b, b=sh * h.a + ch * h.b)


def normalize_h(h: HTensor, eps: float = DEFAULT_TOL) -> HNormalForm:
    """Reduce h to its boost normal form.

    det h > 0 gives ((0, chi), (-chi, 0)) with chi = sgn(a+b) sqrt(b^2 - a^2);
    det h < 0 gives ((chi, 0), (0, -chi)) with chi = sgn(a+b) sqrt(a^2 - b^2);
    degenerate nonzero h is scaled to unit amplitude and keyed by the sign
    pair of (a, b).  Thresholds are relative to max(|a|, |b|)^2; results with
    |det h| in (eps/10, eps] of that scale carry a marginal marker.
    """
    a, b = h.a, h.b
    scale = h.scale
    if scale <= eps:
        return HNormalForm(HClass.ZERO, t=0.0)

    det = h.det
    s2 = scale * scale
    if abs(det) <= eps * s2:
        marginal = abs(det) > (eps / 10.0) * s2
        signs = (1 if a >= 0 else -1, 1 if b >= 0 else -1)
        amp = 0.5 * (abs(a) + abs(b))
        # b = +a scales as exp(+2t), b = -a as exp(-2t).
        t = -0.5 * math.log(amp) if a * b > 0 else 0.5 * math.log(amp)
        return HNormalForm(_DEG_BY_SIGNS[signs], t=t, marginal=marginal)

    sgn = 1.0 if a + b >= 0 else -1.0
    if det > 0:
        t = 0.25 * math.log((b - a) / (b + a))
        return HNormalForm(HClass.DET_POS, t=t, chi=sgn * math.sqrt(det))
    t = 0.25 * math.log((a - b) / (a + b))
    return HNormalForm(HClass.DET_NEG, t=t, chi=sgn * math.sqrt(-det))


def boost_structure(s: AdaptedStructure, t: float) -> AdaptedStructure:
    """Hyperbolic rotation of the frame legs; recomputed, not closed-form."""
    ch, sh = math.cosh(t), math.sinh(t)
    return reeb_frame(s.alg, ch * s.X1 + sh * s.X2, sh * s.X1 + ch * s.X2, s.flags)


def tau(s: AdaptedStructure, eps: Optional[float] = None) -> float:
    """Residual invariant for degenerate nonzero h: c112 in the normalized frame."""
    eps = s.tol if eps is None else eps
    nf = normalize_h(h_tensor(s), eps)
    if not nf.degenerate:
        raise NotDefined(
            f"tau requires degenerate nonzero h, got class {nf.klass.value}"
        )
    return boost_structure(s, nf.t).sf.c112


def invariant_set(s: AdaptedStructure, eps: Optional[float] = None) -> InvariantSet:
    eps = s.tol if eps is None else eps
    h = h_tensor(s)
    nf = normalize_h(h, eps)
    t = tau(s, eps) if nf.degenerate else None
    return InvariantSet(kappa=kappa(s), h=h, hform=nf, tau=t)
