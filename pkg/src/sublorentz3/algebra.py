"""Exact and floating-point linear algebra over 3-dimensional real Lie algebras.

A bracket tensor c[i, j, k] encodes [E_i, E_j] = sum_k c[i,j,k] E_k in the
current basis.  Only antisymmetric tensors are representable: constructors
take the three independent rows (i < j) and fill the rest by antisymmetry.
All sign and rank decisions go through a single explicit tolerance so that
classification branches stay auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import BadParameter, NotInvariantSubspace, SingularMatrix

DEFAULT_TOL = 1e-9

# Reject basis changes beyond this condition number; invariance of rank and
# class decisions is meaningless past it.
MAX_BASIS_CONDITION = 1e8

_PAIRS = ((0, 1), (0, 2), (1, 2))


def _as_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(a)):
        raise ValueError("vector entries must be finite")
    return a


@dataclass(frozen=True)
class LieAlgebra3:
    """A real 3D algebra given by its antisymmetric bracket tensor."""

    c: np.ndarray
    tol: float = DEFAULT_TOL

    @staticmethod
    def from_pairs(rows: Sequence[Sequence[float]], tol: float = DEFAULT_TOL) -> "LieAlgebra3":
        """Build from the three rows [E1,E2], [E1,E3], [E2,E3]."""
        c = np.zeros((3, 3, 3))
        for (i, j), row in zip(_PAIRS, rows):
            v = _as_vector(row)
            c[i, j] = v
            c[j, i] = -v
        return LieAlgebra3(c, tol)

    @staticmethod
    def from_dict(brackets: dict, tol: float = DEFAULT_TOL) -> "LieAlgebra3":
        """Build from a {(i, j): coefficients} map; missing pairs are zero."""
        rows = [brackets.get((i, j), (0.0, 0.0, 0.0)) for i, j in _PAIRS]
        return LieAlgebra3.from_pairs(rows, tol)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if c.shape != (3, 3, 3):
            raise ValueError("bracket tensor must be 3x3x3")
        if not np.all(np.isfinite(c)):
            raise ValueError("bracket tensor entries must be finite")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        object.__setattr__(self, "c", _antisymmetrize(c))
        self.c.setflags(write=False)

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.c))) if self.c.size else 0.0

    def pair_rows(self) -> np.ndarray:
        """The three independent bracket vectors, stacked as rows."""
        return np.stack([self.c[i, j] for i, j in _PAIRS])


def _antisymmetrize(c: np.ndarray) -> np.ndarray:
    out = np.zeros_like(c)
    for i, j in _PAIRS:
        out[i, j] = c[i, j]
        out[j, i] = -c[i, j]
    return out


@dataclass(frozen=True)
class Subspace:
    """A subspace of R^3 with an explicit (orthonormal) basis."""

    basis: tuple
    dim: int

    def matrix(self) -> np.ndarray:
        """Basis vectors stacked as rows; shape (dim, 3)."""
        if self.dim == 0:
            return np.zeros((0, 3))
        return np.stack(self.basis)

    def project_coords(self, v: np.ndarray) -> tuple[np.ndarray, float]:
        """Coordinates of v in the basis plus the off-subspace residual norm."""
        if self.dim == 0:
            return np.zeros(0), float(np.linalg.norm(v))
        B = self.matrix()
        coords, res, _, _ = np.linalg.lstsq(B.T, v, rcond=None)
        residual = float(np.linalg.norm(v - B.T @ coords))
        return coords, residual


class AlgebraTag(Enum):
    """The eight isomorphism classes of real 3D Lie algebras."""

    L30 = "L(3,0)"
    L31 = "L(3,1)"
    L3M1 = "L(3,-1)"
    L32 = "L(3,2)"
    L33 = "L(3,3)"
    L34 = "L(3,4)"
    L35 = "L(3,5)"
    L36 = "L(3,6)"


_PARAMETRIC = (AlgebraTag.L32, AlgebraTag.L34)


@dataclass(frozen=True)
class LieAlgebraClass:
    """An isomorphism class, with continuous parameter where one exists."""

    tag: AlgebraTag
    eta: Optional[float] = None
    marginal: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.tag in _PARAMETRIC:
            if self.eta is None:
                raise BadParameter(f"{self.tag.value} requires a parameter")
            if self.tag is AlgebraTag.L32 and not 0.0 < abs(self.eta) <= 1.0 + 1e-12:
                raise BadParameter(f"L(3,2) parameter must satisfy 0 < |eta| <= 1, got {self.eta}")
            if self.tag is AlgebraTag.L34 and self.eta < 0.0:
                raise BadParameter(f"L(3,4) parameter must be >= 0, got {self.eta}")
        elif self.eta is not None:
            raise BadParameter(f"{self.tag.value} takes no parameter")

    @property
    def label(self) -> str:
        if self.eta is None:
            return self.tag.value
        return f"{self.tag.value[:-1]},{self.eta:.9g})"


def bracket(alg: LieAlgebra3, u, v) -> np.ndarray:
    """Bilinear bracket [u, v]; antisymmetric exactly, term by term."""
    u = _as_vector(u)
    v = _as_vector(v)
    out = np.zeros(3)
    for i, j in _PAIRS:
        out += (u[i] * v[j] - u[j] * v[i]) * alg.c[i, j]
    return out


def jacobi_defect(alg: LieAlgebra3) -> float:
    """Max over basis triples of ||[E_i,[E_j,E_k]] + cyclic||; 0 iff Lie algebra."""
    eye = np.eye(3)
    worst = 0.0
    for i, j, k in combinations(range(3), 3):
        u, v, w = eye[i], eye[j], eye[k]
        total = (
            bracket(alg, u, bracket(alg, v, w))
            + bracket(alg, v, bracket(alg, w, u))
            + bracket(alg, w, bracket(alg, u, v))
        )
        worst = max(worst, float(np.linalg.norm(total)))
    return worst


def change_basis(alg: LieAlgebra3, P) -> LieAlgebra3:
    """Structure constants in the basis E'_i = P @ E_i (columns of P)."""
    P = np.asarray(P, dtype=float).reshape(3, 3)
    if abs(np.linalg.det(P)) <= alg.tol:
        raise SingularMatrix("basis-change matrix is singular within tolerance")
    if np.linalg.cond(P) > MAX_BASIS_CONDITION:
        raise SingularMatrix(
            f"basis-change condition number exceeds {MAX_BASIS_CONDITION:g}"
        )
    Pinv = np.linalg.inv(P)
    rows = [Pinv @ bracket(alg, P[:, i], P[:, j]) for i, j in _PAIRS]
    return LieAlgebra3.from_pairs(rows, alg.tol)


def derived_algebra(alg: LieAlgebra3) -> Subspace:
    """Span of all pairwise brackets, with rank decided by singular values."""
    rows = alg.pair_rows()
    u, s, vt = np.linalg.svd(rows)
    if s.size == 0 or s[0] <= alg.tol:
        return Subspace(basis=(), dim=0)
    rank = int(np.sum(s > alg.tol * s[0]))
    return Subspace(basis=tuple(vt[i] for i in range(rank)), dim=rank)


def ad_matrix(alg: LieAlgebra3, x, s: Subspace) -> np.ndarray:
    """Matrix of ad_x restricted to s, in the basis of s."""
    x = _as_vector(x)
    if s.dim == 0:
        return np.zeros((0, 0))
    cols = []
    scale = max(alg.scale * float(np.linalg.norm(x)), 1.0)
    for b in s.basis:
        w = bracket(alg, x, b)
        coords, residual = s.project_coords(w)
        if residual > alg.tol * scale:
            raise NotInvariantSubspace(
                f"ad_x image leaves the subspace (residual {residual:.3e})"
            )
        cols.append(coords)
    return np.stack(cols, axis=1)


def ad_representation(alg: LieAlgebra3, x) -> np.ndarray:
    """Full 3x3 matrix of ad_x on the ambient basis."""
    x = _as_vector(x)
    # A[k, j] = coefficient of E_k in [x, E_j]
    return np.einsum("i,ijk->kj", x, alg.c)


def killing_form(alg: LieAlgebra3) -> np.ndarray:
    """K(x, y) = trace(ad_x ad_y) on the current basis; exactly symmetric."""
    ads = [ad_representation(alg, e) for e in np.eye(3)]
    K = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            K[i, j] = K[j, i] = float(np.trace(ads[i] @ ads[j]))
    return K


def random_well_conditioned(rng: np.random.Generator, cond_max: float = 3.0) -> np.ndarray:
    """Random det-normalized 3x3 matrix with mild singular-value spread."""
    lo, hi = 1.0 / np.sqrt(cond_max), np.sqrt(cond_max)
    sigma = np.exp(rng.uniform(np.log(lo), np.log(hi), size=3))
    q1, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    q2, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    P = q1 @ np.diag(sigma) @ q2
    return P / np.cbrt(abs(np.linalg.det(P)))


def canonical_model(cls: LieAlgebraClass, tol: float = DEFAULT_TOL) -> LieAlgebra3:
    """The displayed canonical structure constants for each class."""
    tag, eta = cls.tag, cls.eta
    rows = {
        AlgebraTag.L30: [(0, 0, 0), (0, 0, 0), (0, 0, 0)],
        AlgebraTag.L31: [(0, 0, 1), (0, 0, 0), (0, 0, 0)],
        AlgebraTag.L3M1: [(1, 0, 0), (0, 0, 0), (0, 0, 0)],
        AlgebraTag.L33: [(0, 0, 0), (1, 0, 0), (1, 1, 0)],
        AlgebraTag.L35: [(1, 0, 0), (0, -2, 0), (0, 0, 1)],
        AlgebraTag.L36: [(0, 0, 1), (0, -1, 0), (1, 0, 0)],
    }
    if tag in rows:
        return LieAlgebra3.from_pairs(rows[tag], tol)
    if tag is AlgebraTag.L32:
        return LieAlgebra3.from_pairs([(0, 0, 0), (1, 0, 0), (0, eta, 0)], tol)
    if tag is AlgebraTag.L34:
        return LieAlgebra3.from_pairs([(0, 0, 0), (eta, -1, 0), (1, eta, 0)], tol)
    raise BadParameter(f"unknown class tag {tag}")
