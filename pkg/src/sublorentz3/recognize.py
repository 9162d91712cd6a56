"""Constructive recognition of 3D real Lie algebras up to isomorphism.

Branches on the dimension of the derived algebra; in the 2-dimensional case
the eigenvalue structure of ad_X restricted to it (X off the derived algebra)
decides the class, and in the 3-dimensional case the Killing form signature
separates the two semisimple algebras.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .algebra import (
    AlgebraTag,
    LieAlgebra3,
    LieAlgebraClass,
    Subspace,
    ad_matrix,
    bracket,
    derived_algebra,
    jacobi_defect,
    killing_form,
)
from .errors import NotALieAlgebra


def canonical_eta_ratio(eta: float) -> float:
    """Reduce an eigenvalue ratio to the representative with |eta| <= 1."""
    if abs(eta) > 1.0:
        return 1.0 / eta
    return eta


def _complement_direction(g1: Subspace) -> np.ndarray:
    """Standard basis direction with the largest residual off the subspace."""
    best, best_res = None, -1.0
    for e in np.eye(3):
        _, res = g1.project_coords(e)
        if res > best_res:
            best, best_res = e, res
    return best


def _dim2_class(alg: LieAlgebra3, g1: Subspace, x, eps: float) -> LieAlgebraClass:
    """Class decision from ad_x restricted to the 2D derived algebra.

    The restriction is well defined up to scale (the derived algebra is
    abelian here), so only the eigenvalue ratio matters.
    """
    M = ad_matrix(alg, x, g1)
    scale = float(np.linalg.norm(M))
    if scale <= eps:
        raise NotALieAlgebra("ad_x vanishes on a 2D derived algebra")
    tr = float(np.trace(M))
    det = float(np.linalg.det(M))
    disc = tr * tr - 4.0 * det
    s2 = scale * scale
    marginal = eps * s2 / 10.0 < abs(disc) <= eps * s2

    if abs(disc) <= eps * s2:
        # Repeated eigenvalue: scalar restriction means eta = 1, a genuine
        # Jordan block means the non-diagonalizable class.  The threshold
        # sits between eigenvalue noise and the smallest Jordan block that
        # survives an admissible change of basis.
        nilpotent = M - 0.5 * tr * np.eye(2)
        if np.linalg.norm(nilpotent) <= math.sqrt(eps) / 100.0 * scale:
            return LieAlgebraClass(AlgebraTag.L32, eta=1.0, marginal=marginal)
        return LieAlgebraClass(AlgebraTag.L33, marginal=marginal)
    if disc > 0:
        root = math.sqrt(disc)
        lam = sorted(((tr + root) / 2.0, (tr - root) / 2.0), key=abs, reverse=True)
        if abs(lam[0]) <= eps * scale:
            raise NotALieAlgebra("rank of ad_x on the derived algebra is below 2")
        eta = lam[1] / lam[0]
        return LieAlgebraClass(AlgebraTag.L32, eta=_clip_l32(eta), marginal=marginal)
    eta = abs(tr) / math.sqrt(-disc)
    return LieAlgebraClass(AlgebraTag.L34, eta=eta, marginal=marginal)


def _clip_l32(eta: float) -> float:
    # Rounding can push |eta| infinitesimally past 1; clamp into range.
    return max(-1.0, min(1.0, eta))


def recognize(alg: LieAlgebra3, eps: Optional[float] = None) -> LieAlgebraClass:
    """Decide which canonical 3D Lie algebra the input is isomorphic to."""
    eps = alg.tol if eps is None else eps
    defect = jacobi_defect(alg)
    if defect > eps * max(1.0, alg.scale) ** 2:
        raise NotALieAlgebra(f"Jacobi defect {defect:.3e} exceeds tolerance")

    g1 = derived_algebra(alg)
    if g1.dim == 0:
        return LieAlgebraClass(AlgebraTag.L30)
    if g1.dim == 1:
        z = g1.basis[0]
        acts = max(
            float(np.linalg.norm(bracket(alg, e, z))) for e in np.eye(3)
        )
        if acts <= eps * max(1.0, alg.scale):
            return LieAlgebraClass(AlgebraTag.L31)
        return LieAlgebraClass(AlgebraTag.L3M1)
    if g1.dim == 2:
        x = _complement_direction(g1)
        return _dim2_class(alg, g1, x, eps)

    K = killing_form(alg)
    evals = np.linalg.eigvalsh(K)
    kscale = float(np.max(np.abs(evals)))
    marginal = bool(np.min(np.abs(evals)) <= eps * kscale)
    if np.all(evals < -eps * kscale):
        return LieAlgebraClass(AlgebraTag.L36, marginal=marginal)
    return LieAlgebraClass(AlgebraTag.L35, marginal=marginal)


def same_class(
    x: LieAlgebraClass, y: LieAlgebraClass, eta_tol: float = 1e-9
) -> bool:
    """Class equality modulo the parameter identifications.

    The eigenvalue-ratio parameter is identified with its reciprocal, and
    the spiral parameter with its negative.
    """
    if x.tag is not y.tag:
        return False
    if x.tag is AlgebraTag.L32:
        ex, ey = canonical_eta_ratio(x.eta), canonical_eta_ratio(y.eta)
        return abs(ex - ey) <= eta_tol
    if x.tag is AlgebraTag.L34:
        return abs(abs(x.eta) - abs(y.eta)) <= eta_tol
    return True
