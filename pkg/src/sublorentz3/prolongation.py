"""First prolongation of a depth-2 graded symbol by linear algebra.

A symbol is a graded nilpotent algebra m = m_{-2} + m_{-1} together with a
space g0 of grading-preserving derivations.  A degree-one prolongation
element is a map phi in (g0 x m_{-1}*) + (m_{-1} x m_{-2}*) satisfying the
derivation identity phi([X, Y]) = [phi(X), Y] + [X, phi(Y)] on all pairs;
the prolongation dimension is the nullity of the assembled linear system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_TOL


@dataclass(frozen=True)
class GradedSymbol:
    """Depth-2 graded symbol: strata dims, brackets, derivation generators.

    brackets[i][j] is the m_{-2} coordinate vector of [e_i, e_j] for basis
    elements of m_{-1}; generators act on m = m_{-1} + m_{-2} as matrices in
    that block order and are assumed linearly independent.
    """

    dim_m1: int
    dim_m2: int
    brackets: np.ndarray  # shape (dim_m1, dim_m1, dim_m2), antisymmetric
    g0_generators: tuple = ()
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        br = np.asarray(self.brackets, dtype=float).reshape(
            self.dim_m1, self.dim_m1, self.dim_m2
        )
        br = 0.5 * (br - np.swapaxes(br, 0, 1))
        object.__setattr__(self, "brackets", br)
        gens = tuple(
            np.asarray(g, dtype=float).reshape(self.dim(), self.dim())
            for g in self.g0_generators
        )
        object.__setattr__(self, "g0_generators", gens)
        for g in gens:
            self._check_generator(g)

    def dim(self) -> int:
        return self.dim_m1 + self.dim_m2

    def _check_generator(self, g: np.ndarray):
        d1 = self.dim_m1
        off = max(
            float(np.max(np.abs(g[d1:, :d1]))) if self.dim_m2 else 0.0,
            float(np.max(np.abs(g[:d1, d1:]))) if self.dim_m2 else 0.0,
        )
        if off > self.tol:
            raise ValueError("generator does not preserve the grading")
        res = self._derivation_residual(g)
        if res > self.tol * max(1.0, float(np.max(np.abs(g))), self._bracket_scale()):
            raise ValueError(f"generator is not a derivation (residual {res:.3e})")

    def _bracket_scale(self) -> float:
        return float(np.max(np.abs(self.brackets))) if self.brackets.size else 0.0

    def _derivation_residual(self, g: np.ndarray) -> float:
        if not self.dim_m2:
            return 0.0
        d1 = self.dim_m1
        A = g[:d1, :d1]
        D = g[d1:, d1:]
        worst = 0.0
        for i in range(d1):
            for j in range(i + 1, d1):
                lhs = D @ self.brackets[i, j]
                rhs = np.einsum("p,pq->q", A[:, i], self.brackets[:, j, :])
                rhs = rhs + np.einsum("p,pq->q", A[:, j], self.brackets[i, :, :])
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst

    def bracket_m1(self, i: int, j: int) -> np.ndarray:
        return self.brackets[i, j]


def prolongation_dim(s: GradedSymbol) -> int:
    """Dimension of the degree-one prolongation of (m, g0)."""
    d1, d2 = s.dim_m1, s.dim_m2
    ng = len(s.g0_generators)
    n_unknowns = ng * d1 + d1 * d2  # phi1: m_{-1} -> g0, phi2: m_{-2} -> m_{-1}
    if n_unknowns == 0:
        return 0

    def a_index(g, i):
        return g * d1 + i

    def b_index(p, q):
        return ng * d1 + p * d2 + q

    rows = []
    # pairs inside m_{-1}: phi2([e_i, e_j]) = [phi1(e_i), e_j] + [e_i, phi1(e_j)]
    for i in range(d1):
        for j in range(i + 1, d1):
            br = s.bracket_m1(i, j)
            for out in range(d1):
                row = np.zeros(n_unknowns)
                for q in range(d2):
                    row[b_index(out, q)] += br[q]
                for g, G in enumerate(s.g0_generators):
                    A = G[:d1, :d1]
                    row[a_index(g, i)] -= A[out, j]
                    row[a_index(g, j)] += A[out, i]
                rows.append(row)
    # mixed pairs: 0 = [phi1(e_i), f_q] + [e_i, phi2(f_q)]
    for i in range(d1):
        for q in range(d2):
            for out in range(d2):
                row = np.zeros(n_unknowns)
                for g, G in enumerate(s.g0_generators):
                    D = G[d1:, d1:]
                    row[a_index(g, i)] += D[out, q]
                for p in range(d1):
                    row[b_index(p, q)] += s.brackets[i, p, out]
                rows.append(row)

    if not rows:
        return n_unknowns
    M = np.stack(rows)
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] <= s.tol:
        return n_unknowns
    rank = int(np.sum(sv > s.tol * sv[0]))
    return n_unknowns - rank


def heisenberg_symbol(with_rotation_generator: bool = True, tol: float = DEFAULT_TOL) -> GradedSymbol:
    """The contact symbol: Heisenberg m with [e1, e2] = e3.

    With the generator enabled, g0 is spanned by the hyperbolic rotation
    e1 <-> e2 (the infinitesimal boost fixing the center).
    """
    br = np.zeros((2, 2, 1))
    br[0, 1, 0] = 1.0
    br[1, 0, 0] = -1.0
    gens = ()
    if with_rotation_generator:
        g = np.zeros((3, 3))
        g[1, 0] = 1.0  # e1 -> e2
        g[0, 1] = 1.0  # e2 -> e1
        gens = (g,)
    return GradedSymbol(dim_m1=2, dim_m2=1, brackets=br, g0_generators=gens, tol=tol)


def line_symbol(tol: float = DEFAULT_TOL) -> GradedSymbol:
    """One-dimensional abelian m with scalar g0: prolongation dimension 1."""
    return GradedSymbol(
        dim_m1=1,
        dim_m2=0,
        brackets=np.zeros((1, 1, 0)),
        g0_generators=(np.array([[1.0]]),),
        tol=tol,
    )


def conjugate_symbol(s: GradedSymbol, S1: np.ndarray, S2: np.ndarray) -> GradedSymbol:
    """Symbol in the new basis e'_i = S1 e_i, f'_q = S2 f_q."""
    S1 = np.asarray(S1, dtype=float)
    S2 = np.asarray(S2, dtype=float)
    d1, d2 = s.dim_m1, s.dim_m2
    S2inv = np.linalg.inv(S2) if d2 else S2.reshape(0, 0)
    br = np.einsum("ip,jr,prq,sq->ijs", S1.T, S1.T, s.brackets, S2inv) if d2 else s.brackets
    S = np.zeros((d1 + d2, d1 + d2))
    S[:d1, :d1] = S1
    S[d1:, d1:] = S2
    Sinv = np.linalg.inv(S)
    gens = tuple(Sinv @ G @ S for G in s.g0_generators)
    return GradedSymbol(d1, d2, br, gens, s.tol)
