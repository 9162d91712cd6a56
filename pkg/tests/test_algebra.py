import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sublorentz3 import (
    AlgebraTag,
    LieAlgebra3,
    LieAlgebraClass,
    Subspace,
    ad_matrix,
    bracket,
    canonical_model,
    change_basis,
    derived_algebra,
    jacobi_defect,
    killing_form,
)
from sublorentz3.algebra import random_well_conditioned
from sublorentz3.errors import NotInvariantSubspace, SingularMatrix

E1, E2, E3 = np.eye(3)


def heisenberg():
    return canonical_model(LieAlgebraClass(AlgebraTag.L31))


class TestBracket:
    def test_heisenberg_generators(self):
        np.testing.assert_allclose(bracket(heisenberg(), E1, E2), E3)

    def test_self_bracket_vanishes(self):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L35))
        np.testing.assert_array_equal(bracket(alg, E1 + 2 * E2, E1 + 2 * E2), 0.0)

    def test_sl2_bilinear_expansion(self):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L35))
        np.testing.assert_allclose(bracket(alg, E1 + E2, E3), [0.0, -2.0, 1.0])

    @given(
        u=st.tuples(*[st.floats(-10, 10) for _ in range(3)]),
        v=st.tuples(*[st.floats(-10, 10) for _ in range(3)]),
    )
    def test_antisymmetry_exact(self, u, v):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L35))
        lhs = bracket(alg, u, v)
        rhs = bracket(alg, v, u)
        assert np.all(lhs + rhs == 0.0)

    def test_bilinearity(self):
        rng = np.random.default_rng(7)
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L36))
        u, v, w = rng.normal(size=(3, 3))
        np.testing.assert_allclose(
            bracket(alg, u + 2.5 * v, w),
            bracket(alg, u, w) + 2.5 * bracket(alg, v, w),
            atol=1e-12,
        )


class TestJacobiDefect:
    def test_heisenberg_closes(self):
        assert jacobi_defect(heisenberg()) == 0.0

    def test_known_defect_is_one(self):
        # [E1,E2]=E3, [E1,E3]=E1: cyclic sum leaves exactly E3
        alg = LieAlgebra3.from_pairs([(0, 0, 1), (1, 0, 0), (0, 0, 0)])
        assert jacobi_defect(alg) == pytest.approx(1.0)

    def test_su2_closes(self):
        assert jacobi_defect(canonical_model(LieAlgebraClass(AlgebraTag.L36))) <= 1e-15

    def test_all_canonical_models_close(self):
        grid = {
            AlgebraTag.L32: (0.5, -1.0),
            AlgebraTag.L34: (0.0, 2.0),
        }
        for tag in AlgebraTag:
            for eta in grid.get(tag, (None,)):
                alg = canonical_model(LieAlgebraClass(tag, eta))
                assert jacobi_defect(alg) <= 1e-14


class TestChangeBasis:
    def test_identity(self):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L33))
        out = change_basis(alg, np.eye(3))
        np.testing.assert_allclose(out.c, alg.c, atol=1e-15)

    def test_heisenberg_center_rescale(self):
        out = change_basis(heisenberg(), np.diag([1.0, 1.0, 2.0]))
        np.testing.assert_allclose(bracket(out, E1, E2), [0.0, 0.0, 0.5])

    def test_curved_zero_case_to_sl2(self):
        # h = 0 structure with both transversal coefficients equal to k maps
        # onto the exact sl2 relations under the stated basis change.
        k = 2.7
        B = LieAlgebra3.from_pairs([(0, 0, 1), (0, k, 0), (k, 0, 0)])
        P = np.array([[1, 0, 1 / k], [1, 0, -1 / k], [0, 1 / k, 0]])
        out = change_basis(B, P)
        sl2 = canonical_model(LieAlgebraClass(AlgebraTag.L35))
        assert np.max(np.abs(out.c - sl2.c)) < 1e-12

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrix):
            change_basis(heisenberg(), np.diag([1.0, 1.0, 0.0]))

    def test_ill_conditioned_rejected(self):
        with pytest.raises(SingularMatrix):
            change_basis(heisenberg(), np.diag([1e9, 1.0, 1.0]))

    def test_jacobi_defect_conditioning_bound(self):
        rng = np.random.default_rng(11)
        alg = LieAlgebra3.from_pairs([(0, 0, 1), (1, 0, 0), (0, 0, 0)])
        base = jacobi_defect(alg)
        for _ in range(200):
            P = random_well_conditioned(rng)
            cond = np.linalg.cond(P)
            assert jacobi_defect(change_basis(alg, P)) <= 10 * cond**2 * base + 1e-9

    def test_killing_congruence(self):
        rng = np.random.default_rng(13)
        for tag in (AlgebraTag.L35, AlgebraTag.L36, AlgebraTag.L33):
            alg = canonical_model(LieAlgebraClass(tag))
            K = killing_form(alg)
            for _ in range(100):
                P = random_well_conditioned(rng)
                K2 = killing_form(change_basis(alg, P))
                ref = P.T @ K @ P
                assert np.max(np.abs(K2 - ref)) <= 1e-9 * max(1.0, np.max(np.abs(ref)))

    def test_derived_dimension_invariant(self):
        rng = np.random.default_rng(17)
        cases = [
            (heisenberg(), 1),
            (canonical_model(LieAlgebraClass(AlgebraTag.L32, 0.5)), 2),
            (canonical_model(LieAlgebraClass(AlgebraTag.L35)), 3),
        ]
        for alg, dim in cases:
            for _ in range(1000):
                P = random_well_conditioned(rng)
                assert derived_algebra(change_basis(alg, P)).dim == dim


class TestDerivedAlgebra:
    def test_heisenberg_center(self):
        d = derived_algebra(heisenberg())
        assert d.dim == 1
        assert abs(abs(d.basis[0] @ E3) - 1.0) < 1e-12

    def test_solvable_plane(self):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L32, -0.3))
        d = derived_algebra(alg)
        assert d.dim == 2
        # span{E1, E2}: no E3 component
        assert np.max(np.abs(d.matrix()[:, 2])) < 1e-12

    def test_semisimple_full(self):
        assert derived_algebra(canonical_model(LieAlgebraClass(AlgebraTag.L35))).dim == 3

    def test_abelian_trivial(self):
        assert derived_algebra(canonical_model(LieAlgebraClass(AlgebraTag.L30))).dim == 0


class TestAdMatrix:
    def test_jordan_block_structure(self):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L33))
        s = Subspace(basis=(E1, E2), dim=2)
        M = ad_matrix(alg, -E3, s)
        np.testing.assert_allclose(M, [[1.0, 1.0], [0.0, 1.0]], atol=1e-12)

    def test_abelian_zero(self):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L30))
        s = Subspace(basis=(E1, E3), dim=2)
        np.testing.assert_array_equal(ad_matrix(alg, E2, s), 0.0)

    def test_degenerate_family_restriction(self):
        # [X1,X3] = X1 - X2, [X2,X3] = X1 - X2, [X1,X2] = t(X1 - X2) + X3,
        # restricted to {X1 - X2, X3}
        t = 1.7
        alg = LieAlgebra3.from_pairs([(t, -t, 1), (1, -1, 0), (1, -1, 0)])
        s = Subspace(basis=(np.array([1.0, -1.0, 0.0]), E3.copy()), dim=2)
        M = ad_matrix(alg, E1, s)
        np.testing.assert_allclose(M, [[-t, 1.0], [-1.0, 0.0]], atol=1e-12)

    def test_non_invariant_rejected(self):
        alg = canonical_model(LieAlgebraClass(AlgebraTag.L35))
        s = Subspace(basis=(E1,), dim=1)
        with pytest.raises(NotInvariantSubspace):
            ad_matrix(alg, E3, s)  # [E3, E1] = 2 E2 leaves span{E1}


class TestKillingForm:
    def test_su2_is_minus_two_identity(self):
        K = killing_form(canonical_model(LieAlgebraClass(AlgebraTag.L36)))
        np.testing.assert_allclose(K, -2.0 * np.eye(3), atol=1e-14)

    def test_abelian_zero(self):
        K = killing_form(canonical_model(LieAlgebraClass(AlgebraTag.L30)))
        np.testing.assert_array_equal(K, 0.0)

    def test_boost_family_pattern(self):
        # [X1,X3] = x X1 + k X2, [X2,X3] = k X1 - x X2, [X1,X2] = X3
        k, x = 1.3, -0.8
        alg = LieAlgebra3.from_pairs([(0, 0, 1), (x, k, 0), (k, -x, 0)])
        K = killing_form(alg)
        expected = np.array(
            [
                [2 * k, -2 * x, 0.0],
                [-2 * x, -2 * k, 0.0],
                [0.0, 0.0, 2 * (k * k + x * x)],
            ]
        )
        np.testing.assert_allclose(K, expected, atol=1e-12)

    def test_exactly_symmetric(self):
        rng = np.random.default_rng(3)
        alg = LieAlgebra3.from_pairs(rng.normal(size=(3, 3)))
        K = killing_form(alg)
        assert np.all(K == K.T)
