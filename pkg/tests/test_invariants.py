import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sublorentz3 import (
    HClass,
    HTensor,
    StructureFunctions,
    boost_structure,
    curvature_gauge,
    from_structure_functions,
    gauge_coefficients,
    h_tensor,
    invariant_set,
    kappa,
    normalize_h,
    so11_conjugate,
    tau,
)
from sublorentz3.errors import NotDefined

FLAT = StructureFunctions(0.0, 0.0, 0.0, 0.0, 0.0)


def structure(c=0.0, c213=0.0, c123=0.0, c112=0.0, c212=0.0):
    return from_structure_functions(StructureFunctions(c, c213, c123, c112, c212))


class TestGaugeCoefficients:
    def test_flat(self):
        g = gauge_coefficients(from_structure_functions(FLAT))
        assert (g.beta1, g.beta2, g.beta3) == (0.0, 0.0, 0.0)

    def test_plane_coefficients(self):
        g = gauge_coefficients(structure(c112=2.0, c212=3.0))
        assert (g.beta1, g.beta2, g.beta3) == (2.0, -3.0, 5.0)

    def test_beta3_matches_kappa_for_zero_h(self):
        s = structure(c112=1.2, c212=0.4)
        g = gauge_coefficients(s)
        assert g.beta3 == pytest.approx(kappa(s))


class TestCurvatureGauge:
    def test_flat_vanishes(self):
        cg = curvature_gauge(from_structure_functions(FLAT))
        assert all(v == 0.0 for v in vars(cg).values())

    def test_curved_zero_h(self):
        gamma = 1.1
        cg = curvature_gauge(structure(c213=gamma, c123=gamma))
        assert cg.omega1_23 == pytest.approx(-gamma)
        assert cg.omega2_13 == pytest.approx(-gamma)
        assert cg.omega1_13 == 0.0 and cg.omega2_23 == 0.0
        assert cg.omega4_13 == 0.0 and cg.omega4_23 == 0.0

    def test_boost_family(self):
        k, x = 2.0, 0.7
        cg = curvature_gauge(structure(c=x, c213=k, c123=k))
        assert cg.omega1_13 == pytest.approx(-x)
        assert cg.omega1_23 == pytest.approx(-k)

    def test_trace_part_cancels(self):
        rng = np.random.default_rng(41)
        for _ in range(100):
            s = from_structure_functions(StructureFunctions(*rng.uniform(-3, 3, 5)))
            cg = curvature_gauge(s)
            assert cg.omega1_13 + cg.omega2_23 == 0.0


class TestKappa:
    def test_flat(self):
        assert kappa(from_structure_functions(FLAT)) == 0.0

    def test_curved_zero_h(self):
        gamma = -1.4
        assert kappa(structure(c213=gamma, c123=gamma)) == pytest.approx(gamma)

    def test_boost_family(self):
        k, x = 1.5, -2.0
        assert kappa(structure(c=x, c213=k, c123=k)) == pytest.approx(k)


class TestHTensor:
    def test_flat(self):
        h = h_tensor(from_structure_functions(FLAT))
        assert (h.a, h.b) == (0.0, 0.0)

    def test_reading_off_brackets(self):
        # [X1,X3] = X1 + 2X2, [X2,X3] = 4X1 - X2, [X1,X2] = X3
        h = h_tensor(structure(c=1.0, c213=2.0, c123=4.0))
        assert (h.a, h.b) == (1.0, 1.0)

    def test_rotation_family_sign(self):
        k, x = 1.0, 0.5
        h = h_tensor(structure(c213=k + x, c123=k - x))
        assert (h.a, h.b) == (0.0, -x)

    def test_matrix_layout(self):
        h = HTensor(2.0, -3.0)
        np.testing.assert_array_equal(h.matrix, [[2.0, -3.0], [3.0, -2.0]])
        assert h.det == 9.0 - 4.0


class TestSO11Conjugate:
    def test_identity(self):
        h = HTensor(1.3, -0.4)
        out = so11_conjugate(h, 0.0)
        assert (out.a, out.b) == (h.a, h.b)

    def test_unit_b(self):
        t = 0.37
        out = so11_conjugate(HTensor(0.0, 1.0), t)
        assert out.a == pytest.approx(math.sinh(2 * t))
        assert out.b == pytest.approx(math.cosh(2 * t))

    def test_explicit_numbers(self):
        out = so11_conjugate(HTensor(3.0, 5.0), -math.log(2.0) / 2.0)
        assert out.a == pytest.approx(0.0, abs=1e-12)
        assert out.b == pytest.approx(4.0)

    def test_matches_matrix_conjugation(self):
        rng = np.random.default_rng(43)
        for _ in range(50):
            a, b = rng.uniform(-2, 2, 2)
            t = rng.uniform(-2, 2)
            T = np.array(
                [[math.cosh(t), math.sinh(t)], [math.sinh(t), math.cosh(t)]]
            )
            direct = np.linalg.inv(T) @ HTensor(a, b).matrix @ T
            out = so11_conjugate(HTensor(a, b), t)
            np.testing.assert_allclose(direct, out.matrix, atol=1e-10)

    @given(
        a=st.floats(-5, 5),
        b=st.floats(-5, 5),
        t=st.floats(-2, 2),
    )
    def test_quadratic_form_preserved(self, a, b, t):
        h = HTensor(a, b)
        out = so11_conjugate(h, t)
        scale = max(1.0, a * a + b * b) * math.cosh(2 * t) ** 2
        assert abs(out.det - h.det) <= 1e-12 * scale


class TestNormalizeH:
    def test_rotation_form(self):
        nf = normalize_h(HTensor(0.0, 2.0))
        assert nf.klass is HClass.DET_POS
        assert nf.t == 0.0
        assert nf.chi == pytest.approx(2.0)

    def test_boost_form(self):
        nf = normalize_h(HTensor(5.0, 3.0))
        assert nf.klass is HClass.DET_NEG
        assert nf.chi == pytest.approx(4.0)
        assert nf.t == pytest.approx(-math.log(2.0) / 2.0)
        out = so11_conjugate(HTensor(5.0, 3.0), nf.t)
        assert out.a == pytest.approx(4.0) and out.b == pytest.approx(0.0, abs=1e-12)

    def test_degenerate_form(self):
        nf = normalize_h(HTensor(1.0, 1.0))
        assert nf.klass is HClass.DEG_PP
        assert nf.t == 0.0
        np.testing.assert_array_equal(nf.matrix, [[1.0, 1.0], [-1.0, -1.0]])

    def test_degenerate_sign_classes(self):
        assert normalize_h(HTensor(2.0, -2.0)).klass is HClass.DEG_PM
        assert normalize_h(HTensor(-0.5, 0.5)).klass is HClass.DEG_MP
        assert normalize_h(HTensor(-3.0, -3.0)).klass is HClass.DEG_MM

    def test_degenerate_boost_normalizes_amplitude(self):
        for a, b in ((2.0, -2.0), (0.25, 0.25), (-4.0, 4.0), (-0.1, -0.1)):
            nf = normalize_h(HTensor(a, b))
            out = so11_conjugate(HTensor(a, b), nf.t)
            assert abs(out.a) == pytest.approx(1.0)
            assert abs(out.b) == pytest.approx(1.0)

    def test_zero(self):
        nf = normalize_h(HTensor(0.0, 0.0))
        assert nf.klass is HClass.ZERO and nf.t == 0.0 and nf.chi is None

    def test_idempotent_on_canonical(self):
        for h in (HTensor(0.0, 2.5), HTensor(-1.5, 0.0), HTensor(1.0, -1.0)):
            nf = normalize_h(h)
            again = normalize_h(so11_conjugate(h, nf.t))
            assert again.klass is nf.klass
            assert again.t == pytest.approx(0.0, abs=1e-9)

    def test_chi_invariant_under_boost(self):
        rng = np.random.default_rng(47)
        for _ in range(200):
            a, b = rng.uniform(-2, 2, 2)
            if abs(b * b - a * a) < 1e-3:
                continue
            t = rng.uniform(-3, 3)
            c0 = normalize_h(HTensor(a, b)).chi
            c1 = normalize_h(so11_conjugate(HTensor(a, b), t)).chi
            assert c1 == pytest.approx(c0, rel=1e-8, abs=1e-10)

    def test_marginal_zone_flagged(self):
        # |det| inside (eps/10, eps] relative to amplitude^2
        nf = normalize_h(HTensor(1.0, 1.0 + 2.5e-10))
        assert nf.degenerate and nf.marginal
        clean = normalize_h(HTensor(1.0, 1.0 + 2.5e-11))
        assert clean.degenerate and not clean.marginal

    def test_scale_relative_branching(self):
        # tiny rotation-type h must not be mistaken for degenerate
        nf = normalize_h(HTensor(0.0, 3e-5))
        assert nf.klass is HClass.DET_POS


class TestTau:
    def test_already_normalized(self):
        s = structure(c=1.0, c213=1.0, c123=-1.0, c112=1.5, c212=1.5)
        assert tau(s) == pytest.approx(1.5, abs=1e-12)

    def test_boost_round_trip(self):
        rng = np.random.default_rng(53)
        for _ in range(25):
            t0 = rng.uniform(-2.5, 2.5)
            tv = rng.uniform(-3, 3)
            s = structure(c=1.0, c213=-1.0, c123=1.0, c112=tv, c212=-tv)
            boosted = boost_structure(s, t0)
            assert tau(boosted) == pytest.approx(tv, abs=1e-9)

    def test_undefined_for_boost_type(self):
        s = structure(c=0.5, c213=1.0, c123=1.0)
        with pytest.raises(NotDefined):
            tau(s)

    def test_undefined_for_zero(self):
        with pytest.raises(NotDefined):
            tau(from_structure_functions(FLAT))


class TestInvariantSet:
    def test_flat(self):
        inv = invariant_set(from_structure_functions(FLAT))
        assert inv.kappa == 0.0
        assert inv.hform.klass is HClass.ZERO
        assert inv.tau is None

    def test_curved_zero_h(self):
        inv = invariant_set(structure(c213=2.0, c123=2.0))
        assert inv.kappa == pytest.approx(2.0)
        assert inv.hform.klass is HClass.ZERO
        assert inv.tau is None

    def test_degenerate_with_tau(self):
        inv = invariant_set(structure(c=1.0, c213=-1.0, c123=1.0, c112=2.0, c212=-2.0))
        assert inv.kappa == pytest.approx(0.0, abs=1e-12)
        assert inv.hform.klass is HClass.DEG_PP
        assert inv.tau == pytest.approx(2.0, abs=1e-12)


class TestEquivariance:
    def test_kappa_invariant_h_equivariant(self):
        rng = np.random.default_rng(59)
        worst_k, worst_h = 0.0, 0.0
        for _ in range(200):
            sf = StructureFunctions(*rng.uniform(-2, 2, 5))
            s = from_structure_functions(sf)
            t = rng.uniform(-3, 3)
            boosted = boost_structure(s, t)
            k0, k1 = kappa(s), kappa(boosted)
            worst_k = max(worst_k, abs(k1 - k0) / max(1.0, abs(k0)))
            expected = so11_conjugate(h_tensor(s), t)
            got = h_tensor(boosted)
            scale = max(1.0, expected.scale)
            worst_h = max(
                worst_h,
                abs(got.a - expected.a) / scale,
                abs(got.b - expected.b) / scale,
            )
        assert worst_k < 1e-8
        assert worst_h < 1e-8

    def test_normal_form_class_stable(self):
        rng = np.random.default_rng(61)
        for _ in range(200):
            sf = StructureFunctions(*rng.uniform(-2, 2, 5))
            h = h_tensor(from_structure_functions(sf))
            if abs(h.det) < 1e-4 * max(1.0, h.scale) ** 2:
                continue
            t = rng.uniform(-3, 3)
            s = from_structure_functions(sf)
            assert (
                normalize_h(h_tensor(boost_structure(s, t))).klass
                is normalize_h(h).klass
            )
