import math

import numpy as np
import pytest

from stieltjes import (
    DiskPoint,
    DomainError,
    QuadratureOptions,
    cauchy_identity_residual,
    cauchy_stieltjes,
    conj_poisson,
    conj_poisson_stieltjes,
    conjugacy_residual,
    duality_residual,
    harmonicity_diagnostics,
    make,
    poisson,
    poisson_stieltjes,
    schwartz_stieltjes,
    stieltjes_transforms,
)

TWO_PI = 2 * math.pi


class TestClosedFormFields:
    def test_constant_integrator_gives_zero_field(self):
        res = poisson_stieltjes(make("const"), DiskPoint(0.5, 1.0))
        assert res.value == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("z", [DiskPoint(0.3, 0.0), DiskPoint(0.7, 1.3),
                                   DiskPoint(0.9, -2.4)])
    def test_sin_poisson_field(self, z):
        # dPhi = cos t dt extends harmonically to r cos(theta)
        res = poisson_stieltjes(make("sin"), z)
        assert res.converged
        assert res.value == pytest.approx(z.r * math.cos(z.theta), abs=1e-7)

    @pytest.mark.parametrize("z", [DiskPoint(0.3, 0.4), DiskPoint(0.8, -1.0)])
    def test_sin_conjugate_field(self, z):
        res = conj_poisson_stieltjes(make("sin"), z)
        assert res.value == pytest.approx(z.r * math.sin(z.theta), abs=1e-7)

    def test_cos_fields(self):
        z = DiskPoint(0.6, 0.9)
        u = poisson_stieltjes(make("cos"), z)
        v = conj_poisson_stieltjes(make("cos"), z)
        # dPhi = -sin t dt: the analytic completion is i z
        assert u.value == pytest.approx(-0.6 * math.sin(0.9), abs=1e-7)
        assert v.value == pytest.approx(0.6 * math.cos(0.9), abs=1e-7)

    def test_schwartz_is_u_plus_iv(self):
        z = DiskPoint(0.55, 2.0)
        phi = make("cbv_demo")
        s = schwartz_stieltjes(phi, z)
        u = poisson_stieltjes(phi, z)
        v = conj_poisson_stieltjes(phi, z)
        assert s.value == pytest.approx(complex(u.value, v.value), abs=1e-9)

    def test_fields_at_origin(self):
        # U(0) is the total mass / 2pi; V(0) = 0 is the conjugate normalization
        phi = make("sin")
        assert poisson_stieltjes(phi, DiskPoint(0.0, 0.0)).value == pytest.approx(0.0, abs=1e-10)
        assert conj_poisson_stieltjes(phi, DiskPoint(0.0, 0.0)).value == pytest.approx(0.0, abs=1e-10)
        step = make("step2pi", 0.3)
        assert poisson_stieltjes(step, DiskPoint(0.0, 0.0)).value == pytest.approx(1.0, abs=1e-12)

    def test_accepts_plain_complex_argument(self):
        z = 0.4 + 0.2j
        res = poisson_stieltjes(make("sin"), z)
        assert res.value == pytest.approx(z.real, abs=1e-7)


class TestStepCollapse:
    def test_u_collapses_to_poisson_kernel(self):
        phi = make("step2pi", 0.5)
        for r, th in ((0.3, 1.0), (0.9, -2.0), (0.99, 0.51)):
            res = poisson_stieltjes(phi, DiskPoint(r, th))
            assert res.value == pytest.approx(poisson(r, th - 0.5), abs=1e-12)
            assert res.est_error == 0.0

    def test_v_collapses_to_conjugate_kernel(self):
        phi = make("step2pi", 0.5)
        for r, th in ((0.3, 1.0), (0.9, -2.0)):
            res = conj_poisson_stieltjes(phi, DiskPoint(r, th))
            assert res.value == pytest.approx(conj_poisson(r, th - 0.5), abs=1e-12)

    def test_multi_step_collapses_to_weighted_kernels(self):
        phi = make("multi_step")
        z = DiskPoint(0.7, 0.9)
        res = poisson_stieltjes(phi, z)
        want = sum(h * poisson(0.7, 0.9 - loc) for loc, h in phi.jumps) / TWO_PI
        assert res.value == pytest.approx(want, abs=1e-12)


class TestCauchyIdentity:
    def test_exact_for_neutral_integrators(self):
        z = DiskPoint(0.62, -0.7)
        for name in ("sin", "cantor", "cbv_demo"):
            assert cauchy_identity_residual(make(name), z) < 1e-12

    def test_accounting_term_for_staircases(self):
        z = DiskPoint(0.62, -0.7)
        phi = make("step2pi", 0.4)
        tv = stieltjes_transforms(phi, z)
        direct = cauchy_stieltjes(phi, z)
        # the raw Cauchy quadrature really does sit incr/(4 pi) above S/2
        assert direct.value == pytest.approx(tv.s / 2 + 0.5, abs=1e-10)
        assert cauchy_identity_residual(phi, z) < 1e-10

    def test_transform_value_carries_identity(self):
        tv = stieltjes_transforms(make("multi_step"), DiskPoint(0.4, 1.1))
        incr = make("multi_step").period_increment
        assert tv.c == pytest.approx(tv.s / 2 + incr / (2 * TWO_PI), abs=0)


class TestDuality:
    def test_sin_matches_ordinary_integral(self):
        assert duality_residual(make("sin"), DiskPoint(0.7, 1.2)) < 1e-7

    def test_cantor_matches_ordinary_integral(self):
        assert duality_residual(make("cantor"), DiskPoint(0.5, 0.8)) < 1e-5

    def test_rejects_non_neutral_integrator(self):
        with pytest.raises(ValueError):
            duality_residual(make("step2pi", 0.0), DiskPoint(0.5, 0.5))


class TestFieldDiagnostics:
    def test_poisson_field_is_harmonic(self):
        phi = make("sin")
        d = harmonicity_diagnostics(lambda z: poisson_stieltjes(phi, z).value,
                                    DiskPoint(0.5, 0.8))
        assert d < 1e-6

    def test_nonharmonic_field_is_flagged(self):
        # the diagnostic is the raw stencil defect h^2 * laplacian, and
        # the laplacian of |z|^2 is 4
        d = harmonicity_diagnostics(lambda z: abs(z.z) ** 2, DiskPoint(0.5, 0.8), h=1e-2)
        assert d == pytest.approx(4e-4, rel=0.05)

    def test_conjugacy_of_sin_fields(self):
        assert conjugacy_residual(make("sin"), DiskPoint(0.6, 2.0)) < 1e-6

    def test_conjugacy_of_kernel_pair(self):
        assert conjugacy_residual(make("step2pi", 0.5), DiskPoint(0.6, 2.0)) < 1e-4


class TestGradedDeepRadii:
    def test_sin_field_stays_accurate_near_boundary(self):
        z = DiskPoint(0.9995, 0.7)
        res = poisson_stieltjes(make("sin"), z)
        assert res.value == pytest.approx(z.r * math.cos(z.theta), abs=1e-6)

    def test_step_field_near_boundary_peak(self):
        z = DiskPoint(0.999, 0.5 + 2e-3)
        res = conj_poisson_stieltjes(make("step2pi", 0.5), z)
        assert res.value == pytest.approx(conj_poisson(0.999, 2e-3), abs=1e-9)


class TestRefusals:
    def test_pathological_integrator_refused(self):
        with pytest.raises(DomainError):
            poisson_stieltjes(make("spikes"), DiskPoint(0.5, 0.0))

    def test_boundary_point_refused(self):
        with pytest.raises(DomainError):
            poisson_stieltjes(make("sin"), DiskPoint(0.3, 0.0).from_complex(1.0))
