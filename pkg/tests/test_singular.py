import math

import numpy as np
import pytest

from stieltjes import (
    DiskPoint,
    JumpAtEvaluationPoint,
    conj_poisson_stieltjes,
    conjugate_truncation_trace,
    hilbert_stieltjes,
    make,
    singular_cauchy_consistency,
    singular_cauchy_stieltjes,
    truncated_conjugate_integral,
)

from oracles import pv_cot_density

TWO_PI = 2 * math.pi


class TestHilbertClosedForms:
    @pytest.mark.parametrize("tau", [0.9, -1.7, 2.8])
    def test_sin_gives_sin(self, tau):
        h = hilbert_stieltjes(make("sin"), tau)
        assert h.value == pytest.approx(math.sin(tau), abs=2e-6)
        assert abs(h.value - math.sin(tau)) < max(h.est_error, 1e-9)
        assert h.extrapolated

    @pytest.mark.parametrize("tau", [0.9, -2.0])
    def test_sawtooth_gives_scaled_tangent(self, tau):
        # density 1/pi integrates to zero against the odd kernel; the seam
        # atom of -2 contributes -(1/pi) cot((tau - pi)/2) = tan(tau/2)/pi
        h = hilbert_stieltjes(make("sawtooth"), tau)
        assert h.value == pytest.approx(math.tan(tau / 2) / math.pi, abs=2e-6)
        assert abs(h.value - math.tan(tau / 2) / math.pi) < max(h.est_error, 1e-9)

    def test_linear_is_pi_times_sawtooth(self, tau=0.7):
        a = hilbert_stieltjes(make("linear"), tau)
        b = hilbert_stieltjes(make("sawtooth"), tau)
        assert a.value == pytest.approx(math.pi * b.value, abs=1e-8)

    def test_step_gives_cotangent(self):
        t0 = 0.5
        for tau in (0.9, 2.2, -3.0):
            h = hilbert_stieltjes(make("step2pi", t0), tau)
            assert h.value == pytest.approx(1 / math.tan((tau - t0) / 2), abs=1e-10)

    def test_multi_step_weighted_cotangents(self):
        phi = make("multi_step")
        tau = 1.3
        want = sum(h / math.tan((tau - loc) / 2) for loc, h in phi.jumps) / TWO_PI
        got = hilbert_stieltjes(phi, tau)
        assert got.value == pytest.approx(want, abs=1e-10)

    def test_const_gives_zero(self):
        assert hilbert_stieltjes(make("const"), 1.1).value == pytest.approx(0.0, abs=1e-12)

    def test_cantor_odd_symmetry_center(self):
        # the staircase measure is symmetric about 0 and the kernel is odd,
        # while the seam atom sits antipodally where the kernel vanishes
        h = hilbert_stieltjes(make("cantor"), 0.0)
        assert h.value == pytest.approx(0.0, abs=1e-6)

    def test_against_dense_pv_oracle(self):
        tau = 1.1
        want = pv_cot_density(np.cos, tau)
        got = hilbert_stieltjes(make("sin"), tau)
        assert got.value == pytest.approx(want, abs=1e-6)


class TestHilbertInterface:
    def test_trace_and_flags(self):
        h = hilbert_stieltjes(make("sin"), 0.9)
        assert len(h.eps_trace) >= 5
        eps = [e for e, _ in h.eps_trace]
        assert eps == sorted(eps, reverse=True)
        assert h.est_error < 1e-4

    def test_refuses_evaluation_on_atom(self):
        with pytest.raises(JumpAtEvaluationPoint):
            hilbert_stieltjes(make("step2pi", 0.5), 0.5)

    def test_refuses_periodized_atom_image(self):
        with pytest.raises(JumpAtEvaluationPoint):
            hilbert_stieltjes(make("step2pi", 0.5), 0.5 + TWO_PI)

    def test_schedule_must_decrease(self):
        with pytest.raises(ValueError):
            hilbert_stieltjes(make("sin"), 0.9, eps_schedule=(0.1, 0.2))
        with pytest.raises(ValueError):
            hilbert_stieltjes(make("sin"), 0.9, eps_schedule=(0.1, -0.05))


class TestTruncatedConjugate:
    def test_truncation_approximates_disk_field(self):
        phi = make("sin")
        t0, r = 0.9, 1 - 2.0 ** -8
        trunc = truncated_conjugate_integral(phi, t0, r)
        disk = conj_poisson_stieltjes(phi, DiskPoint(r, t0))
        assert trunc == pytest.approx(disk.value, abs=5e-3)

    def test_radius_validated(self):
        with pytest.raises(ValueError):
            truncated_conjugate_integral(make("sin"), 0.9, 1.0)

    def test_difference_trace_shrinks(self):
        trace = conjugate_truncation_trace(make("sin"), 0.9, ks=range(3, 11))
        diffs = [d for _, d in trace]
        assert diffs[-1] < 1e-2
        assert diffs[-1] < diffs[0]

    def test_trace_radii_follow_schedule(self):
        trace = conjugate_truncation_trace(make("sin"), 0.9, ks=range(3, 6))
        rs = [r for r, _ in trace]
        assert rs == pytest.approx([1 - 2.0 ** -3, 1 - 2.0 ** -4, 1 - 2.0 ** -5])


class TestSingularCauchy:
    def test_step_collapse_closed_form(self):
        t0, ang = 0.5, 2.0
        zeta0 = complex(np.exp(1j * ang))
        got = singular_cauchy_stieltjes(make("step2pi", t0), zeta0)
        want = -1j * np.exp(1j * t0) / (np.exp(1j * t0) - zeta0)
        assert got.value == pytest.approx(want, abs=1e-12)

    def test_step_imaginary_part_reflects_own_atom(self):
        # at the atom's own angle the window keeps swallowing mass 2 pi,
        # leaving Im I = -1/2 in the limit
        got = singular_cauchy_stieltjes(make("step2pi", 0.5), complex(np.exp(1j * 2.0)))
        assert got.value.imag == pytest.approx(-0.5, abs=1e-12)

    def test_requires_unit_modulus(self):
        with pytest.raises(ValueError):
            singular_cauchy_stieltjes(make("sin"), 0.5 + 0.1j)

    @pytest.mark.parametrize("name,tau", [("sin", 0.9), ("sin", -2.1),
                                          ("sawtooth", 1.3), ("cantor", 0.0)])
    def test_real_part_is_half_hilbert(self, name, tau):
        con = singular_cauchy_consistency(make(name), tau)
        assert con.residual < 1e-4
        assert con.imag_magnitude < 1e-4

    def test_consistency_carries_both_traces(self):
        con = singular_cauchy_consistency(make("sin"), 0.9)
        assert con.hilbert.eps_trace and con.cauchy.eps_trace
        assert con.residual == pytest.approx(
            abs(con.hilbert.value - 2 * con.cauchy.value.real), abs=1e-15)
