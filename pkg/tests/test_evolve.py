"""Tests for complex-time evolution: rays, blow-up detection, shooting."""

import math

import numpy as np
import pytest

from eternal_kit import elliptic, evolve
from eternal_kit.errors import DomainError

OMEGA_1 = 4.0 * math.pi ** 2
OMEGA_2 = 16.0 * math.pi ** 2


class TestComplexField:
    def test_rejects_tiny_and_bad_inputs(self):
        with pytest.raises(DomainError):
            evolve.ComplexField(np.array([1.0]))
        with pytest.raises(DomainError):
            evolve.ComplexField(np.zeros(8), basis="chebyshev")
        with pytest.raises(DomainError):
            evolve.ComplexField(np.zeros(8), theta=math.pi / 2 + 0.1)

    def test_norms_on_cosine_modes(self):
        # c0 = 3 and c2 = 4 on the half interval: the constant carries
        # weight 1/2, each cosine mode weight 1/4.
        c = np.zeros(16, dtype=complex)
        c[0], c[2] = 3.0, 4.0
        f = evolve.ComplexField(c)
        assert f.l2_norm() == pytest.approx(math.sqrt(9.0 / 2.0 + 16.0 / 4.0), rel=1e-14)
        assert f.grad_norm() == pytest.approx(8.0 * math.pi, rel=1e-14)
        assert f.h1_norm() == pytest.approx(math.hypot(f.l2_norm(), f.grad_norm()), rel=1e-14)
        assert f.at_zero() == pytest.approx(7.0)

    def test_values_match_direct_cosine_sum(self):
        coeffs = np.array([0.5, -0.2, 0.0, 0.1 + 0.05j])
        f = evolve.cosine_field(coeffs, N=16)
        M = 64
        vals = f.values(M)
        x = np.arange(M) / M
        direct = sum(coeffs[k] * np.cos(2.0 * math.pi * k * x) for k in range(4))
        assert np.max(np.abs(vals - direct)) < 1e-12

    def test_periodic_values_and_norm(self):
        a = 0.7 - 0.2j
        f = evolve.monochromatic_field(a, N=32)
        M = 128
        x = np.arange(M) / M
        assert np.max(np.abs(f.values(M) - a * np.exp(2j * math.pi * x))) < 1e-12
        assert f.l2_norm() == pytest.approx(abs(a), rel=1e-14)
        assert f.grad_norm() == pytest.approx(2.0 * math.pi * abs(a), rel=1e-14)

    @pytest.mark.parametrize("make", [
        lambda: evolve.cosine_field([0.3, 0.2 + 0.1j, -0.05j], N=16),
        lambda: evolve.monochromatic_field(0.4 + 0.3j, N=16),
    ])
    def test_conjugate_is_pointwise(self, make):
        f = make()
        g = f.conjugate()
        assert np.max(np.abs(g.values(64) - np.conj(f.values(64)))) < 1e-13

    def test_constructors(self):
        f = evolve.constant_field(2.5, N=8)
        assert f.N == 8 and f.at_zero() == pytest.approx(2.5)
        assert f.sup_norm() == pytest.approx(2.5, rel=1e-12)
        prof = elliptic.branch_point(1, 0.05).profile
        g = evolve.cosine_field(prof, N=64)
        assert np.allclose(g.coeffs[: len(prof.coeffs)], prof.coeffs)
        with pytest.raises(DomainError):
            evolve.cosine_field(np.ones(20), N=8)
        m = evolve.monochromatic_field(1.0, N=16)
        assert m.basis == evolve.PERIODIC_UNIT and m.theta == -math.pi / 2

    def test_sectorial_flag(self):
        assert evolve.constant_field(0.0, theta=0.0).sectorial
        assert evolve.constant_field(0.0, theta=1.0).sectorial
        assert not evolve.constant_field(0.0, theta=-math.pi / 2).sectorial


class TestStep:
    def test_advances_clock(self):
        st = evolve.constant_field(0.1, N=8)
        out = evolve.step(st, 0.01, 2.0)
        assert out.r == pytest.approx(0.01)
        assert out.basis == st.basis and out.theta == st.theta

    def test_fixed_step_order_about_four(self):
        def run(nsteps):
            st = evolve.cosine_field([0.2, 0.1, 0.05], N=32)
            dr = 0.1 / nsteps
            for _ in range(nsteps):
                st = evolve.step(st, dr, 4.0)
            return st

        ref = run(512)
        errs = []
        for n in (8, 16, 32):
            st = run(n)
            errs.append(evolve.ComplexField(st.coeffs - ref.coeffs, st.basis).h1_norm())
        slopes = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(slopes >= 3.5)


class TestDetectBlowup:
    def test_real_ray_constant_data_matches_tanh(self):
        # Spatially constant data obeys dw/dr = 6 w^2 - 6; from zero the
        # solution is -tanh(6 r) and never diverges.
        rec = evolve.detect_blowup(evolve.constant_field(0.0, N=32), 6.0, 1.0,
                                   err_target=1e-10)
        assert not rec.diverged
        assert rec.reason == evolve.REASON_HORIZON
        assert abs(rec.final_state.at_zero() + math.tanh(6.0)) < 1e-9
        assert rec.h1_growth_ok and rec.sectorial
        assert not rec.near_resonant_lambda

    def test_real_ray_blowup_time_bracket(self):
        # From w = 3/2 the same scalar flow reaches infinity at
        # r = atanh(2/3) / 6; the certified lower bound must sit just below.
        exact = math.atanh(2.0 / 3.0) / 6.0
        rec = evolve.detect_blowup(evolve.constant_field(1.5, N=32), 6.0, 1.0)
        assert rec.diverged
        assert rec.reason in (evolve.REASON_NORM, evolve.REASON_STEP)
        assert rec.r_star_lower <= exact + 1e-9
        assert exact - rec.r_star_lower < 1e-4

    def test_vertical_ray_pole(self):
        # Along theta = -pi/2 the constant flow is i tan(6 s): a pole at
        # s = pi / 12 that the step controller pins to a few 1e-5.
        rec = evolve.detect_blowup(
            evolve.constant_field(0.0, N=32, theta=-math.pi / 2), 6.0, 1.0)
        assert rec.diverged
        assert not rec.sectorial
        assert rec.r_star_lower <= math.pi / 12.0
        assert math.pi / 12.0 - rec.r_star_lower < 1e-4

    def test_near_resonant_lambda_flag(self):
        lam = (8.0 / 3.0) * math.pi ** 4
        rec = evolve.detect_blowup(evolve.constant_field(0.0, N=16), lam, 1e-3)
        assert rec.near_resonant_lambda

    def test_history_arrays_are_consistent(self):
        rec = evolve.detect_blowup(evolve.constant_field(0.0, N=16), 6.0, 0.5)
        h = rec.history
        assert set(h) >= {"r", "h1", "sup", "grad"}
        assert len(h["r"]) == len(h["h1"]) == len(h["sup"])
        assert np.all(np.diff(h["r"]) > 0)


class TestSchrodinger:
    def test_request_validation(self):
        psi = evolve.constant_field(0.1, N=16)
        with pytest.raises(DomainError):
            evolve.schrodinger_evolve(psi, [], 0.0)
        with pytest.raises(DomainError):
            evolve.schrodinger_evolve(psi, [0.0], 0.0)
        with pytest.raises(DomainError):
            evolve.schrodinger_evolve(psi, [-0.1, 0.1], 0.0)
        with pytest.raises(DomainError):
            evolve.schrodinger_evolve(psi, [0.2, 0.1], 0.0)

    def test_reversibility(self):
        # Conjugating the data and running forward equals conjugating the
        # backward run.
        psi0 = evolve.cosine_field([0.3, 0.2 + 0.1j, 0.05j], N=64)
        fwd = evolve.schrodinger_evolve(psi0.conjugate(), [0.05], 3.0,
                                        err_target=1e-9)
        bwd = evolve.schrodinger_evolve(psi0, [-0.05], 3.0, err_target=1e-9)
        assert fwd.status == bwd.status == evolve.REASON_HORIZON
        assert fwd.s_reached == pytest.approx(0.05)
        assert bwd.s_reached == pytest.approx(-0.05)
        diff = fwd.fields[0].coeffs - bwd.fields[0].conjugate().coeffs
        assert evolve.ComplexField(diff, psi0.basis).h1_norm() < 1e-9

    def test_second_harmonic_growth_small_amplitude(self):
        # To second order in the amplitude the k = 2 mode of monochromatic
        # data is (3 a^2 / 4 pi^2)(e^(2 i w1 s) - e^(i w2 s)).
        a, s = 0.01, 0.02
        run = evolve.schrodinger_evolve(evolve.monochromatic_field(a, N=32),
                                        [s], 0.0)
        c2 = run.fields[0].coeffs[2]
        pred = (3.0 * a ** 2 / (4.0 * math.pi ** 2)) * (
            np.exp(2j * OMEGA_1 * s) - np.exp(1j * OMEGA_2 * s))
        assert abs(c2 - pred) < 1e-11
        c1 = run.fields[0].coeffs[1]
        assert abs(c1 - a * np.exp(1j * OMEGA_1 * s)) < 1e-9

    def test_monochromatic_period_return(self):
        # All circle frequencies 4 pi^2 k^2 share the period 1 / (2 pi), and
        # the quadratic cascade keeps the solution inside that class.
        a = 1.0
        period = 1.0 / (2.0 * math.pi)
        psi0 = evolve.monochromatic_field(a, N=64)
        run = evolve.schrodinger_evolve(psi0, [period], 0.0, err_target=1e-7)
        diff = run.fields[0].coeffs - psi0.coeffs
        assert evolve.ComplexField(diff, psi0.basis).h1_norm() < 1e-6

    def test_run_past_pole_truncates(self):
        run = evolve.schrodinger_evolve(evolve.constant_field(0.0, N=32),
                                        [0.2, 0.3], 6.0)
        assert run.status == evolve.REASON_STEP
        assert len(run.fields) == 1
        assert run.fields[0].r == pytest.approx(0.2)
        assert run.s_reached < 0.3


class TestHeteroclinicShoot:
    def test_direction_validation(self):
        with pytest.raises(DomainError):
            evolve.heteroclinic_shoot(1, 0.05, "sideways")

    def test_minus_direction_descends_to_constant(self):
        res = evolve.heteroclinic_shoot(1, 0.05, "-", N=128, err_target=1e-8)
        assert res.direction == -1
        assert res.outcome == "converged"
        assert res.captured_r is not None and 0.0 < res.captured_r < 20.0
        assert res.final_distance < 1e-6
        assert res.monotone
        assert res.target == pytest.approx(-math.sqrt(res.lam / 6.0), rel=1e-12)

    def test_plus_direction_blows_up(self):
        res = evolve.heteroclinic_shoot(1, 0.05, "plus", N=128, r_max=6.0,
                                        err_target=1e-8)
        assert res.direction == 1
        assert res.outcome == "blowup"
        assert res.record is not None and res.record.diverged
        assert math.isfinite(res.record.r_star_lower)
        assert 0.0 < res.record.r_star_lower < 6.0


class TestAnalyticityBoundary:
    def test_corner_at_real_axis(self):
        # Constant data 1/2 at lambda = 0: the real ray is dw/dr = 6 w^2 with
        # pole at r = 1/3, while tilted starts wander off the real axis and
        # never diverge.
        scan = evolve.analyticity_boundary(
            evolve.constant_field(0.5, N=32), [-0.1, 0.0, 0.1], 0.0,
            err_target=1e-9)
        mid = scan.samples[1]
        assert mid.defined and not mid.censored
        assert abs(mid.r_star - 1.0 / 3.0) < 1e-3
        for side in (scan.samples[0], scan.samples[2]):
            assert side.defined and side.censored
        assert scan.corner is not None
        assert scan.corner[1] == 0.0
        assert abs(scan.corner[0] - 1.0 / 3.0) < 1e-3

    def test_vertical_horizon_censors_grid(self):
        # From zero at lambda = 6 the vertical legs pole at |s| = pi / 12, so
        # samples beyond are undefined and nothing on the grid diverges
        # horizontally.
        scan = evolve.analyticity_boundary(
            evolve.constant_field(0.0, N=32), [-0.3, -0.2, 0.2, 0.3], 6.0)
        by_s = {b.s: b for b in scan.samples}
        for s in (-0.2, 0.2):
            assert by_s[s].defined and by_s[s].censored
            assert by_s[s].reason == evolve.REASON_HORIZON
        for s in (-0.3, 0.3):
            assert not by_s[s].defined
            assert by_s[s].r_star is None
        assert scan.corner is None
