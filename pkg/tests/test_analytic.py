import math
from dataclasses import replace

import numpy as np
import pytest

from brillouin_ramsey import (
    MHZ,
    IntegratorConfig,
    PulseSchedule,
    Regime,
    fringe_arwa,
    fringe_point,
    fringe_rwa,
    linear_final_states,
    phonon_after_first_pulse,
    phonon_after_free_evolution,
    pulse_response,
)

from conftest import EPS_PROBE


class TestPulseResponse:
    def test_limit_at_zero(self):
        assert pulse_response(0.0, 2.5) == pytest.approx(2.5, rel=1e-12)

    def test_series_matches_full_formula_across_cutoff(self):
        # continuity where the series expansion takes over
        tau = 3.0
        for mag in (1e-7, 1e-6, 1e-5):
            z = mag * np.exp(1j * 0.7) / tau
            series_side = pulse_response(z * 0.99, tau)
            full_side = (1 - np.exp(-z * 1.01 * tau)) / (z * 1.01)
            assert abs(series_side - full_side) / abs(full_side) < 1e-6

    def test_moderate_argument(self):
        z = 0.3 + 0.8j
        assert pulse_response(z, 4.0) == pytest.approx((1 - np.exp(-z * 4.0)) / z, rel=1e-14)

    def test_vectorized_with_zero_entry(self):
        z = np.array([0.0, 1.0 + 1.0j])
        out = pulse_response(z, 1.0)
        assert out[0] == pytest.approx(1.0, rel=1e-12)
        assert out[1] == pytest.approx((1 - np.exp(-(1 + 1j))) / (1 + 1j), rel=1e-14)


class TestPhononBuildup:
    def test_no_probe_no_phonons(self, dp_rwa):
        assert phonon_after_first_pulse(dp_rwa, 0.0, 4.0) == 0.0

    def test_vanishing_pulse_length(self, dp_rwa):
        assert phonon_after_first_pulse(dp_rwa, EPS_PROBE, 0.0) == 0.0

    def test_reference_magnitude(self, dp_rwa):
        # Gamma_r = 2pi x 0.01841 MHz, on-resonance 4 us pulse
        b = phonon_after_first_pulse(dp_rwa, EPS_PROBE, 4.0)
        assert abs(b) == pytest.approx(0.29174425041898383, rel=1e-12)
        assert abs(b) == pytest.approx(0.292, abs=5e-4)

    def test_cross_checked_against_integrator(self, dp_rwa, coarse_integrator):
        sched = PulseSchedule(tau1=4.0, t_free=1e-12, tau2=1e-9, eps_probe=EPS_PROBE)
        _, b_ode, _ = linear_final_states(dp_rwa, sched, coarse_integrator)
        b_cf = phonon_after_first_pulse(dp_rwa, EPS_PROBE, 4.0)
        assert abs(b_ode[0] - b_cf) / abs(b_cf) < 5e-3

    def test_linear_in_probe(self, dp_arwa):
        b1 = phonon_after_first_pulse(dp_arwa, EPS_PROBE, 4.0)
        b3 = phonon_after_first_pulse(dp_arwa, 3 * EPS_PROBE, 4.0)
        assert b3 == pytest.approx(3 * b1, rel=1e-14)


class TestFreeEvolution:
    def test_identity_at_zero_time(self, dp_rwa):
        b = 0.2 - 0.1j
        assert phonon_after_free_evolution(b, dp_rwa, 0.0) == b

    def test_pure_rotation_when_lossless(self, dp_rwa):
        dp = replace(dp_rwa, gamma_m=0.0, omega_x=0.7)
        b = 0.3 + 0.4j
        out = phonon_after_free_evolution(b, dp, 2.0)
        assert abs(out) == pytest.approx(abs(b), rel=1e-12)
        assert np.angle(out / b) == pytest.approx(-0.7 * 2.0, rel=1e-12)

    def test_reference_decay(self, dp_rwa):
        b = phonon_after_first_pulse(dp_rwa, EPS_PROBE, 4.0)
        out = phonon_after_free_evolution(b, dp_rwa, 4.0)
        assert abs(out) == pytest.approx(0.2269092485600863, rel=1e-12)
        assert abs(out) == pytest.approx(abs(b) * math.exp(-0.2513274122871834), rel=1e-9)


class TestFringeRwa:
    def test_decoupled_probe_is_flat(self, dp_rwa, schedule, omega_grid):
        dp = replace(dp_rwa, omega_x=omega_grid, coupling=0.0, gamma_eff=dp_rwa.gamma_m / 2)
        fp = fringe_rwa(dp, schedule)
        np.testing.assert_array_equal(fp.out_field, np.full(omega_grid.size, EPS_PROBE))

    def test_input_output_identity(self, dp_rwa, schedule, omega_grid):
        fp = fringe_rwa(replace(dp_rwa, omega_x=omega_grid), schedule)
        np.testing.assert_array_equal(
            fp.out_field, 2 * dp_rwa.kappa * fp.mode_amp - schedule.eps_probe
        )

    def test_symmetry_in_omega_x(self, dp_rwa, schedule, omega_grid):
        fp = fringe_rwa(replace(dp_rwa, omega_x=omega_grid), schedule)
        np.testing.assert_allclose(
            np.abs(fp.out_field), np.abs(fp.out_field)[::-1], rtol=1e-12
        )

    def test_central_fringe_is_a_dip(self, dp_rwa, schedule):
        # interference constructive into the phonon branch depletes the output
        fp0 = fringe_rwa(replace(dp_rwa, omega_x=0.0), schedule)
        assert abs(fp0.out_field) < schedule.eps_probe

    def test_linearity_in_probe(self, dp_rwa, schedule, omega_grid):
        dp = replace(dp_rwa, omega_x=omega_grid)
        fp1 = fringe_rwa(dp, schedule)
        fp2 = fringe_rwa(dp, replace(schedule, eps_probe=2 * schedule.eps_probe))
        np.testing.assert_allclose(fp2.phonon_amp, 2 * fp1.phonon_amp, rtol=1e-14)

    def test_second_pulse_limit_recovers_composition(self, dp_rwa, omega_grid):
        # tau2 -> 0 leaves only the free-evolved first-pulse phonon
        dp = replace(dp_rwa, omega_x=omega_grid)
        sched = PulseSchedule(tau1=4.0, t_free=4.0, tau2=1e-10, eps_probe=EPS_PROBE)
        fp = fringe_rwa(dp, sched)
        composed = phonon_after_free_evolution(
            phonon_after_first_pulse(dp, EPS_PROBE, 4.0), dp, 4.0
        )
        np.testing.assert_allclose(fp.phonon_amp, composed, rtol=1e-7)

    def test_wrong_regime_rejected(self, dp_arwa, schedule):
        with pytest.raises(ValueError):
            fringe_rwa(dp_arwa, schedule)


class TestFringeArwa:
    def test_decoupled_probe_is_flat(self, dp_arwa, schedule, omega_grid):
        dp = replace(dp_arwa, omega_x=omega_grid, coupling=0.0, gamma_eff=dp_arwa.gamma_m / 2)
        fp = fringe_arwa(dp, schedule)
        np.testing.assert_array_equal(fp.out_field, np.full(omega_grid.size, EPS_PROBE))

    def test_input_output_identity(self, dp_arwa, schedule, omega_grid):
        fp = fringe_arwa(replace(dp_arwa, omega_x=omega_grid), schedule)
        np.testing.assert_array_equal(
            fp.out_field, 2 * dp_arwa.kappa * fp.mode_amp - schedule.eps_probe
        )

    def test_central_fringe_is_enhanced(self, dp_arwa, schedule):
        # two-mode-squeezing interaction amplifies the probe at resonance
        fp0 = fringe_arwa(replace(dp_arwa, omega_x=0.0), schedule)
        assert abs(fp0.out_field) > schedule.eps_probe

    def test_damping_exponent_signs(self, params30, params40, schedule):
        from brillouin_ramsey import derive, phase_params
        dp_r = derive(params40, schedule, Regime.RWA, coupling=0.58 * MHZ)
        assert phase_params(dp_r, schedule).theta > 0
        # above the gain threshold theta_b can turn negative: amplification
        dp_b = derive(params30, schedule, Regime.ANTI_RWA, coupling=1.5 * MHZ)
        sched_long = replace(schedule, t_free=0.001, tau2=4.0)
        theta_b = phase_params(dp_b, sched_long).theta
        assert theta_b < 0
        assert math.exp(-theta_b) > 1

    def test_second_pulse_limit_recovers_composition(self, dp_arwa, omega_grid):
        dp = replace(dp_arwa, omega_x=omega_grid)
        sched = PulseSchedule(tau1=4.0, t_free=4.0, tau2=1e-10, eps_probe=EPS_PROBE)
        fp = fringe_arwa(dp, sched)
        composed = phonon_after_free_evolution(
            phonon_after_first_pulse(dp, EPS_PROBE, 4.0), dp, 4.0
        )
        np.testing.assert_allclose(fp.phonon_amp, composed, rtol=1e-7)

    def test_dispatch(self, dp_rwa, dp_arwa, schedule):
        assert abs(fringe_point(dp_rwa, schedule).out_field) < EPS_PROBE
        assert abs(fringe_point(dp_arwa, schedule).out_field) > EPS_PROBE


class TestClosedFormsAgainstIntegrator:
    """Quick oracle-equivalence checks; the acceptance suite runs the full grids."""

    @pytest.mark.parametrize("regime", [Regime.RWA, Regime.ANTI_RWA])
    def test_out_field_matches(self, params40, schedule, regime, coarse_integrator):
        from brillouin_ramsey import derive

        wx = np.linspace(-MHZ, MHZ, 11)
        dp = derive(params40, schedule, regime, omega_x=wx, coupling=0.58 * MHZ)
        fp = fringe_point(dp, schedule)
        _, _, out_ode = linear_final_states(dp, schedule, coarse_integrator)
        dev = np.max(np.abs(np.abs(fp.out_field) - np.abs(out_ode))) / np.max(np.abs(out_ode))
        assert dev < 5e-3

    @pytest.mark.parametrize("regime", [Regime.RWA, Regime.ANTI_RWA])
    def test_phonon_matches_in_phase(self, params40, schedule, regime, coarse_integrator):
        from brillouin_ramsey import derive

        wx = np.linspace(-MHZ, MHZ, 7)
        dp = derive(params40, schedule, regime, omega_x=wx, coupling=0.58 * MHZ)
        fp = fringe_point(dp, schedule)
        _, b_ode, _ = linear_final_states(dp, schedule, coarse_integrator)
        assert np.max(np.abs(fp.phonon_amp - b_ode)) / np.max(np.abs(b_ode)) < 5e-3
