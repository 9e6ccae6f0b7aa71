import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadsim.errors import (ConfigurationError, DegenerateCouplingError,
                            NoCondensateError)
from dyadsim.perturbation import (DyadBaseState, DyadParams,
                                  analytic_calibration_curve, base_residual,
                                  calibration_slope, closed_form_corrections,
                                  corrected_state_residual, dyad_residual,
                                  equal_occupancy_state, find_asymmetric_state,
                                  solve_first_order)
from tests.conftest import CALIB, FAIR_COIN, random_valid_dyad_params

seeds = st.integers(min_value=0, max_value=10_000)


class TestBaseState:
    def test_balanced_occupancy_value(self):
        s = equal_occupancy_state(**_p(CALIB))
        assert s.a1 == s.a2
        assert s.a1 ** 2 == pytest.approx(1.25 / 1.1, rel=1e-12)
        assert s.theta == 0.0
        assert s.mu == pytest.approx(CALIB["g"] + s.a1 ** 2, rel=1e-12)

    def test_negative_coupling_antiphase(self):
        s = equal_occupancy_state(-0.45, 1.8, 0.4, 2.0)
        assert s.theta == pytest.approx(np.pi)
        np.testing.assert_allclose(base_residual(s), 0, atol=1e-12)

    def test_below_threshold_raises(self):
        with pytest.raises(NoCondensateError):
            equal_occupancy_state(0.3, 0.6, 0.4, 2.0)

    @given(seed=seeds)
    @settings(max_examples=60, deadline=None)
    def test_residual_vanishes(self, seed):
        rng = np.random.default_rng(seed)
        J, gamma0, g, xi = random_valid_dyad_params(rng)
        s = equal_occupancy_state(J, gamma0, g, xi)
        np.testing.assert_allclose(base_residual(s), 0, atol=1e-10)

    def test_invalid_state_rejected(self):
        params = DyadParams(**_p(CALIB))
        with pytest.raises(ConfigurationError):
            DyadBaseState(a1=1.0, a2=1.0, theta=0.0, mu=0.0, params=params)


class TestAsymmetricState:
    def test_fair_coin_root(self):
        s = find_asymmetric_state(**_p(FAIR_COIN))
        assert s.a1 != pytest.approx(s.a2, rel=1e-3)
        np.testing.assert_allclose(base_residual(s), 0, atol=1e-8)

    def test_swap_is_also_a_root(self):
        s = find_asymmetric_state(**_p(FAIR_COIN))
        res = dyad_residual(s.a2, s.a1, -s.theta, s.mu, s.params.J,
                            s.params.gamma0, s.params.gamma0,
                            s.params.g, s.params.g, s.params.xi)
        np.testing.assert_allclose(res, 0, atol=1e-8)


class TestFirstOrder:
    def test_closed_forms_fair_coin(self):
        sol = closed_form_corrections(**_p(FAIR_COIN))
        g, gamma0, J, xi = (FAIR_COIN["g"], FAIR_COIN["gamma"],
                            FAIR_COIN["J"], FAIR_COIN["xi"])
        one_g2 = 1.0 + g * g
        assert sol.gamma1 == pytest.approx(-g * gamma0 / (one_g2 * (1 - J)),
                                           rel=1e-12)
        assert sol.gamma1 == pytest.approx(-2.48888888889, rel=1e-9)
        assert sol.theta1 == pytest.approx(1.0 / (2 * one_g2 * J), rel=1e-12)
        assert sol.theta1 == pytest.approx(0.727272727273, rel=1e-9)
        assert sol.mu1 == pytest.approx(
            0.5 - gamma0 * g / (2 * one_g2 * (1 - J) ** 2 * xi), rel=1e-12)

    def test_zero_coupling_rejected(self):
        with pytest.raises(DegenerateCouplingError):
            closed_form_corrections(0.0, 1.8, 0.4, 2.0)

    def test_solver_matches_closed_forms_at_symmetric_base(self):
        base = equal_occupancy_state(**_p(CALIB))
        sol = solve_first_order(base)
        ref = closed_form_corrections(**_p(CALIB))
        assert sol.gamma1 == pytest.approx(ref.gamma1, rel=1e-9)
        assert sol.theta1 == pytest.approx(ref.theta1, rel=1e-9)
        assert sol.mu1 == pytest.approx(ref.mu1, rel=1e-9)
        assert sol.a1_1 == pytest.approx(ref.a1_1, rel=1e-6, abs=1e-9)
        assert sol.a2_1 == pytest.approx(ref.a2_1, rel=1e-6, abs=1e-9)

    @given(seed=seeds)
    @settings(max_examples=40, deadline=None)
    def test_symmetric_base_agreement_random(self, seed):
        rng = np.random.default_rng(seed)
        J, gamma0, g, xi = random_valid_dyad_params(rng)
        base = equal_occupancy_state(J, gamma0, g, xi)
        sol = solve_first_order(base)
        ref = closed_form_corrections(J, gamma0, g, xi)
        assert sol.gamma1 == pytest.approx(ref.gamma1, rel=1e-7, abs=1e-9)
        assert sol.theta1 == pytest.approx(ref.theta1, rel=1e-7, abs=1e-9)
        assert sol.mu1 == pytest.approx(ref.mu1, rel=1e-7, abs=1e-9)

    def test_quadratic_residual_decay_symmetric(self):
        base = equal_occupancy_state(**_p(CALIB))
        sol = solve_first_order(base)
        r1 = corrected_state_residual(base, sol, 1e-3)
        r2 = corrected_state_residual(base, sol, 5e-4)
        r3 = corrected_state_residual(base, sol, 2.5e-4)
        assert r1 / r2 == pytest.approx(4.0, rel=0.05)
        assert r2 / r3 == pytest.approx(4.0, rel=0.05)

    def test_quadratic_residual_decay_asymmetric(self):
        base = find_asymmetric_state(**_p(FAIR_COIN))
        sol = solve_first_order(base)
        r1 = corrected_state_residual(base, sol, 1e-3)
        r2 = corrected_state_residual(base, sol, 5e-4)
        assert r1 / r2 == pytest.approx(4.0, rel=0.05)

    def test_swap_invariance_asymmetric(self):
        base = find_asymmetric_state(**_p(FAIR_COIN))
        swapped = DyadBaseState(a1=base.a2, a2=base.a1, theta=-base.theta,
                                mu=base.mu, params=base.params)
        a = solve_first_order(base)
        b = solve_first_order(swapped)
        assert a.gamma1 == pytest.approx(b.gamma1, rel=1e-8)
        assert a.mu1 == pytest.approx(b.mu1, rel=1e-8)


class TestCalibrationCurve:
    def test_line_through_identity(self):
        pts = analytic_calibration_curve(**_p(CALIB), epsilons=[0.0])
        assert pts == [(1.0, 1.0)]

    def test_slope_matches_closed_form(self):
        eps = 0.01
        (r_g, r_gamma), = analytic_calibration_curve(**_p(CALIB),
                                                     epsilons=[eps])
        slope = (r_gamma - 1.0) / (r_g - 1.0)
        assert slope == pytest.approx(calibration_slope(CALIB["J"], CALIB["g"]),
                                      rel=1e-10)

    def test_fair_coin_slope_value(self):
        assert calibration_slope(0.55, 0.5) == pytest.approx(-4.0 / 9.0,
                                                             rel=1e-12)

    def test_large_eps_warns(self):
        with pytest.warns(UserWarning):
            analytic_calibration_curve(**_p(CALIB), epsilons=[0.2])

    def test_zero_g_rejected(self):
        with pytest.raises(ConfigurationError):
            analytic_calibration_curve(0.45, 1.8, 0.0, 2.0, epsilons=[0.01])


def _p(d):
    return {"J": d["J"], "gamma0": d["gamma"], "g": d["g"], "xi": d["xi"]}
