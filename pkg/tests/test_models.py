import warnings

import numpy as np
import pytest
from scipy import integrate

from supportline import (
    CauchyLocation,
    Lehmann,
    NonMonotoneError,
    NormalLocation,
    TwoGroupsSpec,
    bh_equivalent_level,
    f1,
    mixture_F,
    mixture_f,
    mixture_f_prime,
    model_preset,
    oracle_threshold,
    population_threshold_bh,
    population_threshold_tq,
    rho_regret,
    true_lfdr,
)

LEHMANN = model_preset("lehmann(0.8,0.5)")
BH64 = model_preset("bh64")
CAUCHY = model_preset("bh64-cauchy")
ALL = (LEHMANN, BH64, CAUCHY)


class TestFamilies:
    def test_lehmann_point(self):
        # 0.5 * 0.25^{-0.5} = 1
        assert f1(LEHMANN, 0.25) == pytest.approx(1.0, abs=1e-14)

    def test_normal_point(self):
        # numeric evaluation through the standard-normal pdf
        assert f1(BH64, 0.5) == pytest.approx(0.1256644620887822, abs=1e-12)

    def test_f1_integrates_to_one(self):
        for spec in ALL:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                val, _ = integrate.quad(lambda t: f1(spec, t), 0.0, 1.0, limit=300)
            assert val == pytest.approx(1.0, abs=1e-6)

    def test_domain_open_interval(self):
        for spec in ALL:
            for bad in (0.0, 1.0, -0.1, 1.1):
                with pytest.raises(ValueError):
                    f1(spec, bad)

    def test_shift_probabilities_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum"):
            NormalLocation(((1.0, 0.5), (2.0, 0.6)))

    def test_monotonicity_flags(self):
        assert LEHMANN.monotone
        assert BH64.monotone
        assert not CAUCHY.monotone
        assert not NormalLocation(((-1.0, 1.0),)).monotone

    def test_pi0_domain(self):
        with pytest.raises(ValueError):
            TwoGroupsSpec(pi0=1.2, alternative=Lehmann(0.5))
        with pytest.raises(ValueError):
            Lehmann(1.0)


class TestMixture:
    def test_cdf_endpoints(self):
        for spec in ALL:
            assert mixture_F(spec, 0.0) == 0.0
            assert mixture_F(spec, 1.0) == 1.0

    def test_lehmann_closed_form(self):
        assert mixture_F(LEHMANN, 1 / 1024) == pytest.approx(0.00703125, abs=1e-15)

    def test_normal_mixture_density(self):
        assert mixture_f(BH64, 0.5) == pytest.approx(0.7814161155221956, abs=1e-12)

    def test_density_is_cdf_derivative(self):
        # central differences of F match f within 1e-6 away from the endpoints
        h = 1e-5
        grid = np.linspace(0.02, 0.98, 97)
        for spec in ALL:
            for t in grid:
                fd = (mixture_F(spec, t + h) - mixture_F(spec, t - h)) / (2 * h)
                assert abs(fd - mixture_f(spec, t)) <= 1e-6

    def test_fprime_analytic_vs_fd_lehmann(self):
        for t in (0.01, 0.1, 0.5, 0.9):
            analytic = mixture_f_prime(LEHMANN, t)
            fd = (mixture_f(LEHMANN, t + 1e-7) - mixture_f(LEHMANN, t - 1e-7)) / 2e-7
            assert analytic == pytest.approx(fd, rel=1e-4)


class TestLfdr:
    def test_degenerate_null(self):
        null = TwoGroupsSpec(pi0=1.0, alternative=Lehmann(0.5))
        for t in (0.1, 0.5, 0.9):
            assert true_lfdr(null, t) == 1.0

    def test_normal_point(self):
        assert true_lfdr(BH64, 0.5) == pytest.approx(0.9597959206392855, abs=1e-12)

    def test_lehmann_closed_form(self):
        # 0.8 / (0.8 + 0.2*0.5*32) = 0.2 at t = 1/1024
        assert true_lfdr(LEHMANN, 1 / 1024) == pytest.approx(0.2, abs=1e-14)

    def test_bounded_by_one(self):
        grid = np.linspace(1e-4, 1 - 1e-4, 401)
        for spec in ALL:
            assert np.all(true_lfdr(spec, grid) <= 1.0 + 1e-12)

    def test_monotone_for_monotone_families_only(self):
        grid = np.linspace(1e-4, 1 - 1e-4, 2001)
        for spec in (LEHMANN, BH64):
            vals = true_lfdr(spec, grid)
            assert np.all(np.diff(vals) >= -1e-12)
        cauchy_vals = true_lfdr(CAUCHY, grid)
        # the misspecified family must violate monotonicity somewhere
        assert np.min(np.diff(cauchy_vals)) < -1e-9


class TestPopulationThresholds:
    def test_lehmann_closed_forms(self):
        assert population_threshold_tq(LEHMANN, 0.2) == pytest.approx(42.0**-2, abs=1e-12)
        assert population_threshold_tq(LEHMANN, 0.25) == pytest.approx(1 / 1024, abs=1e-12)
        assert population_threshold_bh(LEHMANN, 0.2) == pytest.approx(21.0**-2, abs=1e-12)

    def test_oracle_threshold_equivalence(self):
        # tau* at alpha = 0.2 equals t_q at q = alpha/pi0 = 0.25
        assert oracle_threshold(LEHMANN, 0.2) == population_threshold_tq(LEHMANN, 0.25)

    def test_root_verified_by_lfdr(self):
        alpha = 0.2
        for spec in (LEHMANN, BH64):
            tau = population_threshold_tq(spec, alpha / spec.pi0)
            assert true_lfdr(spec, tau) == pytest.approx(alpha, abs=1e-10)

    def test_bh_root_verified(self):
        for spec in (LEHMANN, BH64):
            for q in (0.1, 0.2, 0.4):
                t = population_threshold_bh(spec, q)
                assert mixture_F(spec, t) * q == pytest.approx(t, abs=1e-10)

    def test_no_positive_root_under_global_null(self):
        null = TwoGroupsSpec(pi0=1.0, alternative=Lehmann(0.5))
        assert population_threshold_bh(null, 0.3) == 0.0
        assert population_threshold_tq(null, 0.3) == 0.0

    def test_non_monotone_error(self):
        with pytest.raises(NonMonotoneError, match="non-monotone"):
            population_threshold_tq(CAUCHY, 0.2)
        with pytest.raises(NonMonotoneError):
            population_threshold_bh(CAUCHY, 0.2)

    def test_q_domain(self):
        with pytest.raises(ValueError):
            population_threshold_tq(LEHMANN, 1.3)  # >= 1/pi0 = 1.25


class TestBhEquivalentLevel:
    def test_lehmann_closed_form(self):
        # theta*q / (1 - (1-theta)*pi0*q) = 0.1/0.92
        assert bh_equivalent_level(LEHMANN, 0.2) == pytest.approx(0.1 / 0.92, abs=1e-12)

    def test_theta_near_one_approaches_q(self):
        # q' = theta q / (1 - (1-theta) pi0 q) -> q linearly in 1 - theta
        last_gap = 0.2
        for theta in (0.9, 0.99, 0.995):
            spec = model_preset(f"lehmann(0.8,{theta})")
            gap = abs(bh_equivalent_level(spec, 0.2) - 0.2)
            assert gap < last_gap
            last_gap = gap
        assert bh_equivalent_level(model_preset("lehmann(0.8,0.995)"), 0.2) == pytest.approx(
            0.2, rel=5e-3
        )

    def test_consistency_with_bh_threshold(self):
        for spec in (LEHMANN, BH64):
            q = 0.2
            qprime = bh_equivalent_level(spec, q)
            t_q = population_threshold_tq(spec, q)
            assert population_threshold_bh(spec, qprime) == pytest.approx(t_q, abs=1e-10)

    def test_degenerate_threshold_errors(self):
        null = TwoGroupsSpec(pi0=1.0, alternative=Lehmann(0.5))
        with pytest.raises(ValueError):
            bh_equivalent_level(null, 0.3)


class TestRho:
    def test_zero_at_oracle_threshold(self):
        for spec in (LEHMANN, BH64):
            tau = oracle_threshold(spec, 0.2)
            assert rho_regret(spec, 0.2, tau) == 0.0

    def test_lehmann_at_zero(self):
        # F(tau*) - 4*tau* with tau* = 1/1024
        assert rho_regret(LEHMANN, 0.2, 0.0) == pytest.approx(0.003125, abs=1e-12)

    def test_nonnegative_and_minimized_at_oracle(self):
        grid = np.linspace(0.0, 1.0, 101)
        for spec in (LEHMANN, BH64):
            vals = [rho_regret(spec, 0.2, t) for t in grid]
            assert min(vals) >= 0.0
            tau = oracle_threshold(spec, 0.2)
            assert rho_regret(spec, 0.2, tau) <= min(vals)

    def test_taylor_quadratic_near_oracle(self):
        # rho(t) ~ (-f'(xi)/2)(t - tau*)^2 within 10% for |t - tau*| <= tau*/10
        for spec in (LEHMANN, BH64):
            tau = oracle_threshold(spec, 0.2)
            fp = mixture_f_prime(spec, tau)
            for frac in (-0.1, -0.05, 0.05, 0.1):
                t = tau * (1 + frac)
                approx = (-fp / 2.0) * (t - tau) ** 2
                assert rho_regret(spec, 0.2, t) == pytest.approx(approx, rel=0.10)

    def test_non_monotone_warns(self):
        with pytest.warns(UserWarning, match="non-monotone"):
            rho_regret(CAUCHY, 0.2, 0.01)


class TestPresets:
    def test_known_names(self):
        assert isinstance(model_preset("bh64").alternative, NormalLocation)
        assert isinstance(model_preset("bh64-cauchy").alternative, CauchyLocation)
        lm = model_preset("lehmann(0.8, 0.5)")
        assert lm.pi0 == 0.8 and lm.alternative.theta == 0.5

    def test_bh64_shift_battery(self):
        alt = model_preset("bh64").alternative
        assert [mu for mu, _ in alt.shifts] == [1.25, 2.5, 3.75, 5.0]
        assert all(w == 0.25 for _, w in alt.shifts)
        assert model_preset("bh64").pi0 == 0.75

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown model preset"):
            model_preset("beta-uniform")
