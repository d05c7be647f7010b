"""Tests for PI/EI/UCB, including the Monte-Carlo improvement oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import norm

from searchlab.acquisition import (
    AcquisitionSpec,
    Incumbent,
    Posterior,
    acq_value,
    acq_values,
    format_acquisition,
    lcb_value,
    parse_acquisition,
)
from searchlab.errors import ConfigurationError, ParseError

finite = dict(allow_nan=False, allow_infinity=False)


def mc_improvement(mu, sigma, y_plus, n_draws=10**6, seed=0):
    """Monte-Carlo (EI, PI) estimates with standard errors."""
    rng = np.random.default_rng(seed)
    f = rng.normal(mu, sigma, size=n_draws)
    improvement = np.maximum(f - y_plus, 0.0)
    ei = improvement.mean()
    ei_se = improvement.std() / math.sqrt(n_draws)
    pi = (f > y_plus).mean()
    pi_se = math.sqrt(max(pi * (1 - pi), 1e-12) / n_draws)
    return ei, ei_se, pi, pi_se


class TestClosedForms:
    def test_ucb_beta_zero_is_pure_mean(self):
        spec = AcquisitionSpec("UCB", beta=0.0)
        assert acq_value(spec, Posterior(0.4, 0.2), Incumbent(0.9)) == pytest.approx(0.4)

    def test_ucb_linear_in_sigma(self):
        spec = AcquisitionSpec("UCB", beta=1.5)
        assert acq_value(spec, Posterior(0.4, 0.2), Incumbent(0.0)) == pytest.approx(0.4 + 1.5 * 0.2)

    def test_pi_at_incumbent_is_half(self):
        spec = AcquisitionSpec("PI")
        assert acq_value(spec, Posterior(1.0, 0.3), Incumbent(1.0)) == pytest.approx(0.5)

    def test_ei_at_incumbent_analytic(self):
        spec = AcquisitionSpec("EI")
        got = acq_value(spec, Posterior(1.0, 0.2), Incumbent(1.0))
        assert got == pytest.approx(0.2 * norm.pdf(0.0), abs=1e-12)
        assert got == pytest.approx(0.079788, abs=1e-6)

    def test_sigma_zero_conventions(self):
        inc = Incumbent(1.0)
        assert acq_value(AcquisitionSpec("PI"), Posterior(1.5, 0.0), inc) == 1.0
        assert acq_value(AcquisitionSpec("PI"), Posterior(0.5, 0.0), inc) == 0.0
        assert acq_value(AcquisitionSpec("PI"), Posterior(1.0, 0.0), inc) == 0.0  # needs mu > y+
        assert acq_value(AcquisitionSpec("EI"), Posterior(1.5, 0.0), inc) == pytest.approx(0.5)
        assert acq_value(AcquisitionSpec("EI"), Posterior(0.5, 0.0), inc) == 0.0

    def test_xi_margin_shifts_improvement(self):
        inc = Incumbent(1.0)
        assert acq_value(AcquisitionSpec("PI", xi=0.5), Posterior(1.5, 0.3), inc) == pytest.approx(0.5)
        assert acq_value(AcquisitionSpec("EI", xi=2.0), Posterior(1.0, 0.0), inc) == 0.0

    def test_invalid_spec(self):
        with pytest.raises(ConfigurationError):
            AcquisitionSpec("KG")
        with pytest.raises(ConfigurationError):
            AcquisitionSpec("UCB", beta=-1.0)
        with pytest.raises(ConfigurationError):
            AcquisitionSpec("EI", xi=-0.1)


class TestMonteCarloOracle:
    def test_ei_pi_match_simulation(self):
        rng = np.random.default_rng(42)
        for i in range(10):
            mu = float(rng.normal(0, 1))
            sigma = float(rng.uniform(0.05, 2.0))
            y_plus = float(rng.normal(0, 1))
            ei_mc, ei_se, pi_mc, pi_se = mc_improvement(mu, sigma, y_plus, seed=i)
            ei = acq_value(AcquisitionSpec("EI"), Posterior(mu, sigma), Incumbent(y_plus))
            pi = acq_value(AcquisitionSpec("PI"), Posterior(mu, sigma), Incumbent(y_plus))
            assert abs(ei - ei_mc) <= 3 * ei_se
            assert abs(pi - pi_mc) <= 3 * pi_se


class TestLCB:
    def test_xi_zero_is_mean(self):
        assert lcb_value(Posterior(0.7, 0.4), 0.0) == pytest.approx(0.7)

    def test_direct_formula(self):
        assert lcb_value(Posterior(0.4, 0.2), 1.0) == pytest.approx(0.2)

    @given(
        mu=st.floats(min_value=-10, max_value=10, **finite),
        sigma=st.floats(min_value=0, max_value=5, **finite),
        xi=st.floats(min_value=0, max_value=5, **finite),
    )
    @settings(max_examples=100, deadline=None)
    def test_sign_symmetry_with_ucb(self, mu, sigma, xi):
        ucb = acq_value(AcquisitionSpec("UCB", beta=xi), Posterior(-mu, sigma), Incumbent(0.0))
        assert lcb_value(Posterior(mu, sigma), xi) == pytest.approx(-ucb, abs=1e-12)


class TestProperties:
    @given(
        mu=st.floats(min_value=-10, max_value=10, **finite),
        sigma=st.floats(min_value=0, max_value=5, **finite),
        y_plus=st.floats(min_value=-10, max_value=10, **finite),
        xi=st.floats(min_value=0, max_value=2, **finite),
    )
    @settings(max_examples=200, deadline=None)
    def test_ranges(self, mu, sigma, y_plus, xi):
        post, inc = Posterior(mu, sigma), Incumbent(y_plus)
        assert acq_value(AcquisitionSpec("EI", xi=xi), post, inc) >= 0.0
        assert 0.0 <= acq_value(AcquisitionSpec("PI", xi=xi), post, inc) <= 1.0

    def test_ucb_monotone_in_sigma(self):
        sigmas = np.linspace(0, 3, 30)
        mus = np.full_like(sigmas, 0.5)
        vals = acq_values(AcquisitionSpec("UCB", beta=0.7), mus, sigmas, 0.0)
        assert np.all(np.diff(vals) > 0)
        flat = acq_values(AcquisitionSpec("UCB", beta=0.0), mus, sigmas, 0.0)
        assert np.all(flat == 0.5)

    def test_ucb_beta0_argmax_is_mean_argmax(self):
        rng = np.random.default_rng(3)
        mus = rng.normal(size=1000)
        sigmas = rng.uniform(0, 2, size=1000)
        vals = acq_values(AcquisitionSpec("UCB", beta=0.0), mus, sigmas, 0.0)
        assert int(np.argmax(vals)) == int(np.argmax(mus))

    def test_ei_pi_nondecreasing_in_mu(self):
        mus = np.linspace(-3, 3, 100)
        sigmas = np.full_like(mus, 0.4)
        for kind in ("EI", "PI"):
            vals = acq_values(AcquisitionSpec(kind), mus, sigmas, 0.0)
            assert np.all(np.diff(vals) >= -1e-15)

    def test_sigma_to_zero_continuity(self):
        # away from the mu == incumbent boundary the sigma = 0 conventions
        # are the true limits; EI is continuous on the boundary too
        for mu, y_plus in ((1.5, 1.0), (0.5, 1.0)):
            post_eps = Posterior(mu, 1e-12)
            post_zero = Posterior(mu, 0.0)
            inc = Incumbent(y_plus)
            for kind in ("EI", "PI"):
                spec = AcquisitionSpec(kind)
                assert acq_value(spec, post_eps, inc) == pytest.approx(
                    acq_value(spec, post_zero, inc), abs=1e-9
                )
        assert acq_value(AcquisitionSpec("EI"), Posterior(1.0, 1e-12), Incumbent(1.0)) == pytest.approx(
            0.0, abs=1e-9
        )


class TestSerialization:
    def test_round_trip(self):
        for spec in (
            AcquisitionSpec("EI"),
            AcquisitionSpec("PI"),
            AcquisitionSpec("UCB", beta=0.5),
            AcquisitionSpec("UCB", beta=0.0),
            AcquisitionSpec("EI", xi=0.25),
        ):
            assert parse_acquisition(format_acquisition(spec)) == spec

    def test_formats(self):
        assert format_acquisition(AcquisitionSpec("UCB", beta=0.5)) == "UCB(beta=0.5)"
        assert format_acquisition(AcquisitionSpec("EI")) == "EI"

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_acquisition("EI(0.1)")
        with pytest.raises(ParseError):
            parse_acquisition("KG")
