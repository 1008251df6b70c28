import numpy as np
import pytest
from scipy import stats

from hypersem.concentration import annulus_mc, property2_mc, slab_bound, sphere_slab_mc
from hypersem.errors import ValidationError

TRIALS = 200_000  # unit-test scale; the acceptance suite runs the full counts


def mc_sigma(p, n):
    return np.sqrt(max(p * (1 - p), 1e-12) / n)


class TestProperty2:
    def test_against_gaussian_cdf_oracle(self):
        report = property2_mc(512, 2.0, TRIALS, seed=0)
        threshold = 2 * 2 * np.sqrt(512 / 510)
        exact = 1.0 - 2.0 * stats.norm.sf(threshold)
        assert abs(report.empirical_probability - exact) <= 4 * mc_sigma(exact, TRIALS)
        assert report.bound_value == pytest.approx(1 - np.exp(-2.0), abs=1e-12)
        assert report.passed

    def test_alpha_one_bound_is_trivial(self):
        report = property2_mc(512, 1.0, 10_000, seed=1)
        assert report.bound_value == pytest.approx(1 - 2 * np.exp(-0.5), abs=1e-12)
        assert report.bound_value < 0
        assert report.passed

    def test_alpha_three(self):
        report = property2_mc(512, 3.0, TRIALS, seed=2)
        assert report.passed
        assert report.empirical_probability >= report.bound_value

    def test_deterministic_given_seed(self):
        a = property2_mc(64, 2.0, 50_000, seed=7)
        b = property2_mc(64, 2.0, 50_000, seed=7)
        assert a == b

    def test_chunking_invariant(self):
        # totals that do and do not divide the chunk size agree per chunk
        small = property2_mc(16, 2.0, 10_000, seed=3)
        assert small.trials == 10_000
        assert 0.0 <= small.empirical_probability <= 1.0

    def test_validates_inputs(self):
        with pytest.raises(ValidationError):
            property2_mc(3, 2.0, 100_000)
        with pytest.raises(ValidationError):
            property2_mc(512, 0.5, 100_000)
        with pytest.raises(ValidationError):
            property2_mc(512, 2.0, 500)  # too few trials for a meaningful report


class TestSphereSlab:
    def test_against_beta_marginal_oracle(self):
        # z1^2 on the unit sphere follows Beta(1/2, (d-1)/2)
        d, alpha = 512, 2.0
        report = sphere_slab_mc(d, alpha, TRIALS, seed=0)
        t = alpha / np.sqrt(d - 2)
        exact = stats.beta.cdf(t**2, 0.5, (d - 1) / 2)
        assert abs(report.empirical_probability - exact) <= 4 * mc_sigma(exact, TRIALS)
        assert report.empirical_probability >= slab_bound(alpha)
        assert report.passed

    def test_expected_value_at_paper_scale(self):
        report = sphere_slab_mc(512, 2.0, TRIALS, seed=1)
        assert report.empirical_probability == pytest.approx(0.954, abs=0.01)
        assert report.bound_value == pytest.approx(0.8647, abs=1e-3)

    def test_trivial_bound_small_d(self):
        report = sphere_slab_mc(4, 1.0, 20_000, seed=2)
        assert report.bound_value < 0
        assert report.passed

    def test_symmetry(self):
        # P(z1 > t) and P(z1 < -t) agree within Monte Carlo noise
        d, trials = 64, 100_000
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((5, 0))))
        X = rng.standard_normal((trials, d))
        z1 = X[:, 0] / np.linalg.norm(X, axis=1)
        t = 2.0 / np.sqrt(d - 2)
        p_hi = np.mean(z1 > t)
        p_lo = np.mean(z1 < -t)
        assert abs(p_hi - p_lo) <= 3 * mc_sigma(p_hi, trials) + 3 * mc_sigma(p_lo, trials)

    def test_threshold_above_one_rejected(self):
        with pytest.raises(ValidationError):
            sphere_slab_mc(4, 1.5, 100_000)


class TestAnnulus:
    def test_against_chi_cdf_oracle(self):
        d, beta = 512, 5.0
        report = annulus_mc(d, beta, TRIALS, seed=0)
        rt = np.sqrt(d)
        exact = stats.chi.cdf(rt + beta, d) - stats.chi.cdf(rt - beta, d)
        assert abs(report.empirical_probability - exact) <= 3 * mc_sigma(exact, TRIALS) + 1e-9
        assert report.extra["outside_mass_at_beta"] < 1e-4
        assert report.passed

    def test_fitted_decay_constant_positive(self):
        report = annulus_mc(512, 3.0, TRIALS, seed=1)
        assert report.extra["c_hat"] > 0
        masses = [report.extra["outside_mass"][str(b)] for b in (1.0, 2.0, 3.0, 4.0)]
        assert all(a >= b for a, b in zip(masses, masses[1:]))

    def test_nested_intervals(self):
        wide = annulus_mc(64, 8.0, 50_000, seed=2)
        narrow = annulus_mc(64, 2.0, 50_000, seed=2)
        assert wide.empirical_probability >= narrow.empirical_probability

    def test_beta_validation(self):
        with pytest.raises(ValidationError):
            annulus_mc(64, 0.0, 100_000)
        with pytest.raises(ValidationError):
            annulus_mc(64, 9.0, 100_000)  # beta > sqrt(64)


def test_reports_serialize():
    report = property2_mc(16, 2.0, 10_000, seed=0)
    data = report.to_dict()
    assert data["kind"] == "property2"
    assert set(data) >= {"d", "trials", "empirical_probability", "bound_value", "passed"}
