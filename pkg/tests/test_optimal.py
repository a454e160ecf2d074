# -*- coding: utf-8 -*-
from __future__ import division, unicode_literals

import numpy as np
from django.test import SimpleTestCase

from optimal_diffusion import numerics, optimal, pearson
from optimal_diffusion.distributions import (
    Beta, Exponential, Gamma, Hyperexponential, Jacobi, Mixture, Normal, Tabulated
)
from optimal_diffusion.exceptions import (
    DegenerateDistribution, InputError, OutOfSupport, SupportMismatch
)


def random_tabulated(rng, lower=0.0, upper=1.0, n=21):
    """Piecewise-smooth positive density on [lower, upper]."""
    grid = np.linspace(lower, upper, n)
    u = (grid - lower) / (upper - lower)
    values = 0.2 + rng.random(n) + np.sin(np.pi * rng.integers(1, 4) * u) ** 2
    return Tabulated(grid, values)


class SynthesizeTest(SimpleTestCase):

    def test_beta(self):
        """synthesize() recovers the x(1-x) variance of the Beta(1,1) row"""
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        self.assertAlmostEqual(proc.lambda1, 4.0, delta=1e-12)
        self.assertAlmostEqual(proc.tau, 0.25, delta=1e-12)
        x = np.linspace(0, 1, 52)[1:-1]
        np.testing.assert_allclose(proc.variance_at(x), x * (1 - x), atol=1e-8)
        self.assertAlmostEqual(optimal.variance_at(proc, 0.5), 0.25, delta=1e-12)

    def test_gamma(self):
        proc = optimal.synthesize(Gamma(0), 1.0)
        self.assertAlmostEqual(proc.lambda1, 1.0, delta=1e-12)
        x = np.array([0.1, 1.0, 5.0, 20.0])
        np.testing.assert_allclose(proc.drift(x), 1 - x, atol=1e-12)
        np.testing.assert_allclose(proc.variance_at(x), x, rtol=1e-9)

    def test_normal(self):
        proc = optimal.synthesize(Normal(0, 1), 1.0)
        self.assertAlmostEqual(proc.lambda1, 1.0)
        x = np.linspace(-5, 5, 11)
        np.testing.assert_allclose(proc.drift(x), -x, atol=1e-12)
        np.testing.assert_allclose(proc.variance_at(x), 1.0, rtol=1e-9)
        self.assertEqual(proc.drift.root, 0.0)

    def test_hyperexponential(self):
        proc = optimal.synthesize(Hyperexponential(0.5, 0.5, 1, 2), 0.6875)
        self.assertAlmostEqual(proc.lambda1, 1.0, delta=1e-12)

    def test_jacobi_at_zero(self):
        for alpha, beta in ((1, 1), (0.5, 2)):
            row = pearson.row('Jacobi', {'alpha': alpha, 'beta': beta})
            proc = optimal.synthesize(Jacobi(alpha, beta), row.sigma_hat_sq_half)
            self.assertAlmostEqual(proc.variance_at(0.0), 1.0, delta=1e-9)

    def test_rate_formula(self):
        """lambda1 * (m2 - m1**2) reproduces the average variance"""
        for spec, sigma in ((Beta(2, 0.5), 0.3), (Gamma(1.5), 2.0), (Normal(1, 3), 0.7)):
            proc = optimal.synthesize(spec, sigma)
            self.assertAlmostEqual(proc.lambda1 * (proc.m2 - proc.m1 ** 2), sigma, delta=1e-12)

    def test_scaling_law(self):
        spec = Beta(1, 2)
        one = optimal.synthesize(spec, 0.2)
        three = optimal.synthesize(spec, 0.6)
        self.assertAlmostEqual(three.lambda1, 3 * one.lambda1, delta=1e-12)
        x = np.linspace(0.05, 0.95, 10)
        np.testing.assert_allclose(three.variance_at(x), 3 * one.variance_at(x), rtol=1e-12)

    def test_translation(self):
        """Shifting a density keeps lambda1 and moves the drift's zero by the shift"""
        rng = np.random.default_rng(8)
        spec = random_tabulated(rng)
        shifted = random_tabulated(np.random.default_rng(8), 3.0, 4.0)
        proc = optimal.synthesize(spec, 0.37)
        moved = optimal.synthesize(shifted, 0.37)
        self.assertAlmostEqual(moved.lambda1, proc.lambda1, delta=1e-9)
        self.assertAlmostEqual(moved.drift.root, proc.drift.root + 3.0, delta=1e-9)
        self.assertAlmostEqual(proc.drift.root, proc.m1, delta=1e-12)

    def test_phi1_normalized(self):
        """phi1 is centered and has unit second moment under pi"""
        for spec in (Beta(1, 1), Gamma(2), Normal(3, 2)):
            proc = optimal.synthesize(spec, 1.0)
            lo, hi = spec.support.lower, spec.support.upper
            mean = numerics.integrate(lambda x: spec.pdf(x) * proc.phi1(x), lo, hi).value
            square = numerics.integrate(lambda x: spec.pdf(x) * proc.phi1(x) ** 2, lo, hi).value
            self.assertAlmostEqual(mean, 0.0, delta=1e-8)
            self.assertAlmostEqual(square, 1.0, delta=1e-8)
            self.assertAlmostEqual(proc.nu, 1 / (proc.m2 - proc.m1 ** 2))

    def test_drift_is_scaled_phi1(self):
        proc = optimal.synthesize(Gamma(1), 2.0)
        x = np.linspace(0, 10, 11)
        np.testing.assert_allclose(
            proc.drift(x), -proc.lambda1 / np.sqrt(proc.nu) * proc.phi1(x), atol=1e-12)

    def test_zero_mean_drift(self):
        for spec in (Beta(1, 2), Gamma(0.5), Hyperexponential(0.3, 0.7, 1, 4)):
            proc = optimal.synthesize(spec, 1.0)
            value = numerics.integrate(
                lambda x: proc.drift(x) * spec.pdf(x), spec.support.lower, spec.support.upper,
                singular=spec.singular).value
            self.assertAlmostEqual(value, 0.0, delta=1e-8)

    def test_boundary_flux(self):
        """pi * sigma**2/2 vanishes approaching both support ends"""
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        for x in (1e-4, 1 - 1e-4):
            self.assertLess(proc.flux(x), 1e-7)
        self.assertLess(proc.flux(1e-6), 1e-11)
        gamma = optimal.synthesize(Gamma(0), 1.0)
        self.assertLess(gamma.flux(1e-8), 1e-7)
        self.assertLess(gamma.flux(60.0), 1e-24)

    def test_errors(self):
        with self.assertRaises(InputError):
            optimal.synthesize(Beta(1, 1), 0.0)
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        with self.assertRaises(OutOfSupport):
            proc.variance_at(1.5)
        with self.assertRaises(OutOfSupport):
            optimal.synthesize(Normal(0, 1), 1.0).variance_at(np.inf)

    def test_endpoint_values(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        self.assertTrue(0 < proc.variance_at(0.0) < 1e-7)
        self.assertTrue(0 < proc.variance_at(1.0) < 1e-7)

    def test_as_dict(self):
        data = optimal.synthesize(Beta(1, 1), 0.2).as_dict()
        self.assertAlmostEqual(data['lambda1'], 4.0)
        self.assertEqual(data['source']['kind'], 'Beta')
        self.assertAlmostEqual(data['drift']['intercept'], 2.0)


class VarianceByQuadratureTest(SimpleTestCase):

    def test_matches_closed_form(self):
        """variance_by_quadrature() agrees with the closed-form partial means"""
        for spec, sigma in ((Beta(1, 2), 0.2), (Gamma(1), 2.0), (Normal(0, 1), 1.0)):
            proc = optimal.synthesize(spec, sigma)
            x = pearson.check_grid(spec, 10, spread=4.0)
            np.testing.assert_allclose(
                optimal.variance_by_quadrature(proc, x), proc.variance_at(x), rtol=1e-8, atol=1e-10)

    def test_hyperexponential_dual_path(self):
        proc = optimal.synthesize(Hyperexponential(0.5, 0.5, 1, 2), 0.6875)
        closed = pearson.hyperexponential(0.5, 0.5, 1, 2).variance_fn(0.6875)
        self.assertAlmostEqual(closed(0.75), optimal.variance_by_quadrature(proc, 0.75), delta=1e-8)


class DetailedBalanceTest(SimpleTestCase):

    def test_ou(self):
        proc = optimal.synthesize(Normal(0, 1), 1.0)
        grid = numerics.Grid.uniform(-4, 4, 81)
        self.assertLessEqual(optimal.verify_detailed_balance(proc, grid, h=1e-4), 1e-6)

    def test_cir(self):
        proc = optimal.synthesize(Gamma(0), 1.0)
        grid = numerics.Grid.uniform(0.5, 10, 39)
        self.assertLessEqual(optimal.verify_detailed_balance(proc, grid, h=1e-4), 1e-6)

    def test_second_order(self):
        """The detailed-balance residual is O(h**2)"""
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.uniform(0.1, 0.9, 9)
        coarse = optimal.verify_detailed_balance(proc, grid, h=2e-2)
        fine = optimal.verify_detailed_balance(proc, grid, h=1e-2)
        self.assertTrue(3.5 < coarse / fine < 4.5, coarse / fine)

    def test_corrupted_drift(self):
        proc = optimal.synthesize(Normal(0, 1), 1.0)
        corrupted = optimal.Diffusion(
            lambda x: proc.drift(x) + 0.1, proc.variance_at, source=proc.source, flux=proc.flux)
        grid = numerics.Grid.uniform(-3, 3, 31)
        self.assertGreaterEqual(optimal.verify_detailed_balance(corrupted, grid), 0.099)


class VariancePositivityTest(SimpleTestCase):

    def test_positivity_catalog(self):
        """check_variance_positivity() passes for every catalog row"""
        for name in pearson.ROW_NAMES:
            row = pearson.row(name)
            proc = optimal.synthesize(row.distribution(), row.sigma_hat_sq_half)
            check = optimal.check_variance_positivity(proc)
            self.assertTrue(check.passed, name)
            self.assertGreater(check.minimum, 0)

    def test_positivity_bimodal(self):
        spec = Mixture([Beta(8, 1), Beta(1, 8)], [0.5, 0.5])
        check = optimal.check_variance_positivity(optimal.synthesize(spec, 0.1), n_points=100)
        self.assertTrue(check.passed)

    def test_positivity_needs_points(self):
        with self.assertRaises(InputError):
            optimal.check_variance_positivity(optimal.synthesize(Beta(1, 1), 0.2), n_points=5)

    def test_mean(self):
        self.assertAlmostEqual(
            optimal.check_variance_mean(optimal.synthesize(Beta(1, 1), 0.2)), 0.2, delta=1e-8)
        self.assertAlmostEqual(
            optimal.check_variance_mean(optimal.synthesize(Normal(0, 1), 1.0)), 1.0, delta=1e-8)

    def test_random_densities(self):
        """Positive variance and exact average for 50 random tabulated densities"""
        rng = np.random.default_rng(1234)
        for _ in range(50):
            proc = optimal.synthesize(random_tabulated(rng), 0.37)
            self.assertTrue(optimal.check_variance_positivity(proc).passed)
            self.assertAlmostEqual(optimal.check_variance_mean(proc), 0.37, delta=1e-6)


class ConcavityTest(SimpleTestCase):

    def test_single_spec(self):
        check = optimal.mixture_tau_concavity([Beta(1, 2)], [1.0], 0.5)
        self.assertAlmostEqual(check.tau_mix, check.tau_avg, delta=1e-12)

    def test_two_exponentials(self):
        check = optimal.mixture_tau_concavity([Exponential(1), Exponential(2)], [0.5, 0.5], 0.5)
        self.assertAlmostEqual(check.tau_mix, 1.375, delta=1e-10)
        self.assertAlmostEqual(check.tau_avg, 1.25, delta=1e-10)

    def test_equal_means(self):
        check = optimal.mixture_tau_concavity([Beta(1, 1), Beta(2, 2)], [0.4, 0.6], 0.3)
        self.assertAlmostEqual(check.tau_mix, check.tau_avg, delta=1e-10)

    def test_random_mixtures(self):
        """tau of a mixture is at least the weighted average of the taus"""
        rng = np.random.default_rng(77)
        sigma = 0.5
        for _ in range(30):
            a = rng.uniform(0, 4, size=4)
            p = rng.uniform(0.1, 0.9)
            specs = [Beta(a[0], a[1]), Beta(a[2], a[3])]
            check = optimal.mixture_tau_concavity(specs, [p, 1 - p], sigma)
            self.assertGreaterEqual(check.tau_mix, check.tau_avg - 1e-10)
            means = [s.moments().m1 for s in specs]
            gap = p * (1 - p) * (means[0] - means[1]) ** 2 / sigma
            self.assertAlmostEqual(check.tau_mix - check.tau_avg, gap, delta=1e-9)

    def test_support_mismatch(self):
        with self.assertRaises(SupportMismatch):
            optimal.mixture_tau_concavity([Beta(1, 1), Gamma(1)], [0.5, 0.5], 1.0)


class Phi1FromMomentsTest(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(tuple(optimal.phi1_from_moments(0.0, 1.0)), (1.0, 0.0))
        phi = optimal.phi1_from_moments(0.5, 0.3)
        self.assertAlmostEqual(phi.slope, 1 / np.sqrt(0.05))
        self.assertAlmostEqual(phi.intercept, -0.5 / np.sqrt(0.05))

    def test_normalization_equations(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            m1 = rng.normal()
            m2 = m1 ** 2 + rng.uniform(0.1, 5)
            phi = optimal.phi1_from_moments(m1, m2)
            self.assertAlmostEqual(phi.slope * m1 + phi.intercept, 0.0, delta=1e-12)
            self.assertAlmostEqual(
                phi.slope ** 2 * m2 + 2 * phi.intercept * phi.slope * m1 + phi.intercept ** 2,
                1.0, delta=1e-12)

    def test_degenerate(self):
        with self.assertRaises(DegenerateDistribution):
            optimal.phi1_from_moments(1.0, 0.5)


class ComparisonProcessTest(SimpleTestCase):

    def test_perturbation_keeps_average(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        for phase in (0.0, 1.0, 2.5):
            other = optimal.perturb_variance(proc, amplitude=0.5, wavenumber=2, phase=phase)
            average = numerics.integrate(other.flux, 0, 1).value
            self.assertAlmostEqual(average, 0.2, delta=1e-9)
            self.assertEqual(other.sigma_hat_sq_half, 0.2)

    def test_reversible_drift(self):
        """reversible_diffusion() recovers the optimal drift from its variance"""
        proc = optimal.synthesize(Beta(1, 2), 0.2)
        other = optimal.reversible_diffusion(proc.source, proc.variance_at, flux=proc.flux)
        x = np.linspace(0.1, 0.9, 9)
        np.testing.assert_allclose(other.drift(x), proc.drift(x), atol=1e-5)

    def test_bad_amplitude(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        with self.assertRaises(InputError):
            optimal.perturb_variance(proc, amplitude=1.0)

    def test_free_diffusion(self):
        proc = optimal.free_diffusion(lambda x: -x, lambda x: np.ones_like(x))
        self.assertFalse(proc.support.is_compact)
        with self.assertRaises(InputError):
            proc.bounds()
