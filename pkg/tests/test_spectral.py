# -*- coding: utf-8 -*-
from __future__ import division, unicode_literals

from io import StringIO

import numpy as np
from django.test import SimpleTestCase
from mock import patch
from scipy import linalg

from optimal_diffusion import numerics, optimal, pearson, spectral
from optimal_diffusion.distributions import Beta, Gamma, Jacobi, Normal
from optimal_diffusion.exceptions import (
    GridTooCoarse, InputError, InsufficientDecay, NumericalFailure, UnstableStep,
    ZeroDenominator
)


def beta_spectrum(n, k=4):
    proc = optimal.synthesize(Beta(1, 1), 0.2)
    generator = spectral.discretize_generator(proc, spectral.default_grid(proc, n))
    return proc, spectral.spectrum(generator, k)


class DiscretizeTest(SimpleTestCase):

    def test_neumann_laplacian(self):
        """Constant variance on [0, 1] gives s*(n pi)**2"""
        s = 0.3
        proc = optimal.reversible_diffusion(Beta(0, 0), lambda x: s * np.ones_like(x))
        generator = spectral.discretize_generator(proc, numerics.Grid.cell_centers(0, 1, 200))
        result = spectral.spectrum(generator, 4)
        self.assertAlmostEqual(result.eigenvalues[0], 0.0, delta=1e-9)
        for n in (1, 2, 3):
            expected = s * (n * np.pi) ** 2
            self.assertAlmostEqual(result.eigenvalues[n], expected, delta=1e-3 * expected)

    def test_weights_and_bands(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 60)
        generator = spectral.discretize_generator(proc, grid)
        self.assertEqual(len(generator), 60)
        np.testing.assert_allclose(generator.weights, proc.pdf(grid.points) * grid.spacing)
        # constants are in the kernel of the backward form
        np.testing.assert_allclose(generator.apply_forward(generator.density), 0.0, atol=1e-9)
        with self.assertRaises(ValueError):
            generator.forward_bands()[1, 0] = 1.0

    def test_too_coarse(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        with self.assertRaises(GridTooCoarse):
            spectral.discretize_generator(proc, numerics.Grid.cell_centers(0, 1, 20))

    def test_custom_grid(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        points = np.sort(np.random.default_rng(3).uniform(0.01, 0.99, 80))
        with self.assertRaises(InputError):
            spectral.discretize_generator(proc, numerics.Grid(points))

    def test_bounds(self):
        """Infinite supports are cut at the wider of m1 +- 8s and the tail cutoff"""
        lo, hi = spectral.spectral_bounds(optimal.synthesize(Normal(0, 1), 1.0))
        self.assertEqual((lo, hi), (-8.0, 8.0))
        lo, hi = spectral.spectral_bounds(optimal.synthesize(Gamma(0), 1.0))
        self.assertEqual(lo, 0.0)
        self.assertGreater(hi, 20.0)
        self.assertEqual(spectral.spectral_bounds(optimal.synthesize(Beta(1, 2), 0.1)), (0.0, 1.0))


class SpectrumTest(SimpleTestCase):

    def test_beta(self):
        """The discrete gap of the Beta(1,1) process approaches lambda1 = 4"""
        _, result = beta_spectrum(2000)
        self.assertAlmostEqual(result.eigenvalues[1], 4.0, delta=0.02)
        self.assertAlmostEqual(result.eigenvalues[2], 10.0, delta=0.1)
        self.assertEqual(result.gap, result.eigenvalues[1])

    def test_second_order(self):
        """Halving the spacing divides the eigenvalue error by about four"""
        for spec, budget in ((Beta(1, 1), 0.2), (Jacobi(1, 1), 0.8)):
            proc = optimal.synthesize(spec, budget)
            errors = [abs(spectral.spectral_gap(proc, n) - 4.0) for n in (250, 500, 1000)]
            for coarse, fine in zip(errors, errors[1:]):
                self.assertTrue(3 < coarse / fine < 5, (spec, errors))

    def test_ornstein_uhlenbeck(self):
        proc = optimal.synthesize(Normal(0, 1), 1.0)
        result = spectral.spectrum(
            spectral.discretize_generator(proc, spectral.default_grid(proc, 2000)), 4)
        for n in (1, 2, 3):
            self.assertAlmostEqual(result.eigenvalues[n], float(n), delta=0.01 * n)

    def test_cir(self):
        proc = optimal.synthesize(Gamma(0), 1.0)
        self.assertAlmostEqual(spectral.spectral_gap(proc, 4000), 1.0, delta=0.02)

    def test_catalog_rows(self):
        for name, expected in (('Jacobi', 4.0), ('Gamma', 1.0)):
            row = pearson.row(name)
            proc = optimal.synthesize(row.distribution(), row.sigma_hat_sq_half)
            self.assertAlmostEqual(spectral.spectral_gap(proc, 2000), expected,
                                   delta=0.01 * expected, msg=name)

    def test_invariants(self):
        """lambda0 = 0 with a constant phi0, and the eigenfunctions are pi-orthonormal"""
        proc, result = beta_spectrum(2000)
        self.assertAlmostEqual(result.eigenvalues[0], 0.0, delta=1e-6)
        self.assertTrue(np.all(np.diff(result.eigenvalues) > 0))
        phi0 = result.eigenfunctions[0].values
        self.assertLess(np.ptp(phi0), 1e-6)
        weights = proc.pdf(result.grid.points) * result.grid.spacing
        gram = np.array([[np.sum(weights * a.values * b.values)
                          for b in result.eigenfunctions] for a in result.eigenfunctions])
        np.testing.assert_allclose(gram, np.eye(4), atol=1e-8)

    def test_phi1_is_linear(self):
        proc, result = beta_spectrum(2000)
        x = result.grid.points
        phi1 = result.eigenfunctions[1]
        self.assertGreater(phi1.values[-1], 0)
        np.testing.assert_allclose(phi1.values, (x - proc.m1) * proc.phi1.slope, atol=1e-2)

    def test_k_too_small(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        generator = spectral.discretize_generator(proc, spectral.default_grid(proc, 100))
        with self.assertRaises(InputError):
            spectral.spectrum(generator, 1)
        with self.assertRaises(InputError):
            spectral.spectrum(generator, 101)

    def test_to_csv(self):
        _, result = beta_spectrum(100, 3)
        stream = StringIO()
        result.to_csv(stream)
        lines = stream.getvalue().splitlines()
        self.assertEqual(lines[0], 'n,lambda')
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[2].startswith('1,'))


class RayleighQuotientTest(SimpleTestCase):

    def setUp(self):
        self.proc = optimal.synthesize(Beta(1, 1), 0.2)
        self.grid = spectral.default_grid(self.proc, 2000)
        generator = spectral.discretize_generator(self.proc, self.grid)
        self.lambda1 = spectral.spectrum(generator, 2).gap

    def trial(self, values):
        return numerics.GridFunction(self.grid, values)

    def test_phi1(self):
        q = self.trial(self.proc.phi1(self.grid.points))
        self.assertAlmostEqual(spectral.rayleigh_quotient(self.proc, q), 4.0, delta=0.02)

    def test_bounded_below(self):
        """No trial function beats the spectral gap"""
        x = self.grid.points
        floor = self.lambda1 * (1 - 1e-9)
        self.assertGreaterEqual(spectral.rayleigh_quotient(self.proc, self.trial(x ** 2)), floor)
        rng = np.random.default_rng(31)
        for _ in range(100):
            coeffs = rng.normal(size=5)
            values = np.polynomial.chebyshev.chebval(2 * x - 1, coeffs) + 0.1 * rng.normal(size=x.size)
            quotient = spectral.rayleigh_quotient(self.proc, self.trial(values))
            self.assertGreaterEqual(quotient, floor)

    def test_constant(self):
        with self.assertRaises(ZeroDenominator):
            spectral.rayleigh_quotient(self.proc, self.trial(np.full(len(self.grid), 3.0)))


class ComparisonGapTest(SimpleTestCase):

    def test_perturbed_variances(self):
        """Reshaping sigma**2 at equal average never speeds up relaxation"""
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 400)
        rng = np.random.default_rng(2018)
        for _ in range(20):
            other = optimal.perturb_variance(
                proc, amplitude=rng.uniform(-0.8, 0.8), wavenumber=int(rng.integers(1, 4)),
                phase=rng.uniform(0, 2 * np.pi))
            gap = spectral.spectrum(spectral.discretize_generator(other, grid), 2).gap
            self.assertLessEqual(gap, 4.0 * 1.01)


class EvolveTest(SimpleTestCase):

    def test_stationary_start(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 200)
        start = spectral.EvolutionState.stationary(proc, grid)
        state, log = spectral.evolve_fpe(proc, start, 0.5, 1e-3)
        self.assertLessEqual(log.distances[-1], 1e-8)
        self.assertAlmostEqual(state.mass, 1.0, delta=1e-8)
        self.assertAlmostEqual(state.time, 0.5)
        self.assertEqual(len(log), 501)

    def test_beta_relaxation(self):
        """The L1 distance of the Beta(1,1) process decays at lambda1 = 4"""
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 200)
        start = spectral.EvolutionState.bump(grid, 0.1, 0.03)
        state, log = spectral.evolve_fpe(proc, start, 3.5, 5e-4)
        self.assertAlmostEqual(state.mass, 1.0, delta=1e-8)
        self.assertAlmostEqual(log.fit_rate().rate, 4.0, delta=0.2)

    def test_ornstein_uhlenbeck_relaxation(self):
        proc = optimal.synthesize(Normal(0, 1), 1.0)
        grid = numerics.Grid.cell_centers(-8, 8, 800)
        start = spectral.EvolutionState.bump(grid, 2.0, 0.1)
        _, log = spectral.evolve_fpe(proc, start, 12.0, 1e-3)
        self.assertAlmostEqual(log.fit_rate().rate, 1.0, delta=0.05)

    def test_unstable_step(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 100)
        start = spectral.EvolutionState.bump(grid, 0.5, 0.1)
        with patch('optimal_diffusion.spectral.linalg.solve_banded',
                   side_effect=lambda lu, ab, b: -np.ones_like(b)):
            with self.assertRaises(UnstableStep):
                spectral.evolve_fpe(proc, start, 0.01, 1e-3)

    def test_mass_checked_every_step(self):
        """A step that loses mass stops the evolution at that step"""
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 100)
        start = spectral.EvolutionState.bump(grid, 0.5, 0.1)
        solve = linalg.solve_banded
        calls = []

        def leaky(lu, ab, b):
            calls.append(b)
            x = solve(lu, ab, b)
            return x * (1 - 1e-6) if len(calls) == 10 else x
        with patch('optimal_diffusion.spectral.linalg.solve_banded', side_effect=leaky):
            with self.assertRaises(NumericalFailure) as cm:
                spectral.evolve_fpe(proc, start, 0.05, 1e-3)
        self.assertEqual(len(calls), 10)
        self.assertIn('t=0.01', str(cm.exception))

    def test_mass_conserved(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 200)
        state, _ = spectral.evolve_fpe(proc, spectral.EvolutionState.bump(grid, 0.1, 0.03), 1.0, 1e-3)
        self.assertAlmostEqual(state.mass, 1.0, delta=1e-10)
        self.assertTrue(np.all(state.density.values >= 0))

    def test_bad_input(self):
        proc = optimal.synthesize(Beta(1, 1), 0.2)
        grid = numerics.Grid.cell_centers(0, 1, 100)
        start = spectral.EvolutionState.bump(grid, 0.5, 0.1)
        with self.assertRaises(InputError):
            spectral.evolve_fpe(proc, start, 1.0, 0.0)
        heavy = spectral.EvolutionState(grid, 2 * start.density.values)
        with self.assertRaises(InputError):
            spectral.evolve_fpe(proc, heavy, 1.0, 1e-3)
        with self.assertRaises(InputError):
            spectral.EvolutionState(grid, -start.density.values)
        coarse = numerics.Grid.cell_centers(0, 1, 20)
        with self.assertRaises(GridTooCoarse):
            spectral.evolve_fpe(proc, spectral.EvolutionState.bump(coarse, 0.5, 0.1), 1.0, 1e-3)


class DecayLogTest(SimpleTestCase):

    def test_fit_rate(self):
        log = spectral.DecayLog()
        for t in np.linspace(0, 3, 31):
            log.record(t, np.exp(-2 * t))
        self.assertAlmostEqual(log.fit_rate().rate, 2.0, delta=1e-9)

    def test_insufficient_decay(self):
        log = spectral.DecayLog()
        for t in range(10):
            log.record(t, 1.0)
        with self.assertRaises(InsufficientDecay):
            log.fit_rate()
        with self.assertRaises(InsufficientDecay):
            spectral.DecayLog().fit_rate()

    def test_to_csv(self):
        log = spectral.DecayLog()
        log.record(0, 1.5)
        stream = StringIO()
        log.to_csv(stream)
        self.assertEqual(stream.getvalue().splitlines(), ['t,d', '0,1.5'])
