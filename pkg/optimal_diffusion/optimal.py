# -*- coding: utf-8 -*-
"""Fastest-converging reversible diffusion for a prescribed stationary law.

For a density pi with mean m1 and variance s2 = m2 - m1**2, and a budget
sigma_hat_sq_half on the pi-average of the variance function, the optimal
process has

    lambda1 = sigma_hat_sq_half / s2
    mu(x) = lambda1 * (m1 - x)
    sigma**2(x)/2 = lambda1 * N(x) / pi(x),  N(x) = integral_x1^x (m1 - z) pi(z) dz

and its slowest mode phi1 is the standardized identity (x - m1) / s.
"""
from __future__ import division, unicode_literals

import logging
from collections import namedtuple

import numpy as np

from . import conf, numerics
from .distributions import Mixture, Support
from .exceptions import (
    DegenerateDistribution, InputError, NumericalFailure, OutOfSupport
)

logger = logging.getLogger(__name__)

PositivityCheck = namedtuple('PositivityCheck', ['passed', 'minimum'])

ConcavityCheck = namedtuple('ConcavityCheck', ['tau_mix', 'tau_avg'])


class LinearFunction(namedtuple('LinearFunction', ['slope', 'intercept'])):
    __slots__ = ()

    def __call__(self, x):
        return self.slope * x + self.intercept

    @property
    def root(self):
        return -self.intercept / self.slope

    def as_dict(self):
        return {'slope': self.slope, 'intercept': self.intercept}


def _as_output(x, value):
    if np.ndim(x) == 0:
        return float(value)
    return value


class Diffusion(object):
    """dX = mu(X) dt + sqrt(2 V(X)) dW, with V the variance function sigma**2/2.

    ``flux`` is pi*V; supplying it avoids the 0/0 of V at the support ends.
    """

    def __init__(self, drift, variance_fn, source=None, support=None, flux=None):
        if source is None and support is None:
            raise InputError('A diffusion needs a stationary density or a support')
        self.drift = drift
        self.variance_fn = variance_fn
        self.source = source
        self.support = support if support is not None else source.support
        self._flux = flux

    def pdf(self, x):
        return self.source.pdf(x)

    def variance_at(self, x):
        return self.variance_fn(x)

    def flux(self, x):
        """pi(x) * sigma**2(x) / 2."""
        if self._flux is not None:
            return self._flux(x)
        return self.variance_fn(x) * self.source.pdf(x)

    def bounds(self, cutoff=None):
        if self.support.is_compact:
            return self.support.lower, self.support.upper
        if self.source is None:
            raise InputError('An infinite support needs a stationary density to truncate')
        return self.source.bounds(cutoff=cutoff)


class OptimalProcess(Diffusion):

    def __init__(self, source, sigma_hat_sq_half):
        stats = source.moments()
        self.sigma_hat_sq_half = float(sigma_hat_sq_half)
        self.m1 = stats.m1
        self.m2 = stats.m2
        self.lambda1 = self.sigma_hat_sq_half / stats.variance
        self.tau = 1.0 / self.lambda1
        self.phi1 = phi1_from_moments(stats.m1, stats.m2)
        drift = LinearFunction(-self.lambda1, self.lambda1 * stats.m1)
        super(OptimalProcess, self).__init__(
            drift, self.variance_at, source=source, flux=self._flux_at)

    @property
    def nu(self):
        return self.phi1.slope ** 2

    def __repr__(self):
        return 'OptimalProcess(%r, lambda1=%r)' % (self.source, self.lambda1)

    def _clamp(self, x):
        eps = conf.get('ENDPOINT_EPS')
        return np.clip(x, self.support.lower + eps, self.support.upper - eps)

    def _flux_at(self, x):
        return self.lambda1 * self.source.centered_partial_mean(x)

    def variance_at(self, x):
        """sigma**2(x)/2; endpoint values are taken ENDPOINT_EPS inside the support."""
        arr = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise OutOfSupport('variance_at needs finite abscissae')
        self.source._check(arr)
        arr = self._clamp(arr)
        density = np.atleast_1d(self.source.pdf(arr))
        numerator = np.atleast_1d(self.source.centered_partial_mean(arr))
        if np.any(density <= 0):
            raise NumericalFailure('Stationary density underflows at %r' % (
                arr.ravel()[density.ravel() <= 0][:3].tolist(),))
        value = self.lambda1 * numerator / density
        return _as_output(x, value.reshape(np.shape(x)))

    def as_dict(self):
        return {
            'source': self.source.to_dict(),
            'sigma_hat_sq_half': self.sigma_hat_sq_half,
            'm1': self.m1,
            'm2': self.m2,
            'lambda1': self.lambda1,
            'tau': self.tau,
            'nu': self.nu,
            'phi1': self.phi1.as_dict(),
            'drift': self.drift.as_dict(),
        }


def phi1_from_moments(m1, m2):
    """Slowest eigenfunction (x - m1)/sqrt(m2 - m1**2) as (slope, intercept)."""
    variance = m2 - m1 ** 2
    if not variance > 0:
        raise DegenerateDistribution('m2 - m1**2 = %r is not positive' % variance)
    slope = 1.0 / np.sqrt(variance)
    return LinearFunction(slope, -m1 * slope)


def synthesize(spec, sigma_hat_sq_half):
    if not sigma_hat_sq_half > 0:
        raise InputError('sigma_hat_sq_half must be positive, got %r' % sigma_hat_sq_half)
    proc = OptimalProcess(spec, sigma_hat_sq_half)
    logger.info('Synthesized %r: lambda1=%.12g tau=%.12g', spec, proc.lambda1, proc.tau)
    return proc


def variance_at(proc, x):
    return proc.variance_at(x)


def variance_by_quadrature(proc, x):
    """sigma**2(x)/2 straight from (m1-x)Pi(x) + integral of Pi, by quadrature.

    Above the mean the mirrored form (x-m1)S(x) + integral_x^x2 S is used,
    S = 1 - Pi, which keeps the tail values free of cancellation.
    """
    spec = proc.source
    points = np.atleast_1d(np.asarray(x, dtype=float))
    spec._check(points)
    points = proc._clamp(points)
    lo, hi = spec.support.lower, spec.support.upper
    out = np.empty_like(points)
    for i, z in enumerate(points):
        if z <= proc.m1:
            mass = spec.cdf(z)
            inner = numerics.integrate(spec.cdf, lo, z, tol=1e-300, rtol=1e-11).value
            numerator = (proc.m1 - z) * mass + inner
        else:
            mass = spec.sf(z)
            inner = numerics.integrate(spec.sf, z, hi, tol=1e-300, rtol=1e-11).value
            numerator = (z - proc.m1) * mass + inner
        out[i] = proc.lambda1 * numerator / spec.pdf(z)
    return _as_output(x, out.reshape(np.shape(x)))


def verify_detailed_balance(proc, grid, h=1e-4):
    """max |mu(x) - (1/pi) d/dx(pi sigma**2/2)| over the grid, by central differences."""
    x = grid.points
    slope = numerics.central_difference(proc.flux, x, h)
    residual = np.abs(proc.drift(x) - slope / proc.pdf(x))
    logger.debug('Detailed-balance residual %.3g at h=%g', np.max(residual), h)
    return float(np.max(residual))


def _interior_points(proc, n_points):
    lo, hi = proc.bounds()
    return numerics.chebyshev_points(lo, hi, n_points)


def check_variance_positivity(proc, n_points=64):
    if n_points < 10:
        raise InputError('Positivity check needs at least 10 points')
    values = proc.variance_at(_interior_points(proc, n_points))
    minimum = float(np.min(values))
    return PositivityCheck(minimum > 0, minimum)


def check_variance_mean(proc):
    """pi-average of sigma**2/2, integrated as the flux pi*V."""
    spec = proc.source
    return numerics.integrate(
        proc.flux, spec.support.lower, spec.support.upper).value


def mixture_tau_concavity(specs, weights, sigma_hat_sq_half):
    mixed = synthesize(Mixture(specs, weights), sigma_hat_sq_half)
    tau_avg = sum(w * synthesize(spec, sigma_hat_sq_half).tau
                  for w, spec in zip(weights, specs))
    return ConcavityCheck(mixed.tau, float(tau_avg))


def reversible_diffusion(spec, variance_fn, flux=None, h=1e-6):
    """The reversible diffusion with stationary law ``spec`` and the given
    variance function; the drift follows from detailed balance."""
    if flux is None:
        flux = lambda x: variance_fn(x) * spec.pdf(x)
    lo, hi = spec.support.lower, spec.support.upper

    def drift(x):
        x = np.asarray(x, dtype=float)
        left = np.clip(x - h, lo, hi)
        right = np.clip(x + h, lo, hi)
        return (flux(right) - flux(left)) / ((right - left) * spec.pdf(x))

    return Diffusion(drift, variance_fn, source=spec, flux=flux)


def perturb_variance(proc, amplitude=0.5, wavenumber=1, phase=0.0):
    """Multiply sigma**2/2 by 1 + amplitude*sin(2 pi k (x - lo)/L + phase) over
    the (truncated) support [lo, lo + L], then rescale so the pi-average is
    unchanged."""
    if not abs(amplitude) < 1:
        raise InputError('Perturbation amplitude must lie in (-1, 1)')
    lo, hi = proc.bounds()
    width = hi - lo

    def shape(x):
        return 1.0 + amplitude * np.sin(2 * np.pi * wavenumber * (x - lo) / width + phase)

    spec = proc.source
    mass = numerics.integrate(
        lambda x: proc.flux(x) * shape(x), spec.support.lower, spec.support.upper).value
    scale = proc.sigma_hat_sq_half / mass
    variance_fn = lambda x: scale * proc.variance_at(x) * shape(x)
    flux = lambda x: scale * proc.flux(x) * shape(x)
    out = reversible_diffusion(spec, variance_fn, flux=flux)
    out.sigma_hat_sq_half = proc.sigma_hat_sq_half
    logger.debug('Perturbed %r with amplitude=%g k=%g phase=%g', proc, amplitude, wavenumber, phase)
    return out


def free_diffusion(drift, variance_fn, lower=-np.inf, upper=np.inf):
    """A diffusion given by its coefficients alone, without a stationary law."""
    return Diffusion(drift, variance_fn, support=Support(lower, upper))
