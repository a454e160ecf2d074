# -*- coding: utf-8 -*-
"""Closed-form catalog of optimal Pearson diffusions.

Each row pairs a stationary law with the linear drift, quadratic variance,
eigenvalues and polynomial eigenfunctions of its optimal process. Where
the published table disagrees with its own density the row carries the
entries that pass quadrature and the row's differential equation; the
disagreeing values stay available in ``PearsonRow.printed``.
"""
from __future__ import division, unicode_literals

import logging
from collections import namedtuple

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

from . import distributions, numerics, optimal
from .exceptions import (
    BeyondDiscreteSpectrum, InputError, OutOfSupport, ParamOutOfRange,
    RowMismatch
)

logger = logging.getLogger(__name__)

LAMBDA_TOL = 1e-10
VARIANCE_TOL = 1e-7
DRIFT_TOL = 1e-10

ROW_NAMES = (
    'Beta', 'Jacobi', 'Gamma', 'OrnsteinUhlenbeck', 'Student',
    'ReciprocalGamma', 'FisherSnedecor',
)

ALIASES = {
    'Hypergeometric': 'Beta',
    'CIR': 'Gamma',
    'Normal': 'OrnsteinUhlenbeck',
    'OU': 'OrnsteinUhlenbeck',
    'StudentCauchy': 'Student',
    'Cauchy': 'Student',
    'InverseGamma': 'ReciprocalGamma',
}

KIND_OF_ROW = {
    'Beta': 'Beta',
    'Jacobi': 'Jacobi',
    'Gamma': 'Gamma',
    'OrnsteinUhlenbeck': 'Normal',
    'Student': 'StudentCauchy',
    'ReciprocalGamma': 'InverseGamma',
    'FisherSnedecor': 'FisherSnedecor',
}

ROWS = dict((kind, name) for name, kind in KIND_OF_ROW.items())

DEFAULT_PARAMS = {
    'Beta': {'alpha': 1.0, 'beta': 2.0},
    'Jacobi': {'alpha': 1.0, 'beta': 1.0},
    'Gamma': {'alpha': 1.0},
    'OrnsteinUhlenbeck': {'x0': 0.0, 'sigma': 1.0},
    'Student': {'alpha': 3.0},
    'ReciprocalGamma': {'alpha': 3.0},
    'FisherSnedecor': {'nu1': 6.0, 'nu2': 10.0},
}


def _hermite(n, u):
    """Probabilists' Hermite polynomial He_n(u) = u**n 2F0(-n/2, (1-n)/2;; -2/u**2),
    summed term by term so u = 0 is harmless."""
    u = np.asarray(u, dtype=float)
    total = np.zeros_like(u)
    for k in range(n // 2 + 1):
        coeff = (special.poch(-n / 2.0, k) * special.poch((1 - n) / 2.0, k)
                 * (-2.0) ** k / special.factorial(k))
        total = total + coeff * u ** (n - 2 * k)
    return total


def _rodrigues_student(n, alpha):
    """(1+x**2)**(alpha+1/2) d^n/dx^n (1+x**2)**(n-alpha-1/2), a polynomial."""
    s = n - alpha - 0.5
    one_plus_x2 = Polynomial([1.0, 0.0, 1.0])
    x = Polynomial([0.0, 1.0])
    poly = Polynomial([1.0])
    for k in range(n):
        poly = poly.deriv() * one_plus_x2 + 2 * (s - k) * x * poly
    return poly


class PearsonRow(object):

    def __init__(self, name, params, drift_coeffs, variance_coeffs, sigma_hat_sq_half,
                 lambda1, n_max_discrete=np.inf, printed=None):
        self.name = name
        self.params = params
        self.drift_coeffs = tuple(float(c) for c in drift_coeffs)
        self.variance_coeffs = tuple(float(c) for c in variance_coeffs)
        self.sigma_hat_sq_half = float(sigma_hat_sq_half)
        self.lambda1 = float(lambda1)
        self.n_max_discrete = n_max_discrete
        self.printed = printed or {}
        self._spec = None

    def __repr__(self):
        return 'PearsonRow(%s, %r)' % (self.name, self.params)

    @property
    def kind(self):
        return KIND_OF_ROW[self.name]

    def distribution(self):
        if self._spec is None:
            self._spec = distributions.build(self.kind, self.params)
        return self._spec

    def drift(self, x):
        a0, a1 = self.drift_coeffs
        return a0 + a1 * np.asarray(x, dtype=float)

    def variance(self, x):
        b0, b1, b2 = self.variance_coeffs
        x = np.asarray(x, dtype=float)
        return b0 + b1 * x + b2 * x * x

    def lambda_n(self, n):
        # Pearson diffusions: lambda_n = n (-a1 - (n-1) b2)
        self._check_n(n)
        return n * (-self.drift_coeffs[1] - (n - 1) * self.variance_coeffs[2])

    def _check_n(self, n):
        if n < 0 or n > self.n_max_discrete:
            raise BeyondDiscreteSpectrum('%s has discrete eigenvalues only for n <= %s' % (
                self.name, self.n_max_discrete))

    def kernel(self, n, x):
        raise NotImplementedError

    def eigenfunction(self, n, x):
        self._check_n(n)
        x = np.asarray(x, dtype=float)
        spec = self.distribution()
        if not np.all(spec.support.contains(x)):
            raise OutOfSupport('%r lies outside the support of %r' % (x, self))
        if n == 0:
            value = np.ones_like(x)
        else:
            value = self.kernel(n, x)
        return float(value) if np.ndim(value) == 0 else value

    def eigenfunction_norm(self, n):
        """sqrt of the integral of pi * phi_n**2, by quadrature."""
        spec = self.distribution()
        sq = numerics.integrate(lambda z: spec.pdf(z) * self.eigenfunction(n, z) ** 2,
                                spec.support.lower, spec.support.upper,
                                singular=spec.singular, rtol=1e-12)
        return np.sqrt(sq.value)


class _BetaRow(PearsonRow):

    def kernel(self, n, x):
        a, b = self.params['alpha'], self.params['beta']
        return numerics.hyp2f1(-n, n + a + b + 1, a + 1, x)


class _JacobiRow(PearsonRow):

    def kernel(self, n, x):
        a, b = self.params['alpha'], self.params['beta']
        return numerics.hyp2f1(-n, n + a + b + 1, a + 1, (1 - x) / 2.0)


class _GammaRow(PearsonRow):

    def kernel(self, n, x):
        return numerics.hyp1f1(-n, self.params['alpha'] + 1, x)


class _OrnsteinUhlenbeckRow(PearsonRow):

    def kernel(self, n, x):
        return _hermite(n, (x - self.params['x0']) / self.params['sigma'])


class _StudentRow(PearsonRow):

    def kernel(self, n, x):
        return _rodrigues_student(n, self.params['alpha'])(x)


class _ReciprocalGammaRow(PearsonRow):

    def kernel(self, n, x):
        return numerics.hyp2f0(-n, n - 2 * self.params['alpha'], -x)


class _FisherSnedecorRow(PearsonRow):

    def kernel(self, n, x):
        n1, n2 = self.params['nu1'], self.params['nu2']
        return numerics.hyp2f1(-n, n - n2 / 2.0, n1 / 2.0, -n1 * x / n2)


def _beta(alpha, beta):
    s = alpha + beta
    return _BetaRow(
        'Beta', {'alpha': alpha, 'beta': beta},
        (alpha + 1, -(s + 2)), (0.0, 1.0, -1.0),
        (alpha + 1) * (beta + 1) / ((s + 3) * (s + 2)), s + 2)


def _jacobi(alpha, beta):
    s = alpha + beta
    return _JacobiRow(
        'Jacobi', {'alpha': alpha, 'beta': beta},
        (beta - alpha, -(s + 2)), (1.0, 0.0, -1.0),
        4 * (alpha + 1) * (beta + 1) / ((s + 3) * (s + 2)), s + 2)


def _gamma(alpha):
    return _GammaRow(
        'Gamma', {'alpha': alpha}, (alpha + 1, -1.0), (0.0, 1.0, 0.0), alpha + 1, 1.0)


def _ornstein_uhlenbeck(x0, sigma):
    return _OrnsteinUhlenbeckRow(
        'OrnsteinUhlenbeck', {'x0': x0, 'sigma': sigma},
        (x0, -1.0), (sigma ** 2, 0.0, 0.0), sigma ** 2, 1.0,
        printed={'hermite_argument': '-sigma**2/(x-x0)**2'})


def _student(alpha):
    return _StudentRow(
        'Student', {'alpha': alpha},
        (0.0, 1 - 2 * alpha), (1.0, 0.0, 1.0),
        (2 * alpha - 1) / (2 * alpha - 2), 2 * alpha - 1,
        n_max_discrete=int(np.floor(alpha)),
        printed={'sigma_hat_sq_half': (alpha - 1) / (alpha - 0.5)})


def _reciprocal_gamma(alpha):
    return _ReciprocalGammaRow(
        'ReciprocalGamma', {'alpha': alpha},
        (1.0, -(2 * alpha - 1)), (0.0, 0.0, 1.0),
        1.0 / ((2 * alpha - 1) * (2 * alpha - 2)), 2 * alpha - 1,
        n_max_discrete=int(np.floor(alpha)),
        printed={
            'variance': distributions.InverseGamma.printed_variance(alpha),
            'drift': (1.0, -(2 * alpha + 1)),
            'sigma_hat_sq_half': (2 * alpha - 1) / (2 * alpha - 2),
        })


def _fisher_snedecor(nu1, nu2):
    return _FisherSnedecorRow(
        'FisherSnedecor', {'nu1': nu1, 'nu2': nu2},
        (nu1 / 2.0, -nu1 * (nu2 - 2) / (2 * nu2)), (0.0, 1.0, nu1 / nu2),
        nu2 * (nu1 + nu2 - 2) / ((nu2 - 2) * (nu2 - 4)), nu1 * (nu2 - 2) / (2 * nu2),
        n_max_discrete=int(np.ceil(nu2 / 4.0)) - 1,
        printed={
            'lambda1': nu1 * (2 / nu2 + 0.5),
            'lambda_n': lambda n: nu1 / (2 * nu2) * n * (6 + nu2 - 2 * n),
            'drift': (nu1 / 2.0 - 1, -(2 * nu1 / nu2 + nu1 / 2.0)),
            'sigma_hat_sq_half': nu2 * (nu2 - 4) / (nu1 + nu2 - 2),
            'eigenfunction_prefactor': lambda n: nu1 * nu2 ** n * 2.0 ** (n - 1),
        })


_BUILDERS = {
    'Beta': _beta,
    'Jacobi': _jacobi,
    'Gamma': _gamma,
    'OrnsteinUhlenbeck': _ornstein_uhlenbeck,
    'Student': _student,
    'ReciprocalGamma': _reciprocal_gamma,
    'FisherSnedecor': _fisher_snedecor,
}


def row_name(name):
    name = ALIASES.get(name, name)
    if name not in _BUILDERS:
        raise InputError("Unknown Pearson row '%s'" % name)
    return name


def row(name, params=None):
    name = row_name(name)
    merged = dict(DEFAULT_PARAMS[name])
    merged.update(params or {})
    try:
        out = _BUILDERS[name](**dict((k, float(v)) for k, v in merged.items()))
    except TypeError as e:
        raise ParamOutOfRange('Bad parameters %r for %s: %s' % (params, name, e))
    # the stationary law enforces the row's parameter domain
    out.distribution()
    return out


def eigenfunction(row, n, x):
    return row.eigenfunction(n, x)


def ordering_flags(row, n_upto=6, printed=False):
    """n with lambda_{n+1} < lambda_n, up to the discrete range."""
    top = min(n_upto, row.n_max_discrete)
    if printed and 'lambda_n' in row.printed:
        lam = row.printed['lambda_n']
    else:
        lam = row.lambda_n
    return [n for n in range(int(top)) if lam(n + 1) < lam(n)]


def ode_residual(row, n, points, h=1e-2):
    """max |V phi'' + mu phi' + lambda_n phi| over the points, by five-point
    differences, relative to max(1, max |phi|)."""
    points = np.asarray(points, dtype=float)
    phi = lambda z: row.kernel(n, z) if n else np.ones_like(z)
    f = [phi(points + j * h) for j in (-2, -1, 0, 1, 2)]
    first = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
    second = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    residual = row.variance(points) * second + row.drift(points) * first + row.lambda_n(n) * f[2]
    return float(np.max(np.abs(residual)) / max(1.0, np.max(np.abs(f[2]))))


def check_grid(spec, n_points=200, spread=6.0):
    """Interior points of the support, limited to m1 +- spread*s on infinite sides."""
    stats = spec.moments()
    s = np.sqrt(stats.variance)
    lo = spec.support.lower if np.isfinite(spec.support.lower) else stats.m1 - spread * s
    hi = spec.support.upper if np.isfinite(spec.support.upper) else stats.m1 + spread * s
    lo = max(lo, spec.support.lower)
    hi = min(hi, spec.support.upper)
    return np.linspace(lo, hi, n_points + 2)[1:-1]


def verify_row_against_theorem1(row, n_points=200):
    spec = row.distribution()
    proc = optimal.synthesize(spec, row.sigma_hat_sq_half)
    x = check_grid(spec, n_points)
    deviations = {
        'lambda1': abs(proc.lambda1 - row.lambda1),
        'variance': float(np.max(np.abs(proc.variance_at(x) - row.variance(x)))),
        'drift': max(abs(proc.drift.slope - row.drift_coeffs[1]),
                     abs(proc.drift.intercept - row.drift_coeffs[0])),
    }
    limits = {'lambda1': LAMBDA_TOL, 'variance': VARIANCE_TOL, 'drift': DRIFT_TOL}
    failed = dict((k, v) for k, v in deviations.items() if not v <= limits[k])
    if failed:
        raise RowMismatch(row.name, failed)
    for key in sorted(row.printed):
        logger.warning('%s: printed %s differs from the density; using the derived value',
                       row.name, key)
    stats = spec.moments()
    return {
        'name': row.name,
        'params': dict(row.params),
        'm1': stats.m1,
        'var': stats.variance,
        'lambda1': proc.lambda1,
        'sigma_hat_sq_half': row.sigma_hat_sq_half,
        'deviations': deviations,
        'verified': True,
    }


CubicExample = namedtuple(
    'CubicExample', ['spec', 'drift', 'variance_fn', 'sigma_hat_sq_half', 'm1', 'm2'])


def cubic_example(alpha, beta, a):
    """Process with cubic variance x(1-x)(1-ax) on [0, 1]."""
    spec = distributions.CubicPearson(alpha, beta, a)
    stats = spec.moments()
    rate = alpha + beta * (1 - a)
    drift = optimal.LinearFunction(-rate, alpha)
    variance_fn = lambda x: x * (1 - x) * (1 - a * x)
    return CubicExample(spec, drift, variance_fn, spec.average_variance(), stats.m1, stats.m2)


class HyperexponentialProcess(object):
    """Optimal process for p1 Exp(eta1) + p2 Exp(eta2)."""

    def __init__(self, p1, p2, eta1, eta2):
        self.spec = distributions.Hyperexponential(p1, p2, eta1, eta2)
        self.p1, self.p2, self.eta1, self.eta2 = p1, p2, eta1, eta2

    def __iter__(self):
        # unpacks as (spec, variance_fn, lambda1); both callables take sigma_hat**2/2
        return iter((self.spec, self.variance_fn, self.lambda1))

    @property
    def variance(self):
        return self.spec.moments().variance

    def lambda1(self, sigma_hat_sq_half):
        return sigma_hat_sq_half / (
            self.p1 / self.eta1 ** 2 + self.p2 / self.eta2 ** 2
            + self.p1 * self.p2 * (1 / self.eta1 - 1 / self.eta2) ** 2)

    def variance_fn(self, sigma_hat_sq_half):
        p1, p2, e1, e2 = self.p1, self.p2, self.eta1, self.eta2
        scale = sigma_hat_sq_half / self.variance

        def fn(x):
            x = np.asarray(x, dtype=float)
            numerator = (p1 * np.exp(-e1 * x) * (x + p2 * (1 / e1 - 1 / e2))
                         + p2 * np.exp(-e2 * x) * (x + p1 * (1 / e2 - 1 / e1)))
            density = p1 * e1 * np.exp(-e1 * x) + p2 * e2 * np.exp(-e2 * x)
            return scale * numerator / density
        return fn


def hyperexponential(p1, p2, eta1, eta2):
    """The process object; it also unpacks as spec, variance_fn, lambda1 =
    hyperexponential(...)."""
    return HyperexponentialProcess(p1, p2, eta1, eta2)
