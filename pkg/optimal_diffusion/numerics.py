# -*- coding: utf-8 -*-
"""Shared numerical kernels.

Adaptive quadrature, symmetric tridiagonal eigenpairs, hypergeometric
series, functions tabulated on grids and the least-squares exponential
fit. Every function here is pure.
"""
from __future__ import division, unicode_literals

import logging
from collections import namedtuple

import numpy as np
from numpy.polynomial import chebyshev
from scipy import integrate as scipy_integrate
from scipy import linalg, stats
from scipy.interpolate import PchipInterpolator

from . import conf
from .exceptions import (
    ConvergenceFailure, GridTooCoarse, InputError, InvalidInterval,
    NonConvergence, NonPositiveValues, PoleAtC, SeriesDivergence
)

logger = logging.getLogger(__name__)

QuadratureResult = namedtuple(
    'QuadratureResult', ['value', 'abs_error_estimate', 'evaluations'])

Eigenpairs = namedtuple('Eigenpairs', ['values', 'vectors'])


class RateEstimate(object):
    """Fitted exponential decay rate with its standard error."""

    def __init__(self, rate, stderr, fit_window):
        self.rate = float(rate)
        self.stderr = float(stderr)
        self.fit_window = (float(fit_window[0]), float(fit_window[1]))

    def as_dict(self):
        return {
            'rate': self.rate,
            'stderr': self.stderr,
            'fit_window': list(self.fit_window),
        }

    def __repr__(self):
        return 'RateEstimate(rate=%r, stderr=%r)' % (self.rate, self.stderr)


class Grid(object):
    UNIFORM = 'uniform'
    CUSTOM = 'custom'

    def __init__(self, points, kind=CUSTOM):
        points = np.array(points, dtype=float)
        if points.ndim != 1 or points.size < 3:
            raise GridTooCoarse('A grid needs at least 3 points')
        if not np.all(np.isfinite(points)):
            raise InputError('Grid points must be finite')
        steps = np.diff(points)
        if np.any(steps <= 0):
            raise InvalidInterval('Grid points must be strictly increasing')
        if kind not in (self.UNIFORM, self.CUSTOM):
            raise InputError("Unknown grid kind '%s'" % kind)
        if kind == self.UNIFORM:
            h = (points[-1] - points[0]) / (points.size - 1)
            # the abscissae themselves carry a representation error
            slack = 1e-12 * h + 4 * np.finfo(float).eps * np.max(np.abs(points))
            if np.max(np.abs(steps - h)) > slack:
                raise InputError('Uniform grid spacing is not constant')
        points.setflags(write=False)
        self.points = points
        self.kind = kind

    @classmethod
    def uniform(cls, lower, upper, n):
        return cls(np.linspace(lower, upper, n), kind=cls.UNIFORM)

    @classmethod
    def cell_centers(cls, lower, upper, n):
        """n uniform cell midpoints of [lower, upper]; the ends are faces."""
        h = (upper - lower) / n
        return cls(lower + h * (np.arange(n) + 0.5), kind=cls.UNIFORM)

    @property
    def spacing(self):
        if self.kind != self.UNIFORM:
            raise InputError('Only uniform grids have a spacing')
        return (self.points[-1] - self.points[0]) / (self.points.size - 1)

    @property
    def lower(self):
        return self.points[0]

    @property
    def upper(self):
        return self.points[-1]

    def __len__(self):
        return self.points.size

    def __repr__(self):
        return 'Grid(%s, n=%d, [%r, %r])' % (
            self.kind, len(self), self.lower, self.upper)


class GridFunction(object):
    """Values on a grid; evaluation between nodes is monotone cubic (PCHIP),
    outside the grid the end values are held."""

    def __init__(self, grid, values):
        values = np.array(values, dtype=float)
        if values.shape != grid.points.shape:
            raise InputError('values must have one entry per grid point')
        if not np.all(np.isfinite(values)):
            raise InputError('GridFunction values must be finite')
        values.setflags(write=False)
        self.grid = grid
        self.values = values
        self._interpolant = None

    def __call__(self, x):
        if self._interpolant is None:
            self._interpolant = PchipInterpolator(
                self.grid.points, self.values, extrapolate=False)
        x = np.clip(x, self.grid.lower, self.grid.upper)
        return self._interpolant(x)

    def __len__(self):
        return self.values.size


def integrate(f, a, b, tol=None, singular=None, rtol=0.0):
    """Adaptive Gauss-Kronrod quadrature of f over [a, b].

    Infinite endpoints are mapped by QUADPACK. ``singular`` names the
    endpoints ('lower', 'upper' or 'both') where f has an integrable
    singularity; those are removed by the substitution x = a + u**2.
    The error estimate must end below max(tol, rtol*|value|).
    """
    if tol is None:
        tol = conf.get('QUADRATURE_TOL')
    if tol <= 0 or rtol < 0:
        raise InputError('Quadrature tolerance must be positive')
    if not a < b:
        raise InvalidInterval('Cannot integrate over [%r, %r]' % (a, b))

    if singular == 'both':
        if not (np.isfinite(a) and np.isfinite(b)):
            raise InvalidInterval('Singular ends must be finite')
        mid = 0.5 * (a + b)
        left = integrate(f, a, mid, tol=0.5 * tol, singular='lower', rtol=rtol)
        right = integrate(f, mid, b, tol=0.5 * tol, singular='upper', rtol=rtol)
        return QuadratureResult(
            left.value + right.value,
            left.abs_error_estimate + right.abs_error_estimate,
            left.evaluations + right.evaluations)
    if singular == 'lower':
        if not np.isfinite(a):
            raise InvalidInterval('Singular ends must be finite')
        g = lambda u: 2.0 * u * float(f(a + u * u))
        lo, hi = 0.0, np.sqrt(b - a)
    elif singular == 'upper':
        if not np.isfinite(b):
            raise InvalidInterval('Singular ends must be finite')
        g = lambda u: 2.0 * u * float(f(b - u * u))
        lo, hi = 0.0, np.sqrt(b - a)
    elif singular is None:
        g = lambda x: float(f(x))
        lo, hi = a, b
    else:
        raise InputError("Unknown singular end '%s'" % singular)

    out = scipy_integrate.quad(
        g, lo, hi, epsabs=tol, epsrel=rtol,
        limit=conf.get('QUADRATURE_LIMIT'), full_output=1)
    value, abserr, info = out[0], out[1], out[2]
    if not np.isfinite(value) or abserr > max(tol, rtol * abs(value)):
        raise NonConvergence(
            'Quadrature over [%r, %r] reached error %.3g > %.3g after %d evaluations' % (
                a, b, abserr, tol, info['neval']))
    logger.debug('quad [%r, %r]: %r +- %.2g (%d evals)',
                 a, b, value, abserr, info['neval'])
    return QuadratureResult(value, abserr, info['neval'])


def tridiag_eigs(diag, offdiag, k):
    """The k smallest eigenpairs of a symmetric tridiagonal matrix.

    Eigenvalues come back in nondecreasing order, eigenvectors as unit
    columns of ``vectors``.
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    n = diag.size
    if n == 0 or offdiag.size != n - 1:
        raise InputError('offdiag must be one shorter than diag')
    if not 1 <= k <= n:
        raise InputError('Cannot select %d eigenpairs of a %dx%d matrix' % (k, n, n))
    if n == 1:
        return Eigenpairs(diag.copy(), np.ones((1, 1)))
    try:
        values, vectors = linalg.eigh_tridiagonal(
            diag, offdiag, select='i', select_range=(0, k - 1))
    except (linalg.LinAlgError, ValueError) as e:
        raise ConvergenceFailure('Tridiagonal eigensolver failed: %s' % e)
    return Eigenpairs(values, vectors)


def _is_nonpositive_integer(value):
    return value <= 0 and float(value).is_integer()


def _series(numerators, denominators, z):
    """Sum of the generalized hypergeometric series at z (scalar or array)."""
    budget = conf.get('SERIES_TERMS')
    rtol = conf.get('SERIES_RTOL')
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for r in range(budget):
        factor = 1.0
        for p in numerators:
            factor = factor * (p + r)
        for q in denominators:
            factor = factor / (q + r)
        term = term * factor * z / (r + 1)
        total = total + term
        if np.all(np.abs(term) <= rtol * np.abs(total)):
            break
    else:
        logger.warning('Hypergeometric series %r/%r truncated after %d terms',
                       numerators, denominators, budget)
    if scalar:
        return float(total)
    return total


def hyp2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) by its power series.

    A terminating series (a or b a nonpositive integer) is a polynomial and
    is summed for any z; otherwise |z| < 1 is required.
    """
    if _is_nonpositive_integer(c):
        raise PoleAtC('2F1 has a pole at c=%r' % c)
    terminating = _is_nonpositive_integer(a) or _is_nonpositive_integer(b)
    if not terminating and np.any(np.abs(z) >= 1):
        raise SeriesDivergence('2F1 series diverges for |z| >= 1')
    return _series((a, b), (c,), z)


def hyp1f1(a, c, z):
    """Confluent hypergeometric function 1F1(a; c; z)."""
    if _is_nonpositive_integer(c):
        raise PoleAtC('1F1 has a pole at c=%r' % c)
    return _series((a,), (c,), z)


def hyp2f0(a, b, z):
    """2F0(a, b;; z), only in its terminating (polynomial) form."""
    if not (_is_nonpositive_integer(a) or _is_nonpositive_integer(b)):
        raise SeriesDivergence('2F0 converges only when it terminates')
    return _series((a, b), (), z)


def fit_exponential_decay(times, values):
    """Least-squares fit of log(values) against times.

    Returns the decay rate (minus the slope) and its standard error.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.shape != values.shape or times.ndim != 1:
        raise InputError('times and values must be 1-D and of equal length')
    if times.size < 4:
        raise InputError('At least 4 samples are needed for a decay fit')
    if np.any(np.diff(times) <= 0):
        raise InvalidInterval('times must be strictly increasing')
    if np.any(values <= 0):
        raise NonPositiveValues('Cannot take the log of nonpositive values')
    fit = stats.linregress(times, np.log(values))
    return RateEstimate(-fit.slope, fit.stderr, (times[0], times[-1]))


def central_difference(f, x, h):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def chebyshev_points(lower, upper, n):
    """n Chebyshev-Gauss points strictly inside (lower, upper), ascending."""
    t = np.sort(chebyshev.chebpts1(n))
    return 0.5 * (lower + upper) + 0.5 * (upper - lower) * t


def truncate_support(pdf, lower, upper, center, scale, cutoff=None):
    """Finite bounds for an infinite support.

    Each infinite side is pushed out from ``center`` by doubling multiples
    of ``scale`` until pdf falls below ``cutoff`` times its peak.
    """
    if cutoff is None:
        cutoff = conf.get('TAIL_CUTOFF')
    probe = np.linspace(center - 4 * scale, center + 4 * scale, 161)
    probe = probe[(probe > lower) & (probe < upper)]
    peak = np.max(pdf(probe)) if probe.size else float(pdf(center))

    def push(sign):
        distance = scale
        for _ in range(200):
            edge = center + sign * distance
            if pdf(edge) < cutoff * peak:
                return edge
            distance *= 2.0
        raise NonConvergence('Tail of the density does not decay')

    lo = lower if np.isfinite(lower) else push(-1.0)
    hi = upper if np.isfinite(upper) else push(1.0)
    logger.debug('Truncated support [%r, %r] -> [%r, %r]', lower, upper, lo, hi)
    return lo, hi
