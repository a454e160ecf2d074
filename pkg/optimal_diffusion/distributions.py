# -*- coding: utf-8 -*-
"""Stationary densities.

Every density exposes pdf, cdf, survival function, the first two moments
and the centered partial mean

    N(x) = integral from x1 to x of (m1 - z) pi(z) dz,

which is the numerator of the optimal variance function. Catalog kinds
evaluate N in closed form through the size-biased identity
z * pi_theta(z) = m1 * pi_theta'(z); everything else falls back to a
cumulative quadrature pass.
"""
from __future__ import division, unicode_literals

import logging

import numpy as np
from scipy import optimize, special, stats
from scipy.interpolate import PchipInterpolator, PPoly

from . import conf, numerics
from .exceptions import (
    BadWeights, DegenerateDistribution, InputError, InvalidInterval,
    MomentDivergence, NotNormalized, OutOfSupport, ParamOutOfRange,
    SupportMismatch
)

logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-8


def _parse_bound(value):
    if isinstance(value, str):
        value = value.strip().lower()
        if value in ('inf', '+inf'):
            return np.inf
        if value == '-inf':
            return -np.inf
    return float(value)


def _format_bound(value):
    if np.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


def _scalar_or_array(x, value):
    if np.ndim(x) == 0:
        return float(value)
    return value


class Support(object):

    def __init__(self, lower, upper):
        lower, upper = _parse_bound(lower), _parse_bound(upper)
        if not lower < upper:
            raise InvalidInterval('Support needs lower < upper, got [%r, %r]' % (lower, upper))
        self.lower = lower
        self.upper = upper

    @property
    def is_compact(self):
        return np.isfinite(self.lower) and np.isfinite(self.upper)

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        return (x >= self.lower) & (x <= self.upper)

    def as_list(self):
        return [_format_bound(self.lower), _format_bound(self.upper)]

    def __eq__(self, other):
        return (isinstance(other, Support)
                and self.lower == other.lower and self.upper == other.upper)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.lower, self.upper))

    def __repr__(self):
        return 'Support(%r, %r)' % (self.lower, self.upper)


class MomentSummary(object):

    def __init__(self, m1, m2):
        self.m1 = float(m1)
        self.m2 = float(m2)
        self.variance = self.m2 - self.m1 ** 2
        if not self.variance > 0:
            raise DegenerateDistribution(
                'm2 - m1**2 = %r is not positive' % self.variance)

    @classmethod
    def from_variance(cls, m1, variance):
        return cls(m1, variance + m1 ** 2)

    def __repr__(self):
        return 'MomentSummary(m1=%r, m2=%r)' % (self.m1, self.m2)


class DistributionSpec(object):
    """A stationary density on an interval. Immutable after construction."""

    kind = None
    heavy_tailed = False

    def __init__(self, support, **params):
        self.support = support
        self.params = dict((k, float(v)) for k, v in params.items())
        self._moments = None

    # integrable singularities of the pdf at support ends:
    # None, 'lower', 'upper' or 'both'
    singular = None

    def _finish(self):
        self.check_normalization()
        logger.debug('Built %r', self)

    def __repr__(self):
        params = ', '.join('%s=%r' % kv for kv in sorted(self.params.items()))
        return '%s(%s)' % (self.kind, params)

    def to_dict(self):
        return {
            'kind': self.kind,
            'params': dict(self.params),
            'support': self.support.as_list(),
        }

    def _check(self, x):
        inside = self.support.contains(x)
        if not np.all(inside):
            raise OutOfSupport('%r is outside the support of %r' % (
                np.asarray(x)[~inside].ravel()[:3].tolist(), self))
        return np.asarray(x, dtype=float)

    def pdf(self, x):
        arr = self._check(x)
        return _scalar_or_array(x, self._pdf(arr))

    def cdf(self, x):
        arr = self._check(x)
        return _scalar_or_array(x, np.clip(self._cdf(arr), 0.0, 1.0))

    def sf(self, x):
        arr = self._check(x)
        return _scalar_or_array(x, np.clip(self._sf(arr), 0.0, 1.0))

    def ppf(self, q):
        """Inverse of cdf for probabilities q in [0, 1]."""
        arr = np.asarray(q, dtype=float)
        if not np.all((arr >= 0) & (arr <= 1)):
            raise InputError('Probabilities must lie in [0, 1]')
        return _scalar_or_array(q, self._ppf(arr))

    def moments(self):
        if self._moments is None:
            closed = self._closed_moments()
            if closed is None:
                self._moments = self.quadrature_moments()
            else:
                self._moments = MomentSummary.from_variance(*closed)
        return self._moments

    @property
    def mean(self):
        return self.moments().m1

    def centered_partial_mean(self, x):
        """N(x) = integral of (m1 - z) pi(z) over [x1, x]; nonnegative."""
        arr = np.atleast_1d(self._check(x))
        m1 = self.moments().m1
        out = np.empty_like(arr)
        left = arr <= m1
        if np.any(left):
            out[left] = self._centered_lower(arr[left])
        if np.any(~left):
            out[~left] = self._centered_upper(arr[~left])
        return _scalar_or_array(x, np.maximum(out, 0.0).reshape(np.shape(x)))

    @property
    def center(self):
        return self.moments().m1

    @property
    def scale(self):
        return np.sqrt(self.moments().variance)

    def bounds(self, cutoff=None):
        """Finite interval carrying all but a negligible tail of the density."""
        return numerics.truncate_support(
            self.pdf, self.support.lower, self.support.upper,
            self.center, self.scale, cutoff=cutoff)

    def check_normalization(self):
        result = numerics.integrate(
            self.pdf, self.support.lower, self.support.upper,
            singular=self.singular)
        if abs(result.value - 1.0) > NORMALIZATION_TOL:
            raise NotNormalized('%r integrates to %r' % (self, result.value))
        return result.value

    def quadrature_moments(self):
        self._check_moments_exist()
        lo, hi = self.support.lower, self.support.upper
        m1 = numerics.integrate(lambda z: z * self.pdf(z), lo, hi,
                                singular=self.singular).value
        m2 = numerics.integrate(lambda z: z * z * self.pdf(z), lo, hi,
                                singular=self.singular).value
        return MomentSummary(m1, m2)

    def _check_moments_exist(self):
        pass

    def _closed_moments(self):
        """(m1, variance) in closed form, or None."""
        return None

    # quadrature fallbacks

    def _cumulative(self, f, points, from_lower):
        """Integrals of f from the near support end to each point, in one
        pass over the sorted points."""
        order = np.argsort(points)
        if not from_lower:
            order = order[::-1]
        out = np.empty_like(points)
        total = 0.0
        prev = self.support.lower if from_lower else self.support.upper
        first = True
        for i in order:
            x = points[i]
            a, b = (prev, x) if from_lower else (x, prev)
            if a < b:
                singular = None
                if first and self.singular in ('lower', 'both') and from_lower:
                    singular = 'lower'
                if first and self.singular in ('upper', 'both') and not from_lower:
                    singular = 'upper'
                total += numerics.integrate(f, a, b, singular=singular).value
                first = False
            out[i] = total
            prev = x
        return out

    def _pdf(self, x):
        raise NotImplementedError

    def _cdf(self, x):
        return self._cumulative(self._pdf, x, from_lower=True)

    def _sf(self, x):
        return self._cumulative(self._pdf, x, from_lower=False)

    def _ppf(self, q):
        # root of cdf(x) = q inside the truncated support; the cut tails map
        # to its ends
        lo, hi = self.bounds()
        cdf_lo, cdf_hi = self._cdf(np.array([lo, hi]))
        out = np.empty(q.shape)
        for i, p in np.ndenumerate(q):
            if p <= cdf_lo:
                out[i] = lo
            elif p >= cdf_hi:
                out[i] = hi
            else:
                out[i] = optimize.brentq(
                    lambda x: self._cdf(np.array([x]))[0] - p, lo, hi, xtol=1e-12)
        return out

    def _centered_lower(self, x):
        m1 = self.moments().m1
        return self._cumulative(lambda z: (m1 - z) * self._pdf(z), x, from_lower=True)

    def _centered_upper(self, x):
        m1 = self.moments().m1
        return self._cumulative(lambda z: (z - m1) * self._pdf(z), x, from_lower=False)


class _SizeBiasedFamily(DistributionSpec):
    """Location-scale image x = loc + scale*u of a scipy law whose
    size-biased density u*pi(u)/E[u] is another member of the family."""

    def _frozen(self):
        raise NotImplementedError

    def __init__(self, support, loc=0.0, scale=1.0, **params):
        super(_SizeBiasedFamily, self).__init__(support, **params)
        self._loc = loc
        self._scale = scale
        self._law, self._biased, self._mean_u = self._frozen()
        self._finish()

    def _u(self, x):
        return (x - self._loc) / self._scale

    def _pdf(self, x):
        return self._law.pdf(self._u(x)) / self._scale

    def _cdf(self, x):
        return self._law.cdf(self._u(x))

    def _sf(self, x):
        return self._law.sf(self._u(x))

    def _ppf(self, q):
        return self._loc + self._scale * self._law.ppf(q)

    def _centered_lower(self, x):
        u = self._u(x)
        return self._scale * self._mean_u * (self._law.cdf(u) - self._biased.cdf(u))

    def _centered_upper(self, x):
        u = self._u(x)
        return self._scale * self._mean_u * (self._biased.sf(u) - self._law.sf(u))

    @property
    def center(self):
        return self._loc + self._scale * self._law.median()

    @property
    def scale(self):
        return self._scale * (self._law.ppf(0.75) - self._law.ppf(0.25))


def _singular_ends(lower, upper):
    if lower and upper:
        return 'both'
    if lower:
        return 'lower'
    if upper:
        return 'upper'
    return None


class Beta(_SizeBiasedFamily):
    """x**alpha (1-x)**beta / B(alpha+1, beta+1) on [0, 1]."""

    kind = 'Beta'

    def __init__(self, alpha, beta):
        if not (alpha > -1 and beta > -1):
            raise ParamOutOfRange('Beta needs alpha, beta > -1')
        self.singular = _singular_ends(alpha < 0, beta < 0)
        super(Beta, self).__init__(Support(0.0, 1.0), alpha=alpha, beta=beta)

    def _frozen(self):
        a, b = self.params['alpha'] + 1, self.params['beta'] + 1
        return stats.beta(a, b), stats.beta(a + 1, b), a / (a + b)

    def _closed_moments(self):
        a, b = self.params['alpha'], self.params['beta']
        s = a + b + 2
        return (a + 1) / s, (a + 1) * (b + 1) / (s ** 2 * (s + 1))


class Jacobi(_SizeBiasedFamily):
    """(1-x)**alpha (1+x)**beta / (2**(alpha+beta+1) B(alpha+1, beta+1)) on [-1, 1]."""

    kind = 'Jacobi'

    def __init__(self, alpha, beta):
        if not (alpha > -1 and beta > -1):
            raise ParamOutOfRange('Jacobi needs alpha, beta > -1')
        self.singular = _singular_ends(beta < 0, alpha < 0)
        super(Jacobi, self).__init__(Support(-1.0, 1.0), loc=-1.0, scale=2.0,
                                     alpha=alpha, beta=beta)

    def _frozen(self):
        # u = (1+x)/2 ~ Beta(beta+1, alpha+1)
        a, b = self.params['beta'] + 1, self.params['alpha'] + 1
        return stats.beta(a, b), stats.beta(a + 1, b), a / (a + b)

    def _closed_moments(self):
        a, b = self.params['alpha'], self.params['beta']
        s = a + b + 2
        return (b - a) / s, 4 * (a + 1) * (b + 1) / (s ** 2 * (s + 1))


class Gamma(_SizeBiasedFamily):
    """x**alpha exp(-x) / Gamma(alpha+1) on [0, inf)."""

    kind = 'Gamma'

    def __init__(self, alpha):
        if not alpha > -1:
            raise ParamOutOfRange('Gamma needs alpha > -1')
        self.singular = 'lower' if alpha < 0 else None
        super(Gamma, self).__init__(Support(0.0, np.inf), alpha=alpha)

    def _frozen(self):
        k = self.params['alpha'] + 1
        return stats.gamma(k), stats.gamma(k + 1), k

    def _closed_moments(self):
        k = self.params['alpha'] + 1
        return k, k


class Exponential(_SizeBiasedFamily):
    """eta exp(-eta x) on [0, inf)."""

    kind = 'Exponential'

    def __init__(self, eta):
        if not eta > 0:
            raise ParamOutOfRange('Exponential needs eta > 0')
        super(Exponential, self).__init__(Support(0.0, np.inf), scale=1.0 / eta, eta=eta)

    def _frozen(self):
        return stats.gamma(1.0), stats.gamma(2.0), 1.0

    def _closed_moments(self):
        eta = self.params['eta']
        return 1.0 / eta, 1.0 / eta ** 2


class InverseGamma(_SizeBiasedFamily):
    """x**-(2 alpha+1) exp(-1/x) / Gamma(2 alpha) on [0, inf)."""

    kind = 'InverseGamma'
    heavy_tailed = True

    def __init__(self, alpha):
        if not alpha >= 2:
            raise ParamOutOfRange('InverseGamma needs alpha >= 2')
        super(InverseGamma, self).__init__(Support(0.0, np.inf), alpha=alpha)

    def _frozen(self):
        k = 2 * self.params['alpha']
        return stats.invgamma(k), stats.invgamma(k - 1), 1.0 / (k - 1)

    def _closed_moments(self):
        a = self.params['alpha']
        return 1.0 / (2 * a - 1), 1.0 / (2 * (a - 1) * (2 * a - 1) ** 2)

    @staticmethod
    def printed_variance(alpha):
        """The variance as printed in the catalog table; disagrees with
        quadrature of the density."""
        return 1.0 / (2 * (alpha - 1) * (alpha - 1) ** 2)


class FisherSnedecor(_SizeBiasedFamily):
    """Snedecor-Fisher F(nu1, nu2) density on [0, inf)."""

    kind = 'FisherSnedecor'
    heavy_tailed = True

    def __init__(self, nu1, nu2):
        if not (nu1 > 0 and nu2 > 0):
            raise ParamOutOfRange('FisherSnedecor needs nu1, nu2 > 0')
        self.singular = 'lower' if nu1 < 2 else None
        super(FisherSnedecor, self).__init__(
            Support(0.0, np.inf), scale=nu2 / nu1, nu1=nu1, nu2=nu2)

    def _frozen(self):
        a, b = self.params['nu1'] / 2, self.params['nu2'] / 2
        law = stats.betaprime(a, b)
        if b <= 1:
            # no finite mean: partial means are never requested
            return law, None, np.inf
        return law, stats.betaprime(a + 1, b - 1), a / (b - 1)

    def _check_moments_exist(self):
        if not self.params['nu2'] > 4:
            raise MomentDivergence('FisherSnedecor has a finite variance only for nu2 > 4')

    def _closed_moments(self):
        self._check_moments_exist()
        n1, n2 = self.params['nu1'], self.params['nu2']
        return n2 / (n2 - 2), 2 * n2 ** 2 * (n1 + n2 - 2) / (n1 * (n2 - 2) ** 2 * (n2 - 4))


class Normal(DistributionSpec):

    kind = 'Normal'

    def __init__(self, x0, sigma):
        if not sigma > 0:
            raise ParamOutOfRange('Normal needs sigma > 0')
        super(Normal, self).__init__(Support(-np.inf, np.inf), x0=x0, sigma=sigma)
        self._law = stats.norm(x0, sigma)
        self._finish()

    def _pdf(self, x):
        return self._law.pdf(x)

    def _cdf(self, x):
        return self._law.cdf(x)

    def _sf(self, x):
        return self._law.sf(x)

    def _ppf(self, q):
        return self._law.ppf(q)

    def _centered_lower(self, x):
        return self.params['sigma'] ** 2 * self._law.pdf(x)

    _centered_upper = _centered_lower

    def _closed_moments(self):
        return self.params['x0'], self.params['sigma'] ** 2

    @property
    def center(self):
        return self.params['x0']

    @property
    def scale(self):
        return self.params['sigma']


class StudentCauchy(DistributionSpec):
    """(1+x**2)**-(alpha+1/2) / B(alpha, 1/2) on the real line."""

    kind = 'StudentCauchy'
    heavy_tailed = True

    def __init__(self, alpha):
        if not alpha >= 2:
            raise ParamOutOfRange('StudentCauchy needs alpha >= 2')
        super(StudentCauchy, self).__init__(Support(-np.inf, np.inf), alpha=alpha)
        self._law = stats.t(df=2 * alpha, scale=1.0 / np.sqrt(2 * alpha))
        self._finish()

    def _pdf(self, x):
        return self._law.pdf(x)

    def _cdf(self, x):
        return self._law.cdf(x)

    def _sf(self, x):
        return self._law.sf(x)

    def _ppf(self, q):
        return self._law.ppf(q)

    def _centered_lower(self, x):
        a = self.params['alpha']
        return (1 + x * x) ** (0.5 - a) / ((2 * a - 1) * special.beta(a, 0.5))

    _centered_upper = _centered_lower

    def _closed_moments(self):
        return 0.0, 1.0 / (2 * (self.params['alpha'] - 1))

    @property
    def center(self):
        return 0.0

    @property
    def scale(self):
        return 1.0


class CubicPearson(DistributionSpec):
    """x**(alpha-1) (1-x)**(beta-1) (1-a x)**-(alpha+beta+1) / Z on [0, 1],
    the stationary law of the process with cubic variance x(1-x)(1-ax)."""

    kind = 'CubicPearson'

    def __init__(self, alpha, beta, a):
        if not (alpha > 0 and beta > 0 and abs(a) < 1):
            raise ParamOutOfRange('CubicPearson needs alpha, beta > 0 and |a| < 1')
        self.singular = _singular_ends(alpha < 1, beta < 1)
        super(CubicPearson, self).__init__(Support(0.0, 1.0), alpha=alpha, beta=beta, a=a)
        self._norm = self._euler(0, alpha + beta + 1, 0)
        self._finish()

    def _euler(self, shift, power, extra):
        """Integral of x**(alpha+shift-1) (1-x)**(beta+extra-1) (1-ax)**-power."""
        al, be, a = self.params['alpha'], self.params['beta'], self.params['a']
        p, q = al + shift, be + extra
        return special.beta(p, q) * numerics.hyp2f1(power, p, p + q, a)

    def _pdf(self, x):
        al, be, a = self.params['alpha'], self.params['beta'], self.params['a']
        with np.errstate(divide='ignore'):
            return (x ** (al - 1) * (1 - x) ** (be - 1)
                    * (1 - a * x) ** -(al + be + 1) / self._norm)

    def _closed_moments(self):
        al, be = self.params['alpha'], self.params['beta']
        m1 = self._euler(1, al + be + 1, 0) / self._norm
        m2 = self._euler(2, al + be + 1, 0) / self._norm
        return m1, m2 - m1 ** 2

    def average_variance(self):
        """Mean of x(1-x)(1-ax) under the density."""
        al, be = self.params['alpha'], self.params['beta']
        return self._euler(1, al + be, 1) / self._norm


def _times_x(poly):
    """The piecewise polynomial x*p(x)."""
    c = poly.c
    k, m = c.shape[0], c.shape[1]
    out = np.zeros((k + 1, m))
    out[:k] += c
    out[1:] += c * poly.x[:-1]
    return PPoly(out, poly.x)


class Tabulated(DistributionSpec):
    """A density given by values on a grid, interpolated by a monotone cubic
    and rescaled to unit mass."""

    kind = 'Custom'

    def __init__(self, grid, pdf_values, support=None):
        grid = numerics.Grid(grid)
        values = np.asarray(pdf_values, dtype=float)
        if values.shape != grid.points.shape:
            raise InputError('grid and pdf must have equal length')
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise InputError('Tabulated pdf values must be finite and nonnegative')
        if support is None:
            support = Support(grid.lower, grid.upper)
        if support.lower != grid.lower or support.upper != grid.upper:
            raise SupportMismatch('A tabulated density must span its support exactly')
        super(Tabulated, self).__init__(support)
        self.grid = grid
        self.table = values
        poly = PchipInterpolator(grid.points, values, extrapolate=False)
        self._p = poly
        self._P = poly.antiderivative()
        self._mass = float(self._P(grid.upper))
        if not self._mass > 0:
            raise InputError('Tabulated pdf has no mass')
        self._xp = _times_x(poly).antiderivative()
        self._x2p = _times_x(_times_x(poly)).antiderivative()
        logger.info('Tabulated density on %r had mass %r before rescaling', grid, self._mass)
        self._finish()

    def to_dict(self):
        out = super(Tabulated, self).to_dict()
        out['grid'] = self.grid.points.tolist()
        out['pdf'] = self.table.tolist()
        return out

    def _pdf(self, x):
        return np.maximum(self._p(x), 0.0) / self._mass

    def _cdf(self, x):
        return self._P(x) / self._mass

    def _sf(self, x):
        return 1.0 - self._cdf(x)

    def _closed_moments(self):
        m1 = float(self._xp(self.grid.upper)) / self._mass
        m2 = float(self._x2p(self.grid.upper)) / self._mass
        return m1, m2 - m1 ** 2

    def _centered_lower(self, x):
        return self.moments().m1 * self._cdf(x) - self._xp(x) / self._mass

    def _centered_upper(self, x):
        upper = float(self._xp(self.grid.upper))
        return (upper - self._xp(x)) / self._mass - self.moments().m1 * self._sf(x)


class Mixture(DistributionSpec):
    """Convex combination sum_i p_i pi_i of densities on a shared support."""

    kind = 'Custom'

    def __init__(self, components, weights, **params):
        components = list(components)
        weights = np.asarray(weights, dtype=float)
        if not components or weights.shape != (len(components),):
            raise BadWeights('Need one weight per component')
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise BadWeights('Weights must be nonnegative and sum to 1')
        support = components[0].support
        for spec in components[1:]:
            if spec.support != support:
                raise SupportMismatch('%r and %r have different supports' % (
                    components[0], spec))
        super(Mixture, self).__init__(support, **params)
        self.components = components
        self.weights = weights
        self.heavy_tailed = any(c.heavy_tailed for c in components)
        lower = any(c.singular in ('lower', 'both') for c in components)
        upper = any(c.singular in ('upper', 'both') for c in components)
        self.singular = _singular_ends(lower, upper)
        self._finish()

    def __repr__(self):
        return 'Mixture(%s)' % ', '.join(
            '%g*%r' % (w, c) for w, c in zip(self.weights, self.components))

    def to_dict(self):
        out = super(Mixture, self).to_dict()
        out['components'] = [c.to_dict() for c in self.components]
        out['weights'] = self.weights.tolist()
        return out

    def _sum(self, method, x):
        return sum(w * getattr(c, method)(x) for w, c in zip(self.weights, self.components))

    def _pdf(self, x):
        return self._sum('_pdf', x)

    def _cdf(self, x):
        return self._sum('_cdf', x)

    def _sf(self, x):
        return self._sum('_sf', x)

    def _closed_moments(self):
        parts = [c.moments() for c in self.components]
        m1 = sum(w * p.m1 for w, p in zip(self.weights, parts))
        variance = sum(w * ((m1 - p.m1) ** 2 + p.variance)
                       for w, p in zip(self.weights, parts))
        return m1, variance

    def _centered_lower(self, x):
        m1 = self.moments().m1
        return sum(w * (c.centered_partial_mean(x) + (m1 - c.moments().m1) * c._cdf(x))
                   for w, c in zip(self.weights, self.components))

    def _centered_upper(self, x):
        m1 = self.moments().m1
        return sum(w * (c.centered_partial_mean(x) - (m1 - c.moments().m1) * c._sf(x))
                   for w, c in zip(self.weights, self.components))


class Hyperexponential(Mixture):
    """p1 eta1 exp(-eta1 x) + p2 eta2 exp(-eta2 x): exponential stages in parallel."""

    kind = 'Hyperexponential'

    def __init__(self, p1, p2, eta1, eta2):
        if not (p1 > 0 and p2 > 0 and eta1 > 0 and eta2 > 0):
            raise ParamOutOfRange('Hyperexponential needs positive p_i and eta_i')
        if abs(p1 + p2 - 1.0) > 1e-12:
            raise BadWeights('Hyperexponential needs p1 + p2 = 1')
        super(Hyperexponential, self).__init__(
            [Exponential(eta1), Exponential(eta2)], [p1, p2],
            p1=p1, p2=p2, eta1=eta1, eta2=eta2)

    def __repr__(self):
        return DistributionSpec.__repr__(self)

    def to_dict(self):
        return DistributionSpec.to_dict(self)

    def _cdf(self, x):
        p = self.params
        return 1.0 - p['p1'] * np.exp(-p['eta1'] * x) - p['p2'] * np.exp(-p['eta2'] * x)

    def _sf(self, x):
        p = self.params
        return p['p1'] * np.exp(-p['eta1'] * x) + p['p2'] * np.exp(-p['eta2'] * x)

    def _closed_moments(self):
        p = self.params
        i1, i2 = 1.0 / p['eta1'], 1.0 / p['eta2']
        m1 = p['p1'] * i1 + p['p2'] * i2
        variance = p['p1'] * i1 ** 2 + p['p2'] * i2 ** 2 + p['p1'] * p['p2'] * (i1 - i2) ** 2
        return m1, variance

    def _centered(self, x):
        p = self.params
        i1, i2 = 1.0 / p['eta1'], 1.0 / p['eta2']
        return (p['p1'] * np.exp(-p['eta1'] * x) * (x + p['p2'] * (i1 - i2))
                + p['p2'] * np.exp(-p['eta2'] * x) * (x + p['p1'] * (i2 - i1)))

    _centered_lower = _centered
    _centered_upper = _centered


CATALOG = dict((cls.kind, cls) for cls in (
    Beta, Jacobi, Gamma, Exponential, Normal, StudentCauchy, InverseGamma,
    FisherSnedecor, Hyperexponential, CubicPearson,
))

KINDS = sorted(CATALOG) + ['Custom']


def build(kind, params=None, support=None, grid=None, pdf=None):
    """A DistributionSpec from the fields of a spec file."""
    params = params or {}
    if kind == 'Custom':
        if grid is None or pdf is None:
            raise InputError('Custom densities need a grid and a pdf table')
        if support is not None and not isinstance(support, Support):
            support = Support(*support)
        return Tabulated(grid, pdf, support=support)
    if kind not in CATALOG:
        raise InputError("Unknown distribution kind '%s'" % kind)
    try:
        spec = CATALOG[kind](**params)
    except TypeError as e:
        raise ParamOutOfRange("Bad parameters %r for %s: %s" % (params, kind, e))
    if support is not None:
        if not isinstance(support, Support):
            support = Support(*support)
        if support != spec.support:
            raise SupportMismatch('%s lives on %r, not %r' % (kind, spec.support, support))
    return spec


def pdf(spec, x):
    return spec.pdf(x)


def cdf(spec, x):
    return spec.cdf(x)


def moments(spec):
    return spec.moments()


def mixture(specs, weights):
    return Mixture(specs, weights)
