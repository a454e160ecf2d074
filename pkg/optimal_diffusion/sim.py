# -*- coding: utf-8 -*-
"""Euler-Maruyama paths of dX = mu dt + sqrt(2 V) dW.

Path i draws its noise from Philox keyed by seed ^ i, so results do not
depend on how paths are split across threads.
"""
from __future__ import division, unicode_literals

import csv
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import fft

from . import conf, numerics
from .exceptions import (
    BoundaryViolation, ConfigurationError, InputError, InsufficientDecay,
    NonFiniteState, NonPositiveValues
)

logger = logging.getLogger(__name__)

CHUNK = 1024
MAX_REJECTIONS = 100
HISTOGRAM_BINS = 50
ACOV_BLOCK = 64
RATE_BATCHES = 10
# x0 value starting each path from its own draw of pi
STATIONARY = 'stationary'


class SimConfig(object):
    BOUNDARY_MODES = ('reflect', 'reject-step')

    def __init__(self, **kwargs):
        defaults = conf.get('SIM')
        self.dt = float(kwargs.pop('dt', defaults['dt']))
        self.n_steps = int(kwargs.pop('n_steps', defaults['n_steps']))
        self.n_paths = int(kwargs.pop('n_paths', defaults['n_paths']))
        self.seed = int(kwargs.pop('seed', defaults['seed']))
        self.burn_in = int(kwargs.pop('burn_in', defaults['burn_in']))
        self.boundary_mode = kwargs.pop('boundary_mode', defaults['boundary_mode'])
        self.max_lag = kwargs.pop('max_lag', None)
        self.threads = int(kwargs.pop('threads', 1))
        if kwargs:
            raise ConfigurationError('Unknown simulation options: %s' % ', '.join(sorted(kwargs)))

        if not self.dt > 0:
            raise ConfigurationError('dt must be positive')
        if self.n_steps < 1 or self.n_paths < 1 or self.threads < 1:
            raise ConfigurationError('n_steps, n_paths and threads must be positive')
        if not 0 <= self.burn_in < self.n_steps:
            raise ConfigurationError('burn_in must lie in [0, n_steps)')
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError('seed must be a 64-bit unsigned integer')
        if self.boundary_mode not in self.BOUNDARY_MODES:
            raise ConfigurationError("Unknown boundary mode '%s'" % self.boundary_mode)
        if self.max_lag is None:
            self.max_lag = self.n_kept // 2
        self.max_lag = int(self.max_lag)
        if not 1 <= self.max_lag < self.n_kept:
            raise ConfigurationError('max_lag must lie in [1, n_steps - burn_in)')

    @property
    def n_kept(self):
        return self.n_steps - self.burn_in

    def as_dict(self):
        return {
            'dt': self.dt,
            'n_steps': self.n_steps,
            'n_paths': self.n_paths,
            'seed': self.seed,
            'burn_in': self.burn_in,
            'boundary_mode': self.boundary_mode,
            'max_lag': self.max_lag,
            'threads': self.threads,
        }


def path_generator(seed, index):
    return np.random.Generator(np.random.Philox(key=seed ^ index))


def _reflect(x, lo, hi):
    if np.isfinite(lo):
        x = np.where(x < lo, 2 * lo - x, x)
    if np.isfinite(hi):
        x = np.where(x > hi, 2 * hi - x, x)
    return np.clip(x, lo, hi)


def _amplitude(proc, x, dt):
    return np.sqrt(np.maximum(2.0 * np.asarray(proc.variance_fn(x), dtype=float), 0.0) * dt)


def _advance(proc, cfg, x, xi, generators):
    lo, hi = proc.support.lower, proc.support.upper
    drift = np.asarray(proc.drift(x), dtype=float) * cfg.dt
    amplitude = _amplitude(proc, x, cfg.dt)
    new = x + drift + amplitude * xi
    if cfg.boundary_mode == 'reflect':
        if not np.all(np.isfinite(new)):
            raise NonFiniteState('Euler step produced a non-finite state')
        return _reflect(new, lo, hi)
    outside = np.flatnonzero(~((new >= lo) & (new <= hi)))
    tries = 0
    while outside.size:
        tries += 1
        if tries > MAX_REJECTIONS:
            raise BoundaryViolation('%d consecutive rejected steps' % MAX_REJECTIONS)
        for i in outside:
            new[i] = x[i] + drift[i] + amplitude[i] * generators[i].standard_normal()
        outside = outside[~((new[outside] >= lo) & (new[outside] <= hi))]
    if not np.all(np.isfinite(new)):
        raise NonFiniteState('Euler step produced a non-finite state')
    return new


def _initial_states(proc, x0, path_ids, generators):
    if isinstance(x0, np.ndarray):
        return x0[path_ids].astype(float)
    if isinstance(x0, str):
        # one uniform per path, drawn before any noise
        u = np.array([g.random() for g in generators])
        return np.asarray(proc.source.ppf(u), dtype=float).reshape(-1)
    return np.full(len(path_ids), float(x0))


def _run(proc, cfg, x0, path_ids, record):
    """Advance the paths n_steps from x0; record(step, x) sees every state."""
    generators = [path_generator(cfg.seed, int(i)) for i in path_ids]
    x = _initial_states(proc, x0, path_ids, generators)
    record(0, x)
    step = 0
    while step < cfg.n_steps:
        m = min(CHUNK, cfg.n_steps - step)
        noise = np.stack([g.standard_normal(m) for g in generators])
        for j in range(m):
            x = _advance(proc, cfg, x, noise[:, j], generators)
            step += 1
            record(step, x)
    return x


def _in_parallel(cfg, task):
    groups = np.array_split(np.arange(cfg.n_paths), min(cfg.threads, cfg.n_paths))
    if len(groups) == 1:
        return [task(groups[0])]
    with ThreadPoolExecutor(max_workers=len(groups)) as pool:
        return list(pool.map(task, groups))


def _start(proc, cfg, x0):
    """x0 as _run takes it: a float, one start per path, or STATIONARY."""
    if x0 is None or isinstance(x0, str):
        if proc.source is None:
            raise InputError('A starting point is needed without a stationary density')
        if x0 is None:
            x0 = proc.source.moments().m1
        elif x0 == STATIONARY:
            return STATIONARY
        else:
            raise InputError("x0 is a number, one number per path or '%s'" % STATIONARY)
    arr = np.asarray(x0, dtype=float)
    if arr.ndim and arr.shape != (cfg.n_paths,):
        raise InputError('Need one start per path, got shape %r' % (arr.shape,))
    if not np.all((arr >= proc.support.lower) & (arr <= proc.support.upper)):
        raise InputError('x0=%r is outside the support' % (x0,))
    return arr if arr.ndim else float(arr)


def default_observable(proc):
    """phi1 for optimal processes, else the standardized identity under pi."""
    phi1 = getattr(proc, 'phi1', None)
    if phi1 is not None:
        return phi1
    if proc.source is None:
        return lambda x: x
    stats = proc.source.moments()
    return lambda x: (x - stats.m1) / np.sqrt(stats.variance)


def sample_paths(proc, cfg, x0=None):
    """Full trajectories, shape (n_paths, n_steps + 1)."""
    x0 = _start(proc, cfg, x0)

    def task(ids):
        out = np.empty((len(ids), cfg.n_steps + 1))

        def record(step, x):
            out[:, step] = x
        _run(proc, cfg, x0, ids, record)
        return out
    return np.concatenate(_in_parallel(cfg, task))


def histogram_range(proc, states):
    if proc.support.is_compact:
        return proc.support.lower, proc.support.upper
    if proc.source is None:
        return float(np.min(states)), float(np.max(states))
    stats = proc.source.moments()
    spread = 6 * np.sqrt(stats.variance)
    return (max(proc.support.lower, stats.m1 - spread),
            min(proc.support.upper, stats.m1 + spread))


class TrajectoryStats(object):

    def __init__(self, cfg, m1, m2, m1_stderr, edges, counts, n_samples, lags, autocorr,
                 batch_autocorr=None, batch_sizes=None):
        self.cfg = cfg
        self.m1 = float(m1)
        self.m2 = float(m2)
        self.m1_stderr = float(m1_stderr)
        self.edges = edges
        self.counts = counts
        self.n_samples = int(n_samples)
        self.lags = lags
        self.autocorr = autocorr
        # per path-group autocovariances, for the jackknife stderr of the rate
        self.batch_autocorr = batch_autocorr
        self.batch_sizes = batch_sizes

    @property
    def freq(self):
        return self.counts / self.n_samples

    @property
    def observable_variance(self):
        return float(self.autocorr[0])

    def total_variation(self, spec):
        """Half the L1 distance between bin frequencies and pi's bin masses."""
        mass = np.diff(spec.cdf(self.edges))
        return 0.5 * float(np.sum(np.abs(self.freq - mass)))

    def as_dict(self):
        return {
            'm1': self.m1,
            'm2': self.m2,
            'm1_stderr': self.m1_stderr,
            'n_samples': self.n_samples,
            'observable_variance': self.observable_variance,
        }

    def hist_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['bin_lo', 'bin_hi', 'freq'])
        for lo, hi, f in zip(self.edges[:-1], self.edges[1:], self.freq):
            writer.writerow(['%.17g' % lo, '%.17g' % hi, '%.17g' % f])

    def autocorr_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['lag', 'autocorr'])
        for lag, c in zip(self.lags, self.autocorr):
            writer.writerow(['%.17g' % lag, '%.17g' % c])


def autocovariance(series, max_lag):
    """Mean over rows of the lag-s autocovariance, normalized by (T - s)."""
    n_rows, length = series.shape
    size = fft.next_fast_len(2 * length)
    total = np.zeros(max_lag + 1)
    for start in range(0, n_rows, ACOV_BLOCK):
        block = series[start:start + ACOV_BLOCK]
        spectrum = fft.rfft(block, n=size, axis=1)
        acov = fft.irfft(spectrum * np.conj(spectrum), n=size, axis=1)[:, :max_lag + 1]
        total += np.sum(acov, axis=0)
    return total / (n_rows * (length - np.arange(max_lag + 1)))


def batch_autocovariance(series, max_lag, n_batches):
    """autocovariance() of n_batches consecutive row groups, with their row counts."""
    groups = np.array_split(series, n_batches)
    return (np.array([autocovariance(g, max_lag) for g in groups]),
            np.array([len(g) for g in groups]))


def simulate(proc, cfg, x0=None, observable=None):
    x0 = _start(proc, cfg, x0)
    if observable is None:
        observable = default_observable(proc)

    def task(ids):
        kept = np.empty((len(ids), cfg.n_kept))
        values = np.empty((len(ids), cfg.n_kept))

        def record(step, x):
            if step > cfg.burn_in:
                kept[:, step - cfg.burn_in - 1] = x
                values[:, step - cfg.burn_in - 1] = observable(x)
        _run(proc, cfg, x0, ids, record)
        return kept, values

    parts = _in_parallel(cfg, task)
    states = np.concatenate([p[0] for p in parts])
    series = np.concatenate([p[1] for p in parts])

    path_means = np.mean(states, axis=1)
    m1 = np.mean(path_means)
    m2 = np.mean(np.mean(states ** 2, axis=1))
    m1_stderr = np.std(path_means, ddof=1) / np.sqrt(cfg.n_paths) if cfg.n_paths > 1 else np.inf
    lo, hi = histogram_range(proc, states)
    if not hi > lo:
        hi = lo + 1.0
    counts, edges = np.histogram(states, bins=HISTOGRAM_BINS, range=(lo, hi))
    batches, sizes = batch_autocovariance(
        series - np.mean(series), cfg.max_lag, min(RATE_BATCHES, cfg.n_paths))
    autocorr = np.average(batches, axis=0, weights=sizes)
    lags = cfg.dt * np.arange(cfg.max_lag + 1)
    logger.info('Simulated %d paths x %d steps: m1=%.6g m2=%.6g', cfg.n_paths, cfg.n_steps, m1, m2)
    return TrajectoryStats(cfg, m1, m2, m1_stderr, edges, counts, states.size, lags, autocorr,
                           batch_autocorr=batches, batch_sizes=sizes)


def _jackknife_stderr(stats, window, fallback):
    """Leave-one-group-out spread of the fitted rate. Falls back to the
    regression stderr with fewer than 4 groups or a nonpositive partial sum."""
    batches, sizes = stats.batch_autocorr, stats.batch_sizes
    if batches is None or len(sizes) < 4:
        return fallback
    n = len(sizes)
    totals = np.sum(batches * sizes[:, None], axis=0)
    rates = []
    for b in range(n):
        rest = (totals - batches[b] * sizes[b]) / (np.sum(sizes) - sizes[b])
        try:
            rates.append(numerics.fit_exponential_decay(stats.lags[window], rest[window]).rate)
        except NonPositiveValues:
            logger.warning('Leave-one-out autocovariance is not positive; '
                           'reporting the regression stderr')
            return fallback
    rates = np.asarray(rates)
    return float(np.sqrt((n - 1) / n * np.sum((rates - np.mean(rates)) ** 2)))


def estimate_rate(proc, cfg, x0=None, observable=None, stats=None):
    """Exponential rate of the observable's autocovariance, fitted over the
    first stretch where C(s)/C(0) lies inside FIT_WINDOW.

    The stderr is the jackknife over path groups, which sees the sampling
    noise that the regression residuals of a smooth autocovariance do not.
    """
    if stats is None:
        stats = simulate(proc, cfg, x0=x0, observable=observable)
    low, high = conf.get('FIT_WINDOW')
    ratio = stats.autocorr / stats.autocorr[0]
    below = np.flatnonzero(ratio <= high)
    if not below.size:
        raise InsufficientDecay('Autocorrelation never drops below %g' % high)
    first = below[0]
    tail = np.flatnonzero(ratio[first:] < low)
    last = first + tail[0] if tail.size else ratio.size
    if last - first < 4:
        raise InsufficientDecay('Fewer than 4 lags inside the fit window')
    window = slice(first, last)
    fit = numerics.fit_exponential_decay(stats.lags[window], stats.autocorr[window])
    estimate = numerics.RateEstimate(
        fit.rate, _jackknife_stderr(stats, window, fit.stderr), fit.fit_window)
    logger.info('Fitted rate %.6g +- %.2g over lags [%g, %g]', estimate.rate, estimate.stderr,
                stats.lags[first], stats.lags[last - 1])
    return estimate
