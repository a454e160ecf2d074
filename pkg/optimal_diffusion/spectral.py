# -*- coding: utf-8 -*-
"""Discrete spectrum and forward evolution of reversible diffusions.

The generator -(1/pi) d/dx(pi V d/dx) is discretized by finite volumes on
cell centers: the face coefficient pi*V is the mean of its values at the
two neighbouring nodes and both outer faces carry zero flux (reflecting
ends). With weights w = pi*h the stiffness matrix S gives the symmetric
tridiagonal form W**-1/2 S W**-1/2.
"""
from __future__ import division, unicode_literals

import csv
import logging

import numpy as np
from scipy import linalg

from . import conf, numerics
from .exceptions import (
    GridTooCoarse, InputError, InsufficientDecay, NumericalFailure,
    UnstableStep, ZeroDenominator
)

logger = logging.getLogger(__name__)

MIN_GRID_POINTS = 50
RANNACHER_STEPS = 4
MASS_TOL = 1e-8


def spectral_bounds(proc):
    """Interval covering m1 +- 8 s and everything where pi is above
    SPECTRAL_TAIL_CUTOFF times its peak, clipped to the support."""
    if proc.support.is_compact:
        return proc.support.lower, proc.support.upper
    spec = proc.source
    lo, hi = spec.bounds(cutoff=conf.get('SPECTRAL_TAIL_CUTOFF'))
    stats = spec.moments()
    spread = 8 * np.sqrt(stats.variance)
    lo = max(spec.support.lower, min(lo, stats.m1 - spread))
    hi = min(spec.support.upper, max(hi, stats.m1 + spread))
    return lo, hi


def default_grid(proc, n=None):
    if n is None:
        n = conf.get('GRID_POINTS')
    lo, hi = spectral_bounds(proc)
    return numerics.Grid.cell_centers(lo, hi, n)


class DiscreteGenerator(object):

    def __init__(self, grid, density, faces):
        self.grid = grid
        self.h = grid.spacing
        self.density = density
        self.faces = faces
        self.weights = density * self.h
        # zero flux through the outer faces
        left = np.concatenate(([0.0], faces))
        right = np.concatenate((faces, [0.0]))
        self.stiffness_diag = (left + right) / self.h
        self.stiffness_offdiag = -faces / self.h
        self.diag = self.stiffness_diag / self.weights
        self.offdiag = self.stiffness_offdiag / np.sqrt(self.weights[:-1] * self.weights[1:])
        self._bands = None

    def __len__(self):
        return len(self.grid)

    def forward_bands(self):
        """Banded storage of A with dp/dt = -A p for nodal densities p."""
        if self._bands is None:
            scale = self.h * self.density
            bands = np.zeros((3, len(self)))
            bands[0, 1:] = self.stiffness_offdiag / scale[1:]
            bands[1] = self.stiffness_diag / scale
            bands[2, :-1] = self.stiffness_offdiag / scale[:-1]
            bands.setflags(write=False)
            self._bands = bands
        return self._bands

    def apply_forward(self, p):
        bands = self.forward_bands()
        out = bands[1] * p
        out[:-1] += bands[0, 1:] * p[1:]
        out[1:] += bands[2, :-1] * p[:-1]
        return out


def discretize_generator(proc, grid):
    if len(grid) < MIN_GRID_POINTS:
        raise GridTooCoarse('Spectral work needs at least %d grid points, got %d' % (
            MIN_GRID_POINTS, len(grid)))
    if grid.kind != grid.UNIFORM:
        raise InputError('The generator is discretized on uniform grids only')
    density = np.asarray(proc.pdf(grid.points), dtype=float)
    flux = np.asarray(proc.flux(grid.points), dtype=float)
    if np.any(density <= 0) or not np.all(np.isfinite(flux)):
        raise NumericalFailure('Stationary density vanishes on the grid; narrow the bounds')
    faces = 0.5 * (flux[:-1] + flux[1:])
    return DiscreteGenerator(grid, density, faces)


class SpectrumResult(object):

    def __init__(self, eigenvalues, eigenfunctions, grid):
        self.eigenvalues = eigenvalues
        self.eigenfunctions = eigenfunctions
        self.grid = grid

    @property
    def gap(self):
        return float(self.eigenvalues[1])

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['n', 'lambda'])
        for n, value in enumerate(self.eigenvalues):
            writer.writerow([n, '%.17g' % value])


def spectrum(generator, k=None):
    """The k lowest eigenpairs, eigenfunctions orthonormal in sum(pi phi_m phi_n h)."""
    if k is None:
        k = conf.get('SPECTRUM_K')
    if k < 2:
        raise InputError('spectrum needs k >= 2')
    pairs = numerics.tridiag_eigs(generator.diag, generator.offdiag, k)
    root = np.sqrt(generator.weights)
    functions = []
    for j in range(k):
        phi = pairs.vectors[:, j] / root
        if phi[-1] < 0:
            phi = -phi
        functions.append(numerics.GridFunction(generator.grid, phi))
    logger.info('Spectrum on %r: %s', generator.grid,
                ', '.join('%.8g' % v for v in pairs.values))
    return SpectrumResult(pairs.values, functions, generator.grid)


def spectral_gap(proc, n=None):
    return spectrum(discretize_generator(proc, default_grid(proc, n)), 2).gap


def rayleigh_quotient(proc, q):
    """Energy of q over its pi-variance, both by grid quadrature."""
    grid = q.grid
    h = grid.spacing
    density = np.asarray(proc.pdf(grid.points), dtype=float)
    flux = np.asarray(proc.flux(grid.points), dtype=float)
    values = q.values
    mass = np.sum(density) * h
    centered = values - np.sum(density * values) * h / mass
    denominator = np.sum(density * centered ** 2) * h
    if denominator <= 1e-24 * np.sum(density * values ** 2) * h:
        raise ZeroDenominator('The trial function is constant under pi')
    faces = 0.5 * (flux[:-1] + flux[1:])
    numerator = np.sum(faces * (np.diff(values) / h) ** 2) * h
    return float(numerator / denominator)


class EvolutionState(object):

    def __init__(self, grid, density, time=0.0):
        if not isinstance(density, numerics.GridFunction):
            density = numerics.GridFunction(grid, density)
        if np.any(density.values < 0):
            raise InputError('A density cannot be negative')
        self.grid = grid
        self.density = density
        self.time = float(time)

    @property
    def mass(self):
        return float(np.sum(self.density.values) * self.grid.spacing)

    @classmethod
    def bump(cls, grid, center, width):
        """Narrow Gaussian, normalized on the grid."""
        values = np.exp(-0.5 * ((grid.points - center) / width) ** 2)
        return cls(grid, values / (np.sum(values) * grid.spacing))

    @classmethod
    def stationary(cls, proc, grid):
        values = np.asarray(proc.pdf(grid.points), dtype=float)
        return cls(grid, values / (np.sum(values) * grid.spacing))


class DecayLog(object):
    """L1 distance between the evolving density and the stationary one."""

    def __init__(self):
        self.times = []
        self.distances = []

    def record(self, time, distance):
        self.times.append(float(time))
        self.distances.append(float(distance))

    def __len__(self):
        return len(self.times)

    def fit_rate(self, floor=1e-6, ceiling=0.1):
        times = np.asarray(self.times)
        values = np.asarray(self.distances)
        if not values.size:
            raise InsufficientDecay('Empty decay log')
        keep = (values >= floor) & (values <= ceiling * values[0])
        if np.count_nonzero(keep) < 4:
            raise InsufficientDecay('Distance never decays into [%g, %g*d(0)]' % (floor, ceiling))
        return numerics.fit_exponential_decay(times[keep], values[keep])

    def to_csv(self, stream):
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(['t', 'd'])
        for t, d in zip(self.times, self.distances):
            writer.writerow(['%.17g' % t, '%.17g' % d])


def _implicit_bands(forward, theta, dt):
    bands = theta * dt * forward
    bands[1] += 1.0
    return bands


def evolve_fpe(proc, initial, t_end, dt):
    """Crank-Nicolson steps of the forward equation in flux form, after
    RANNACHER_STEPS fully implicit start-up steps."""
    if not dt > 0 or not t_end >= initial.time:
        raise InputError('evolve_fpe needs dt > 0 and t_end >= the initial time')
    if abs(initial.mass - 1.0) > MASS_TOL:
        raise InputError('Initial density has mass %r' % initial.mass)
    generator = discretize_generator(proc, initial.grid)
    h = generator.h
    forward = generator.forward_bands()
    stationary = generator.density / (np.sum(generator.density) * h)

    schemes = {}
    for theta in (1.0, 0.5):
        schemes[theta] = _implicit_bands(forward, theta, dt)

    p = np.array(initial.density.values, dtype=float)
    time = initial.time
    log = DecayLog()
    log.record(time, np.sum(np.abs(p - stationary)) * h)
    n_steps = int(round((t_end - initial.time) / dt))
    for step in range(n_steps):
        theta = 1.0 if step < RANNACHER_STEPS else 0.5
        rhs = p - (1.0 - theta) * dt * generator.apply_forward(p) if theta < 1 else p
        p = linalg.solve_banded((1, 1), schemes[theta], rhs)
        time = initial.time + (step + 1) * dt
        if np.min(p) < -1e-10:
            raise UnstableStep('Density reached %.3g at t=%g; reduce dt' % (np.min(p), time))
        mass = np.sum(p) * h
        if abs(mass - 1.0) > MASS_TOL:
            raise NumericalFailure('Mass drifted to %r at t=%g' % (mass, time))
        # clipping round-off negatives must not change the mass
        p = np.maximum(p, 0.0)
        p *= mass / (np.sum(p) * h)
        log.record(time, np.sum(np.abs(p - stationary)) * h)

    logger.info('Evolved %d steps to t=%g, L1 distance %.3g', n_steps, time, log.distances[-1])
    return EvolutionState(initial.grid, p, time), log
