# -*- coding: utf-8 -*-
from __future__ import unicode_literals

DEFAULTS = {
    'QUADRATURE_TOL': 1e-10,
    'QUADRATURE_LIMIT': 200,
    'SERIES_TERMS': 10000,
    'SERIES_RTOL': 1e-15,
    'TAIL_CUTOFF': 1e-14,
    'SPECTRAL_TAIL_CUTOFF': 1e-10,
    'GRID_POINTS': 2000,
    'SPECTRUM_K': 4,
    'ENDPOINT_EPS': 1e-8,
    'FIT_WINDOW': (0.05, 0.8),
    'SIM': {
        'dt': 1e-3,
        'n_steps': 10000,
        'n_paths': 100,
        'seed': 20180302,
        'burn_in': 2000,
        'boundary_mode': 'reflect',
    },
}


def get(name):
    """Value of OPTIMAL_DIFFUSION[name] from the Django settings, or the default.

    Works without configured settings so the numerical modules stay usable
    outside a Django project.
    """
    from django.conf import settings
    value = DEFAULTS[name]
    if settings.configured:
        user = getattr(settings, 'OPTIMAL_DIFFUSION', None) or {}
        if name in user:
            if isinstance(value, dict):
                value = dict(value, **user[name])
            else:
                value = user[name]
    return value
