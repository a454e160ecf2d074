# -*- coding: utf-8 -*-
from __future__ import unicode_literals

import csv

import numpy as np

from optimal_diffusion import numerics, optimal
from optimal_diffusion.management.base import DiffusionCommand


class Command(DiffusionCommand):
    help = 'Synthesize the fastest-converging diffusion for a stationary density'
    parameters = ('sigma_hat', 'grid_points')

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument('--sigma-hat', dest='sigma_hat', type=float,
                            help='Average variance sigma_hat**2/2 (default: catalog value)')
        parser.add_argument('--grid-points', dest='grid_points', type=int, default=200)

    def run(self, spec, form, parameters):
        proc = optimal.synthesize(spec, self.sigma_hat(spec, form, parameters))
        n = parameters['grid_points'] or 200
        lo, hi = proc.bounds()
        x = np.linspace(lo, hi, n + 2)[1:-1]
        variance = proc.variance_at(x)

        self.write_json('process.json', proc.as_dict())
        with self.open_csv('variance.csv') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['x', 'sigma_sq_half'])
            for xi, vi in zip(x, variance):
                writer.writerow(['%.17g' % xi, '%.17g' % vi])

        positivity = optimal.check_variance_positivity(proc)
        self.write_json('checks.json', {
            'detailed_balance_residual': optimal.verify_detailed_balance(proc, numerics.Grid(x)),
            'variance_positive': bool(positivity.passed),
            'variance_min': positivity.minimum,
            'variance_mean': optimal.check_variance_mean(proc),
            'sigma_hat_sq_half': proc.sigma_hat_sq_half,
        })
        self.stdout.write('lambda1 = %.17g, tau = %.17g' % (proc.lambda1, proc.tau))
