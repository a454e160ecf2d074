# -*- coding: utf-8 -*-
from __future__ import unicode_literals

import csv

from optimal_diffusion import conf, optimal, spectral
from optimal_diffusion.management.base import DiffusionCommand


class Command(DiffusionCommand):
    help = 'Low spectrum of the discretized generator of the optimal process'
    parameters = ('sigma_hat', 'k', 'grid_points')

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument('--sigma-hat', dest='sigma_hat', type=float)
        parser.add_argument('--k', type=int, help='Number of eigenvalues (default: SPECTRUM_K)')
        parser.add_argument('--grid-points', dest='grid_points', type=int,
                            help='Cells of the finite-volume grid (default: GRID_POINTS)')

    def run(self, spec, form, parameters):
        proc = optimal.synthesize(spec, self.sigma_hat(spec, form, parameters))
        k = parameters['k'] or conf.get('SPECTRUM_K')
        grid = spectral.default_grid(proc, parameters['grid_points'])
        result = spectral.spectrum(spectral.discretize_generator(proc, grid), k)

        with self.open_csv('spectrum.csv') as f:
            result.to_csv(f)
        rel_err = abs(result.gap - proc.lambda1) / proc.lambda1
        with self.open_csv('comparison.csv') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['lambda1_analytic', 'lambda1_numeric', 'rel_err'])
            writer.writerow(['%.17g' % proc.lambda1, '%.17g' % result.gap, '%.17g' % rel_err])
        self.stdout.write('%.17g, %.17g, %.17g' % (proc.lambda1, result.gap, rel_err))
