# -*- coding: utf-8 -*-
from __future__ import unicode_literals

import csv
import json

from django.core.management.base import CommandError

from optimal_diffusion import forms, pearson
from optimal_diffusion.exceptions import RowMismatch, SpecFileError
from optimal_diffusion.management.base import EXIT_VERIFICATION, DiffusionCommand

COLUMNS = ['name', 'params', 'm1', 'var', 'lambda1', 'sigma_hat_sq_half', 'verified']


def requested_rows(params_file):
    """(row name, params) pairs: every row at its defaults, then the user's sets."""
    rows = [(name, pearson.DEFAULT_PARAMS[name]) for name in pearson.ROW_NAMES]
    if params_file:
        extra = forms.load_document(params_file)
        if not isinstance(extra, list):
            raise SpecFileError('A params file holds a list of {"row": ..., "params": {...}}')
        for item in extra:
            try:
                rows.append((pearson.row_name(item['row']), dict(item.get('params') or {})))
            except (KeyError, TypeError):
                raise SpecFileError('Bad params entry %r' % (item,))
    return rows


class Command(DiffusionCommand):
    help = 'Reproduce the catalog of optimal Pearson diffusions as table1.csv'
    uses_spec = False
    parameters = ('params_file', 'strict')

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument('--params-file', dest='params_file',
                            help='JSON list of extra parameter sets')
        parser.add_argument('--strict', action='store_true',
                            help='Exit with status 4 when a row fails verification')

    def run(self, spec, form, parameters):
        failures = []
        with self.open_csv('table1.csv') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(COLUMNS)
            for name, params in requested_rows(parameters.get('params_file')):
                row = pearson.row(name, params)
                try:
                    report = pearson.verify_row_against_theorem1(row)
                except RowMismatch as e:
                    failures.append(str(e))
                    stats = row.distribution().moments()
                    report = {'m1': stats.m1, 'var': stats.variance, 'lambda1': row.lambda1,
                              'sigma_hat_sq_half': row.sigma_hat_sq_half, 'verified': False}
                writer.writerow([
                    row.name, json.dumps(row.params, sort_keys=True),
                    '%.17g' % report['m1'], '%.17g' % report['var'],
                    '%.17g' % report['lambda1'], '%.17g' % report['sigma_hat_sq_half'],
                    'true' if report['verified'] else 'false',
                ])
        for message in failures:
            self.stderr.write(message)
        if failures and parameters.get('strict'):
            raise CommandError('%d row(s) failed verification' % len(failures),
                               returncode=EXIT_VERIFICATION)
        self.stdout.write('table1.csv: %d row(s) failed verification' % len(failures))
