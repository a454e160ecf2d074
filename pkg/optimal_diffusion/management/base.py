# -*- coding: utf-8 -*-
from __future__ import unicode_literals

import io
import json
import logging
import os

from django.core.management.base import BaseCommand, CommandError

from .. import __version__, forms, pearson
from ..exceptions import (
    InputError, NumericalError, SpecFileError, VerificationError
)
from ..manifest import RunManifest

logger = logging.getLogger(__name__)

EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_VERIFICATION = 4


def default_sigma_hat(spec):
    """The catalog's average variance for a cataloged kind, else None."""
    if spec.kind in pearson.ROWS:
        return pearson.row(pearson.ROWS[spec.kind], spec.params).sigma_hat_sq_half
    if spec.kind == 'CubicPearson':
        return spec.average_variance()
    return None


class DiffusionCommand(BaseCommand):
    """Shared plumbing: spec file or manifest in, run_manifest.json first,
    results under --out, library errors mapped to exit codes."""

    uses_spec = True
    # option names recorded in the manifest
    parameters = ()

    def add_arguments(self, parser):
        if self.uses_spec:
            parser.add_argument('spec_file', nargs='?', help='JSON distribution spec')
        parser.add_argument('--out', help='Output directory (default: current directory)')
        parser.add_argument('--manifest', help='Repeat the run recorded in this run_manifest.json')

    def handle(self, *args, **options):
        try:
            self.execute_run(options)
        except InputError as e:
            raise CommandError('%s: %s' % (type(e).__name__, e), returncode=EXIT_INPUT)
        except NumericalError as e:
            raise CommandError('%s: %s' % (type(e).__name__, e), returncode=EXIT_NUMERICAL)
        except VerificationError as e:
            raise CommandError('%s: %s' % (type(e).__name__, e), returncode=EXIT_VERIFICATION)

    def execute_run(self, options):
        document = None
        spec_path = options.get('spec_file')
        if options.get('manifest'):
            manifest = RunManifest.load(options['manifest'])
            if manifest.command != self.command_name:
                raise SpecFileError('Manifest was written by %s, not %s' % (
                    manifest.command, self.command_name))
            for name in self.parameters:
                options[name] = manifest.parameters.get(name)
            document = manifest.spec
            spec_path = manifest.spec_path
            options['out'] = options.get('out') or manifest.out_dir
        elif self.uses_spec:
            if not spec_path:
                raise SpecFileError('A spec file or --manifest is required')
            document = forms.load_document(spec_path)

        out_dir = options.get('out') or '.'
        if not os.path.isdir(out_dir):
            os.makedirs(out_dir)
        self.out_dir = out_dir

        spec, form = (forms.read_spec(document) if self.uses_spec else (None, None))
        parameters = dict((name, options.get(name)) for name in self.parameters)
        RunManifest(self.command_name, spec_path, out_dir, __version__, parameters,
                    seed=parameters.get('seed'), spec=document).write()
        self.run(spec, form, parameters)

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def run(self, spec, form, parameters):
        raise NotImplementedError

    def sigma_hat(self, spec, form, parameters):
        value = parameters.get('sigma_hat')
        if value is None and form is not None:
            value = form.cleaned_data.get('sigma_hat_sq_half')
        if value is None:
            value = default_sigma_hat(spec)
        if value is None:
            raise InputError('--sigma-hat is required for %s densities' % spec.kind)
        return value

    def path(self, name):
        return os.path.join(self.out_dir, name)

    def write_json(self, name, data):
        with io.open(self.path(name), 'w', encoding='utf-8') as f:
            f.write(json.dumps(data, indent=2, sort_keys=True))
        logger.info('Wrote %s', self.path(name))

    def open_csv(self, name):
        logger.info('Writing %s', self.path(name))
        return io.open(self.path(name), 'w', encoding='utf-8', newline='')
