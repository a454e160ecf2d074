# -*- coding: utf-8 -*-
from __future__ import unicode_literals

import io
import json
import numbers

from django import forms

from . import distributions
from .exceptions import ConfigurationError, InputError, NotNormalized, SpecFileError
from .sim import SimConfig


def _is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _is_bound(value):
    return _is_number(value) or value in ('inf', '+inf', '-inf')


class DistributionSpecForm(forms.Form):
    kind = forms.ChoiceField(choices=[(k, k) for k in distributions.KINDS])
    params = forms.JSONField(required=False)
    support = forms.JSONField(required=False)
    grid = forms.JSONField(required=False)
    pdf = forms.JSONField(required=False)
    sigma_hat_sq_half = forms.FloatField(required=False)
    sim = forms.JSONField(required=False)

    def clean_params(self):
        params = self.cleaned_data.get('params') or {}
        if not isinstance(params, dict):
            raise forms.ValidationError('params must map names to numbers')
        for name, value in params.items():
            if not _is_number(value):
                raise forms.ValidationError("params['%s'] is not a number" % name)
        return params

    def clean_support(self):
        support = self.cleaned_data.get('support')
        if support is None:
            return None
        if not (isinstance(support, list) and len(support) == 2
                and all(_is_bound(v) for v in support)):
            raise forms.ValidationError('support must be [lower, upper]')
        return support

    def _clean_table(self, name):
        values = self.cleaned_data.get(name)
        if values is None:
            return None
        if not (isinstance(values, list) and all(_is_number(v) for v in values)):
            raise forms.ValidationError('%s must be a list of numbers' % name)
        return values

    def clean_grid(self):
        return self._clean_table('grid')

    def clean_pdf(self):
        return self._clean_table('pdf')

    def clean_sim(self):
        sim = self.cleaned_data.get('sim') or {}
        if not isinstance(sim, dict):
            raise forms.ValidationError('sim must be a section of simulation options')
        return sim

    def clean(self):
        cleaned_data = super(DistributionSpecForm, self).clean()
        if not self.errors:
            if cleaned_data['kind'] == 'Custom':
                grid, pdf = cleaned_data.get('grid'), cleaned_data.get('pdf')
                if grid is None or pdf is None:
                    self._errors['grid'] = self.error_class(
                        ['Custom densities need both grid and pdf'])
                elif len(grid) != len(pdf):
                    self._errors['pdf'] = self.error_class(
                        ['grid and pdf must have equal length'])
        if not self.errors:
            try:
                self.spec = distributions.build(
                    cleaned_data['kind'], cleaned_data['params'],
                    support=cleaned_data.get('support'),
                    grid=cleaned_data.get('grid'), pdf=cleaned_data.get('pdf'))
            except (InputError, NotNormalized) as e:
                self.add_error(None, '%s: %s' % (type(e).__name__, e))
        return cleaned_data

    def save(self):
        return self.spec


class SimConfigForm(forms.Form):
    dt = forms.FloatField(required=False)
    n_steps = forms.IntegerField(required=False, min_value=1)
    n_paths = forms.IntegerField(required=False, min_value=1)
    seed = forms.IntegerField(required=False, min_value=0)
    burn_in = forms.IntegerField(required=False, min_value=0)
    boundary_mode = forms.ChoiceField(
        required=False, choices=[(m, m) for m in SimConfig.BOUNDARY_MODES])
    max_lag = forms.IntegerField(required=False, min_value=1)
    threads = forms.IntegerField(required=False, min_value=1)

    def clean(self):
        cleaned_data = super(SimConfigForm, self).clean()
        if not self.errors:
            options = dict((k, v) for k, v in cleaned_data.items() if v not in (None, ''))
            try:
                self.config = SimConfig(**options)
            except ConfigurationError as e:
                self.add_error(None, str(e))
        return cleaned_data

    def save(self):
        return self.config


def load_document(path):
    try:
        with io.open(path, encoding='utf-8') as f:
            return json.load(f)
    except (IOError, OSError) as e:
        raise SpecFileError('Cannot read %s: %s' % (path, e))
    except ValueError as e:
        raise SpecFileError('%s is not a valid spec file: %s' % (path, e))


def read_spec(document):
    """The DistributionSpec described by a parsed spec file, and the form
    holding its other sections."""
    if not isinstance(document, dict):
        raise SpecFileError('A spec file holds one JSON object')
    form = DistributionSpecForm(data=document)
    if not form.is_valid():
        raise SpecFileError(form.errors.as_text())
    return form.save(), form


def read_sim_config(options):
    unknown = set(options) - set(SimConfigForm.base_fields)
    if unknown:
        raise ConfigurationError('Unknown simulation options: %s' % ', '.join(sorted(unknown)))
    form = SimConfigForm(data=options)
    if not form.is_valid():
        raise ConfigurationError(form.errors.as_text())
    return form.save()
