# -*- coding: utf-8 -*-
from __future__ import unicode_literals

from optimal_diffusion import forms, optimal, sim
from optimal_diffusion.management.base import DiffusionCommand

# command-line flag -> SimConfig option
FLAGS = (
    ('dt', 'dt'),
    ('steps', 'n_steps'),
    ('paths', 'n_paths'),
    ('seed', 'seed'),
    ('burn_in', 'burn_in'),
    ('boundary_mode', 'boundary_mode'),
    ('max_lag', 'max_lag'),
    ('threads', 'threads'),
)


def start_value(text):
    if text == sim.STATIONARY:
        return sim.STATIONARY
    return float(text)


class Command(DiffusionCommand):
    help = 'Euler-Maruyama simulation of the optimal process and its relaxation rate'
    parameters = ('sigma_hat', 'x0') + tuple(flag for flag, _ in FLAGS)

    def add_arguments(self, parser):
        super(Command, self).add_arguments(parser)
        parser.add_argument('--sigma-hat', dest='sigma_hat', type=float)
        parser.add_argument('--x0', type=start_value,
                            help="Start of every path (default: m1), or '%s' to draw each from pi"
                            % sim.STATIONARY)
        parser.add_argument('--dt', type=float)
        parser.add_argument('--steps', type=int)
        parser.add_argument('--paths', type=int)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--burn-in', dest='burn_in', type=int)
        parser.add_argument('--boundary-mode', dest='boundary_mode',
                            choices=sim.SimConfig.BOUNDARY_MODES)
        parser.add_argument('--max-lag', dest='max_lag', type=int)
        parser.add_argument('--threads', type=int)

    def run(self, spec, form, parameters):
        options = dict(form.cleaned_data.get('sim') or {})
        for flag, name in FLAGS:
            if parameters.get(flag) is not None:
                options[name] = parameters[flag]
        cfg = forms.read_sim_config(options)
        proc = optimal.synthesize(spec, self.sigma_hat(spec, form, parameters))

        stats = sim.simulate(proc, cfg, x0=parameters.get('x0'))
        estimate = sim.estimate_rate(proc, cfg, stats=stats)

        with self.open_csv('autocorr.csv') as f:
            stats.autocorr_csv(f)
        with self.open_csv('hist.csv') as f:
            stats.hist_csv(f)
        rate = estimate.as_dict()
        rate.update({
            'lambda1': proc.lambda1,
            'config': cfg.as_dict(),
            'moments': stats.as_dict(),
            'total_variation': stats.total_variation(spec),
        })
        self.write_json('rate.json', rate)
        self.stdout.write('rate = %.6g +- %.2g (lambda1 = %.6g)' % (
            estimate.rate, estimate.stderr, proc.lambda1))
