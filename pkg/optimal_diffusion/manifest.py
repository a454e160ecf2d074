# -*- coding: utf-8 -*-
from __future__ import unicode_literals

import io
import json
import os

from django.utils import timezone

from .exceptions import SpecFileError

FILENAME = 'run_manifest.json'


class RunManifest(object):
    """Everything needed to repeat a command run: written before any result."""

    def __init__(self, command, spec_path, out_dir, version, parameters,
                 seed=None, spec=None, timestamp=None):
        self.command = command
        self.spec_path = spec_path
        self.out_dir = out_dir
        self.version = version
        self.parameters = parameters
        self.seed = seed
        self.spec = spec
        self.timestamp = timestamp or timezone.now().isoformat()

    def as_dict(self):
        return {
            'command': self.command,
            'spec_path': self.spec_path,
            'out_dir': self.out_dir,
            'version': self.version,
            'seed': self.seed,
            'timestamp': self.timestamp,
            'parameters': self.parameters,
            'spec': self.spec,
        }

    def write(self):
        path = os.path.join(self.out_dir, FILENAME)
        with io.open(path, 'w', encoding='utf-8') as f:
            f.write(json.dumps(self.as_dict(), indent=2, sort_keys=True))
        return path

    @classmethod
    def load(cls, path):
        try:
            with io.open(path, encoding='utf-8') as f:
                data = json.load(f)
        except (IOError, OSError, ValueError) as e:
            raise SpecFileError('Cannot read manifest %s: %s' % (path, e))
        try:
            return cls(data['command'], data.get('spec_path'), data['out_dir'],
                       data['version'], data['parameters'], seed=data.get('seed'),
                       spec=data.get('spec'), timestamp=data.get('timestamp'))
        except (KeyError, TypeError) as e:
            raise SpecFileError('Manifest %s lacks %s' % (path, e))
