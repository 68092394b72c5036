"""JSON run configuration for the command-line tools.

A configuration file holds up to six sections. Every key is optional;
missing keys take the defaults below (the fiber link of the reference
analysis), unknown sections or keys are rejected.

    {
      "channel": {"alpha_db_per_km": 0.2, "eta_detector": 0.1, ...},
      "analysis": {"protocols": ["TS2", "TS3"], "v_a_values": [1.0, 0.95, 0.9], ...},
      "rates": {"sources": ["SinglePhoton", "FaintNoDecoy", "FaintDecoy"], ...},
      "simulation": {"protocol": "TS2", "n_pulses": 1000000, "seed": 0, ...},
      "attack_optimize": {"protocol": "TS2", "q": 0.05, "v_a": 0.9, ...},
      "output": {"path": null}
    }
"""
import copy
import json
import numbers
from collections import OrderedDict

import numpy as np

from tempokey import error
from tempokey.channel.fiber import ChannelParams
from tempokey.montecarlo.simulator import SimConfig
from tempokey.protocols.kinds import ProtocolKind
from tempokey.rates.pulse_rates import DEFAULT_DECOY_MU, SourceMode

DEFAULTS = OrderedDict([
    ('channel', OrderedDict([
        ('alpha_db_per_km', 0.2),
        ('length_km', 0.0),
        ('eta_detector', 0.1),
        ('p_dark', 1e-7),
        ('v_a', 1.0),
        ('q_a', 0.02),
    ])),
    ('analysis', OrderedDict([
        ('protocols', ['TS2', 'TS3']),
        ('v_a_values', [1.0, 0.95, 0.9]),
        ('q_min', 0.0),
        ('q_max', 0.25),
        ('q_step', 0.005),
    ])),
    ('rates', OrderedDict([
        ('sources', ['SinglePhoton', 'FaintNoDecoy', 'FaintDecoy']),
        ('protocol', 'TS2'),
        ('l_min', 0.0),
        ('l_max', 300.0),
        ('l_step', 5.0),
        ('faint_mu', None),
        ('exact_multiphoton', False),
        ('decoy_mu', DEFAULT_DECOY_MU),
    ])),
    ('simulation', OrderedDict([
        ('protocol', 'TS2'),
        ('n_pulses', 10 ** 6),
        ('seed', 0),
        ('attack', None),
        ('measure_coherence_prob', 0.5),
        ('interferometer_phases', [0.0, float(np.pi)]),
        ('coherence_fraction', 0.5),
        ('coherence_channel', 'depolarizing'),
        ('block_size', 1 << 16),
        ('num_workers', 1),
        ('mp_context', None),
    ])),
    ('attack_optimize', OrderedDict([
        ('protocol', 'TS2'),
        ('q', 0.05),
        ('v_a', 0.9),
        ('grid_resolution', 200),
    ])),
    ('output', OrderedDict([
        ('path', None),
    ])),
])

# Keys that may be null.
_NULLABLE = {('rates', 'faint_mu'), ('simulation', 'attack'), ('output', 'path'), ('simulation', 'seed'), ('simulation', 'mp_context')}


def _is_number(value):
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _check_type(section, key, value, default):
    where = '{}.{}'.format(section, key)
    if value is None:
        if (section, key) in _NULLABLE:
            return
        raise error.ConfigError('{} may not be null'.format(where))
    if isinstance(default, bool):
        ok = isinstance(value, bool)
    elif isinstance(default, int):
        ok = isinstance(value, numbers.Integral) and not isinstance(value, bool)
    elif isinstance(default, float):
        ok = _is_number(value)
    elif isinstance(default, list):
        ok = isinstance(value, list) and len(value) > 0
        if ok and _is_number(default[0]):
            ok = all(_is_number(v) for v in value)
    else:
        ok = _is_number(value) if (section, key) == ('rates', 'faint_mu') else isinstance(value, str)
    if not ok:
        raise error.ConfigError('{} has the wrong type or is empty: {!r}'.format(where, value))


def grid(lo, hi, step, name):
    """lo, lo + step, ... up to hi inclusive; ValidationError when empty."""
    if not (step > 0 and lo <= hi):
        raise error.ValidationError('Empty {} grid: min={}, max={}, step={}'.format(name, lo, hi, step))
    return lo + step * np.arange(int(np.floor((hi - lo) / step + 1e-9)) + 1)


class RunConfig(object):
    """Validated configuration; sections are plain dicts."""

    def __init__(self, data=None):
        data = {} if data is None else data
        if not isinstance(data, dict):
            raise error.ConfigError('Configuration must be a JSON object, got {}'.format(type(data).__name__))
        unknown = sorted(set(data) - set(DEFAULTS))
        if unknown:
            raise error.ConfigError('Unknown configuration sections: {}'.format(unknown))
        self.sections = OrderedDict()
        for section, defaults in DEFAULTS.items():
            given = data.get(section, {})
            if not isinstance(given, dict):
                raise error.ConfigError('Section {!r} must be an object'.format(section))
            unknown = sorted(set(given) - set(defaults))
            if unknown:
                raise error.ConfigError('Unknown keys in section {!r}: {}'.format(section, unknown))
            merged = copy.deepcopy(defaults)
            for key, value in given.items():
                _check_type(section, key, value, defaults[key])
                merged[key] = value
            self.sections[section] = merged
        self._validate()

    @classmethod
    def load(cls, path):
        try:
            with open(path, encoding='utf-8') as f:
                data = json.load(f)
        except (IOError, OSError) as e:
            raise error.ConfigError('Cannot read configuration {}: {}'.format(path, e))
        except ValueError as e:
            raise error.ConfigError('Configuration {} is not valid JSON: {}'.format(path, e))
        return cls(data)

    def __getitem__(self, section):
        return self.sections[section]

    def _validate(self):
        self.channel()
        self.protocols()
        for v_a in self['analysis']['v_a_values']:
            if not _is_number(v_a) or not 0 <= v_a <= 1:
                raise error.ValidationError('analysis.v_a_values must lie in [0, 1], got {!r}'.format(v_a))
        self.sources()
        ProtocolKind.parse(self['rates']['protocol'])
        ProtocolKind.parse(self['attack_optimize']['protocol'])
        self.simulation()

    def override(self, seed=None, out=None):
        """Apply command-line flags, which win over the file."""
        if seed is not None:
            self['simulation']['seed'] = seed
        if out is not None:
            self['output']['path'] = out
        self._validate()
        return self

    def channel(self):
        return ChannelParams(**self['channel'])

    def protocols(self):
        return [ProtocolKind.parse(p) for p in self['analysis']['protocols']]

    def sources(self):
        return [SourceMode.parse(s) for s in self['rates']['sources']]

    def q_grid(self):
        a = self['analysis']
        return grid(a['q_min'], a['q_max'], a['q_step'], 'Q')

    def model_kwargs(self, source):
        r = self['rates']
        if source is SourceMode.FAINT_NO_DECOY:
            return {'mu': r['faint_mu'], 'exact_multiphoton': r['exact_multiphoton']}
        if source is SourceMode.FAINT_DECOY:
            return {'mu': r['decoy_mu']}
        return {}

    def simulation(self):
        """SimConfig for the simulate command; a null seed is drawn once and kept."""
        s = dict(self['simulation'])
        s['interferometer_phases'] = tuple(s['interferometer_phases'])
        sim = SimConfig(channel=self.channel(), **s)
        self['simulation']['seed'] = sim.seed
        return sim

    def output_path(self):
        return self['output']['path']

    def to_dict(self):
        return copy.deepcopy(self.sections)

    def echo(self):
        """The configuration as recorded in outputs: every section but ``output``,
        so the same run written to two places produces identical bytes."""
        sections = self.to_dict()
        del sections['output']
        return sections
