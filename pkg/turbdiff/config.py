#------------------------------------------------------------------------------
#
# Copyright (c) turbdiff contributors.
# All rights reserved.
#
# This code is licensed under the MIT License.
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files(the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and / or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions :
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
# THE SOFTWARE.
#
#------------------------------------------------------------------------------

'''Run configuration: one INI-style text format parsed against a typed schema.

Every key has a type and a default (or is required). Unknown sections or keys
are errors, and ``serialize`` emits the canonical text that ``parse`` reads
back into an equal RunConfig.
'''
import configparser

from . import analysis
from . import argument
from . import spectrum
from . import tracer
from .constants import (CorrectorOp, Csv, IntegrationMethod, ScalingParameter, ShapeKind)
from .turbdiff_error import ConfigError

REQUIRED = object()
AUTO = 'auto'


class _Key(object):  # pylint: disable=too-few-public-methods
    def __init__(self, kind, default=REQUIRED):
        self.kind = kind
        self.default = default


# kinds
INT = 'int'
FLOAT = 'float'
STR = 'str'
BOOL = 'bool'
FLOAT_LIST = 'float_list'
STR_LIST = 'str_list'
FLOAT_OR_AUTO = 'float_or_auto'

SCHEMA = {
    'model': {
        'd': _Key(INT, 2),
        'alpha': _Key(FLOAT),
        'beta': _Key(FLOAT),
        'cutoff': _Key(FLOAT, 1.0),
        'shape': _Key(STR, ShapeKind.INDICATOR),
        'shape_lo': _Key(FLOAT, 0.0),
        'shape_hi': _Key(FLOAT, 1.0),
        'shape_center': _Key(FLOAT, None),
        'shape_width': _Key(FLOAT, None),
        'shape_knots': _Key(FLOAT_LIST, None),
        'shape_values': _Key(FLOAT_LIST, None),
        'seed': _Key(INT, 0),
        },
    'field': {
        'n_shells': _Key(INT, 32),
        'modes_per_shell': _Key(INT, 8),
        'k_min_ratio': _Key(FLOAT, 1e-3),
        },
    'integration': {
        'dt': _Key(FLOAT_OR_AUTO, AUTO),
        't_final': _Key(FLOAT, 100.0),
        'sample_every': _Key(INT, 1),
        'method': _Key(STR, IntegrationMethod.RK4),
        'freeze_field': _Key(BOOL, False),
        'max_displacement': _Key(FLOAT, None),
        'eps': _Key(FLOAT, 1.0),
        },
    'ensemble': {
        'n_traj': _Key(INT, 200),
        'master_seed': _Key(INT, 0),
        },
    'analysis': {
        'window_lo': _Key(FLOAT, None),
        'window_hi': _Key(FLOAT, None),
        'strict_tail': _Key(BOOL, False),
        },
    'output': {
        'dir': _Key(STR, 'out'),
        'formats': _Key(STR_LIST, ['csv', 'json']),
        },
    'kubo': {
        'eps_grid': _Key(FLOAT_LIST, [1.0, 0.1, 0.01, 1e-3, 1e-4]),
        },
    'sweep': {
        'alpha_grid': _Key(FLOAT_LIST, [0.2, 0.5, 0.8]),
        'beta_grid': _Key(FLOAT_LIST, [0.2, 0.5, 0.8]),
        'simulate': _Key(BOOL, False),
        },
    'corrector': {
        'op': _Key(STR, CorrectorOp.CHI1),
        'parameter': _Key(STR, ScalingParameter.EPS),
        'grid': _Key(FLOAT_LIST, [1e-1, 1e-2, 1e-3, 1e-4]),
        'deepen': _Key(BOOL, False),
        },
    'validate': {
        'n_realizations': _Key(INT, 10000),
        'times': _Key(FLOAT_LIST, [0.0, 0.5, 1.0, 2.0]),
        'ou_steps': _Key(INT, 100000),
        },
    }

OUTPUT_FORMATS = ('csv', 'json', 'npz')
_TRUE = ('true', 'yes', 'on', '1')
_FALSE = ('false', 'no', 'off', '0')


def _convert(kind, text):
    text = text.strip()
    if kind == INT:
        return int(text)
    if kind == FLOAT:
        return float(text)
    if kind == FLOAT_OR_AUTO:
        return AUTO if text.lower() == AUTO else float(text)
    if kind == BOOL:
        if text.lower() in _TRUE:
            return True
        if text.lower() in _FALSE:
            return False
        raise ValueError("not a boolean: {!r}".format(text))
    if kind == FLOAT_LIST:
        return [float(item) for item in text.split(',') if item.strip()]
    if kind == STR_LIST:
        return [item.strip() for item in text.split(',') if item.strip()]
    return text

def _format(kind, value):
    if kind in (FLOAT, FLOAT_OR_AUTO) and value != AUTO:
        return Csv.FLOAT_FORMAT.format(value)
    if kind == BOOL:
        return 'true' if value else 'false'
    if kind == FLOAT_LIST:
        return ', '.join(Csv.FLOAT_FORMAT.format(item) for item in value)
    if kind == STR_LIST:
        return ', '.join(value)
    return str(value)


class RunConfig(object):
    '''Resolved configuration: every schema key present, defaults filled in.'''

    def __init__(self, values):
        self.values = values

    def __getitem__(self, section):
        return self.values[section]

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.values == other.values

    def __ne__(self, other):
        return not self == other

    def with_seed(self, seed):
        '''Override both the model seed and the ensemble master seed.'''
        argument.validate_seed(seed)
        values = {section: dict(keys) for section, keys in self.values.items()}
        values['model']['seed'] = seed
        values['ensemble']['master_seed'] = seed
        return RunConfig(values)

    def shape(self):
        model = self.values['model']
        kind = model['shape']
        if kind == ShapeKind.INDICATOR:
            return spectrum.ShapeFn.indicator(model['shape_lo'], model['shape_hi'])
        if kind == ShapeKind.BUMP:
            return spectrum.ShapeFn.bump(model['shape_center'], model['shape_width'])
        if kind == ShapeKind.TABULATED:
            return spectrum.ShapeFn.tabulated(model['shape_knots'], model['shape_values'])
        raise ValueError("unknown shape {!r}".format(kind))

    def model_params(self):
        model = self.values['model']
        return spectrum.ModelParams(model['d'], model['alpha'], model['beta'], model['cutoff'],
                                    self.shape(), model['seed'])

    def mode_config(self):
        section = self.values['field']
        return tracer.ModeConfig(section['n_shells'], section['modes_per_shell'],
                                 section['k_min_ratio'])

    def resolve_dt(self, params, log_context=None):
        '''The configured dt, or tracer.default_dt for these params when it says auto.'''
        dt = self.values['integration']['dt']
        if dt == AUTO:
            return tracer.default_dt(params, log_context)
        return dt

    def integration_config(self, dt):
        '''IntegrationConfig with dt resolved by the caller when the file says auto.'''
        section = self.values['integration']
        return tracer.IntegrationConfig(dt, section['t_final'], section['sample_every'],
                                        section['method'], section['freeze_field'],
                                        section['max_displacement'], section['eps'])

    def window(self):
        section = self.values['analysis']
        if section['window_lo'] is None or section['window_hi'] is None:
            return None
        return section['window_lo'], section['window_hi']

    def to_dict(self):
        return {section: dict(keys) for section, keys in self.values.items()}


def _check(problems, key, check):
    try:
        check()
    except (ValueError, KeyError, TypeError) as exp:
        problems.append('{}: {}'.format(key, exp))
        return False
    return True

def validate(config, log_context=None):
    '''Run every module precondition the config feeds; raise ConfigError listing all failures.'''
    problems = []
    model_ok = _check(problems, 'model', config.model_params)
    _check(problems, 'field', config.mode_config)

    integration = config['integration']
    dt = integration['dt']
    if dt == AUTO:
        dt = config.resolve_dt(config.model_params(), log_context) if model_ok else integration['t_final']
    integration_ok = _check(problems, 'integration', lambda: config.integration_config(dt))

    ensemble = config['ensemble']
    _check(problems, 'ensemble.n_traj', lambda: argument.validate_positive_int(ensemble['n_traj'], 'n_traj'))
    _check(problems, 'ensemble.master_seed', lambda: argument.validate_seed(ensemble['master_seed']))
    window = config.window()
    window_ok = window is None or _check(problems, 'analysis.window',
                                         lambda: argument.validate_window(window))
    # the fit window has to hold enough samples of the run it will be applied to
    if model_ok and integration_ok and window_ok:
        times = config.integration_config(dt).times
        _check(problems, 'analysis.window', lambda: analysis.check_window(times, window))

    for fmt in config['output']['formats']:
        if fmt not in OUTPUT_FORMATS:
            problems.append('output.formats: unknown format {!r}'.format(fmt))

    _check(problems, 'kubo.eps_grid', lambda: argument.validate_grid(config['kubo']['eps_grid'], 'eps_grid'))
    for name in ('alpha_grid', 'beta_grid'):
        grid = config['sweep'][name]
        if not grid:
            problems.append('sweep.{}: empty grid'.format(name))

    corrector = config['corrector']
    if corrector['op'] not in (CorrectorOp.CHI1, CorrectorOp.GRAD_CHI1):
        problems.append('corrector.op: unknown operation {!r}'.format(corrector['op']))
    if corrector['parameter'] not in (ScalingParameter.EPS, ScalingParameter.LAMBDA):
        problems.append('corrector.parameter: unknown parameter {!r}'.format(corrector['parameter']))
    _check(problems, 'corrector.grid', lambda: argument.validate_grid(corrector['grid'], 'grid'))

    section = config['validate']
    _check(problems, 'validate.n_realizations',
           lambda: argument.validate_positive_int(section['n_realizations'], 'n_realizations'))
    _check(problems, 'validate.ou_steps',
           lambda: argument.validate_positive_int(section['ou_steps'], 'ou_steps'))
    for t in section['times']:
        _check(problems, 'validate.times', lambda t=t: argument.validate_nonnegative(t, 'time'))

    if problems:
        raise ConfigError("Invalid configuration: " + '; '.join(problems), {'problems': problems})
    return config


def parse(text):
    '''Parse config text into a RunConfig; every problem is reported at once.'''
    parser = configparser.ConfigParser(interpolation=None, default_section='__defaults__')
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exp:
        raise ConfigError("Malformed configuration: {}".format(exp), {'problems': [str(exp)]})

    unknown = []
    problems = []
    values = {}
    for section in parser.sections():
        if section not in SCHEMA:
            unknown.append(section)
            continue
        for key in parser[section]:
            if key not in SCHEMA[section]:
                unknown.append('{}.{}'.format(section, key))

    for section, keys in SCHEMA.items():
        values[section] = {}
        for key, entry in keys.items():
            if parser.has_option(section, key):
                try:
                    values[section][key] = _convert(entry.kind, parser.get(section, key))
                except ValueError as exp:
                    problems.append('{}.{}: {}'.format(section, key, exp))
            elif entry.default is REQUIRED:
                problems.append('{}.{}: required key is missing'.format(section, key))
            else:
                default = entry.default
                values[section][key] = list(default) if isinstance(default, list) else default

    if unknown:
        raise ConfigError("Unknown configuration keys: " + ', '.join(unknown), {'unknown': unknown})
    if problems:
        raise ConfigError("Invalid configuration: " + '; '.join(problems), {'problems': problems})
    return RunConfig(values)

def load(path):
    with open(path, 'r') as handle:
        return parse(handle.read())

def serialize(config):
    '''Canonical text: sections in schema order, keys sorted, None values omitted.'''
    lines = []
    for section in SCHEMA:
        lines.append('[{}]'.format(section))
        for key in sorted(SCHEMA[section]):
            value = config[section].get(key)
            if value is None:
                continue
            lines.append('{} = {}'.format(key, _format(SCHEMA[section][key].kind, value)))
        lines.append('')
    return '\n'.join(lines)
