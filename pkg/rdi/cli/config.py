"""
Scenario configuration: YAML files and built-in presets merged into a
validated ScenarioConfig
"""

__author__ = "rdi developers"

import copy
import numbers
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import yaml

from rdi.cli.presets import preset_config
from rdi.cli.sweep import SWEEP_TOLERANCES
from rdi.states.state_factory import PhysicalConstants
from rdi.util.util import ConfigError
from rdi.verification import CHECKS, DEFAULT_TOLERANCES

__all__ = [
    'SECTIONS', 'GridAxis', 'ScenarioConfig', 'VerifyConfig', 'load_config',
    'load_verify_config', 'merge_config', 'read_yaml', 'resolve_threads'
]

SECTIONS = ('scenario', 'parameters', 'constants', 'grid', 'tolerances',
            'output', 'dsl', 'checks', 'seed')

DEFAULT_OUTPUT = {
    'directory': '.',
    'field_map': 'field_map.csv',
    'summary': 'summary.json',
    'report': 'verification.csv'
}

AXES = ('t', 'x', 'y', 'z')

_CONSTANT_FIELDS = ('hbar', 'c', 'e', 'm', 'epsilon_0')

KNOWN_TOLERANCES = set(DEFAULT_TOLERANCES) | set(SWEEP_TOLERANCES)


@dataclass(frozen=True)
class GridAxis:
    '''
    Samples along one coordinate

    Written either as a list of values or as ``{min, max, count}``.
    '''

    values: tuple

    @classmethod
    def parse(cls, name, spec):
        if isinstance(spec, (numbers.Real, str)) and not isinstance(spec, bool):
            return cls((_number('grid.{}'.format(name), spec),))
        if isinstance(spec, (list, tuple)):
            if len(spec) == 0:
                raise ConfigError('grid axis {} needs at least one value'.format(name))
            return cls(tuple(_number('grid.{}'.format(name), v) for v in spec))
        if isinstance(spec, dict):
            missing = {'min', 'max', 'count'} - set(spec)
            if missing:
                raise ConfigError('grid axis {} lacks {}'.format(
                    name, ', '.join(sorted(missing))))
            count = spec['count']
            if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                raise ConfigError(
                    'grid axis {} needs an integer count >= 1, got {!r}'.format(
                        name, count))
            lo = _number('grid.{}.min'.format(name), spec['min'])
            hi = _number('grid.{}.max'.format(name), spec['max'])
            return cls(tuple(float(v) for v in np.linspace(lo, hi, count)))
        raise ConfigError('grid axis {} must be a number, a list or a '
                          '{{min, max, count}} mapping'.format(name))

    def __len__(self):
        return len(self.values)


def _number(where, value):
    # YAML 1.1 reads 1e-8 (no dot) as a string
    if isinstance(value, str):
        try:
            value = float(value)
        except ValueError:
            raise ConfigError('{} must be a number, got {!r}'.format(where, value))
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError('{} must be a number, got {!r}'.format(where, value))
    if not np.isfinite(value):
        raise ConfigError('{} must be finite'.format(where))
    return float(value)


def read_yaml(path):
    """The mapping stored in a YAML file."""
    try:
        with open(path, 'r') as f:
            raw = yaml.safe_load(f)
    except OSError as err:
        raise ConfigError('cannot read config {}: {}'.format(path, err))
    except yaml.YAMLError as err:
        raise ConfigError('config {} is not valid YAML: {}'.format(path, err))
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ConfigError('config {} must hold a mapping'.format(path))
    return raw


def merge_config(base, override):
    '''
    Merge two raw configurations section by section

    Keys of ``override`` win; mappings are merged recursively so a config file
    can change a single parameter of a preset.
    '''
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _constants(section):
    section = dict(section or {})
    units = section.pop('units', 'codata')
    if units == 'codata':
        base = PhysicalConstants.codata()
    elif units == 'natural':
        base = PhysicalConstants.natural()
    else:
        raise ConfigError("constants.units must be 'codata' or 'natural', "
                          "got {!r}".format(units))
    unknown = set(section) - set(_CONSTANT_FIELDS)
    if unknown:
        raise ConfigError('unknown constant {!r}'.format(sorted(unknown)[0]))
    changes = {k: _number('constants.{}'.format(k), v) for k, v in section.items()}
    try:
        return base.replace(**changes)
    except ValueError as err:
        raise ConfigError(str(err))


def _tolerances(section):
    tolerances = {}
    for key, value in (section or {}).items():
        if key not in KNOWN_TOLERANCES:
            raise ConfigError('unknown tolerance {!r}'.format(key))
        value = _number('tolerances.{}'.format(key), value)
        if value <= 0:
            raise ConfigError('tolerance {} must be positive'.format(key))
        tolerances[key] = value
    return tolerances


def _output(section):
    output = dict(DEFAULT_OUTPUT)
    output.update(section or {})
    unknown = set(output) - set(DEFAULT_OUTPUT)
    if unknown:
        raise ConfigError('unknown output key {!r}'.format(sorted(unknown)[0]))
    return output


@dataclass(frozen=True)
class ScenarioConfig:
    '''
    A validated scenario configuration

    Attributes
    ----------

    scenario   : name of a catalog scenario, or 'dsl'

    parameters : dict of scenario parameters (SI numbers or, for curves,
                 expression strings)

    constants  : PhysicalConstants

    grid       : dict of GridAxis keyed by 't', 'x', 'y', 'z'

    tolerances : dict of positive floats

    output     : dict with the keys directory, field_map, summary and report

    dsl        : dict of expression strings (scenario 'dsl' only)
    '''

    scenario: str
    parameters: dict = field(default_factory=dict)
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    grid: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    output: dict = field(default_factory=lambda: dict(DEFAULT_OUTPUT))
    dsl: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw):
        '''
        Validate a raw mapping

        Raises
        ------

        ConfigError
            on unknown sections, malformed grids, non-positive tolerances or
            a missing scenario
        '''
        if not isinstance(raw, dict):
            raise ConfigError('a configuration must be a mapping')
        unknown = set(raw) - set(SECTIONS)
        if unknown:
            raise ConfigError('unknown section {!r}'.format(sorted(unknown)[0]))
        scenario = raw.get('scenario')
        if not isinstance(scenario, str) or not scenario:
            raise ConfigError('the scenario section must name a scenario')

        parameters = dict(raw.get('parameters') or {})
        for key, value in parameters.items():
            if isinstance(value, str):
                try:
                    parameters[key] = float(value)
                except ValueError:
                    pass
            elif not isinstance(value, numbers.Real):
                raise ConfigError('parameter {} must be a number or an '
                                  'expression string'.format(key))

        grid_raw = raw.get('grid') or {}
        if not isinstance(grid_raw, dict):
            raise ConfigError('the grid section must be a mapping')
        unknown = set(grid_raw) - set(AXES)
        if unknown:
            raise ConfigError('unknown grid axis {!r}'.format(sorted(unknown)[0]))
        grid = {axis: GridAxis.parse(axis, grid_raw.get(axis, 0.0)) for axis in AXES}

        tolerances = _tolerances(raw.get('tolerances'))
        output = _output(raw.get('output'))

        dsl = dict(raw.get('dsl') or {})
        if scenario == 'dsl' and not dsl:
            raise ConfigError("scenario 'dsl' needs a dsl section")

        return cls(scenario=scenario,
                   parameters=parameters,
                   constants=_constants(raw.get('constants')),
                   grid=grid,
                   tolerances=tolerances,
                   output=output,
                   dsl=dsl)

    @property
    def shape(self):
        return tuple(len(self.grid[axis]) for axis in AXES)

    def points(self):
        """(t, x, y, z) arrays of the grid, t outermost and z innermost."""
        axes = [np.asarray(self.grid[axis].values) for axis in AXES]
        return tuple(np.meshgrid(*axes, indexing='ij'))

    def path(self, key):
        return os.path.join(self.output['directory'], self.output[key])


def load_config(path=None, preset=None, out=None):
    '''
    Build a ScenarioConfig from a preset and/or a YAML file

    Parameters
    ----------

    path   : str, optional
             YAML file; its keys override those of the preset

    preset : str, optional
             name from :data:`rdi.cli.presets.PRESETS`

    out    : str, optional
             output directory, overriding ``output.directory``

    Returns
    -------

    ScenarioConfig
    '''
    if path is None and preset is None:
        raise ConfigError('give --config or --preset')
    raw = preset_config(preset) if preset is not None else {}
    if path is not None:
        raw = merge_config(raw, read_yaml(path))
    if out is not None:
        raw = merge_config(raw, {'output': {'directory': out}})
    return ScenarioConfig.from_dict(raw)


@dataclass(frozen=True)
class VerifyConfig:
    '''
    Settings of a verification run

    Reads the ``checks``, ``seed``, ``tolerances`` and ``output`` sections;
    a scenario configuration can be reused as is.
    '''

    checks: Optional[tuple] = None
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    output: dict = field(default_factory=lambda: dict(DEFAULT_OUTPUT))

    @classmethod
    def from_dict(cls, raw):
        unknown = set(raw) - set(SECTIONS)
        if unknown:
            raise ConfigError('unknown section {!r}'.format(sorted(unknown)[0]))
        checks = raw.get('checks')
        if checks is not None:
            if isinstance(checks, str) or not isinstance(checks, (list, tuple)):
                raise ConfigError('checks must be a list of check groups')
            for name in checks:
                if name not in CHECKS:
                    raise ConfigError('unknown check group {!r}'.format(name))
            checks = tuple(checks)
        seed = raw.get('seed', 0)
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise ConfigError('seed must be a non-negative integer')
        tolerances = {
            k: v
            for k, v in _tolerances(raw.get('tolerances')).items()
            if k in DEFAULT_TOLERANCES
        }
        return cls(checks, seed, tolerances, _output(raw.get('output')))

    def path(self, key):
        return os.path.join(self.output['directory'], self.output[key])


def load_verify_config(path=None, out=None):
    """VerifyConfig from an optional YAML file; defaults run every check."""
    raw = read_yaml(path) if path is not None else {}
    if out is not None:
        raw = merge_config(raw, {'output': {'directory': out}})
    return VerifyConfig.from_dict(raw)


def resolve_threads(threads=None):
    """--threads, else RDI_THREADS, else 1."""
    if threads is None:
        env = os.environ.get('RDI_THREADS')
        if env is None or env == '':
            return 1
        try:
            threads = int(env)
        except ValueError:
            raise ConfigError('RDI_THREADS must be an integer, got {!r}'.format(env))
    if threads < 1:
        raise ConfigError('the thread count must be at least 1')
    return threads
