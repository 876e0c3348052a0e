"""
Scenarios the command line can run, and the built-in presets
"""

__author__ = "rdi developers"

import copy
from dataclasses import dataclass, field
from typing import Callable, Optional

from rdi.catalog import RotationScenarioParams, TranslationScenarioParams
from rdi.dsl import ExpressionCurve, expression_state
from rdi.physicality import bremsstrahlung_check, synchrotron_check
from rdi.states import (SoftCoreProfile, accelerated_boost_state,
                        boosted_landau, confined_3d_state, nonlinear_state,
                        rotating_confined_3d_state, scalar_state)
from rdi.util.util import ConfigError

__all__ = [
    'Scenario', 'BuiltScenario', 'SCENARIOS', 'PRESETS', 'preset_config',
    'build_scenario'
]

REQUIRED = object()

# parameters that may hold a string
TEXT_PARAMETERS = ('omega', 'path', 'profile', 'kind')


@dataclass(frozen=True)
class BuiltScenario:
    '''
    A scenario ready to be swept

    Attributes
    ----------

    state       : StateParametrization

    kind        : 'electromagnetic' or 'scalar'

    physicality : callable of the ratio threshold returning a
                  PhysicalityVerdict, or None

    kappa       : nonlinear coupling of a scalar inversion
    '''

    state: object
    kind: str = 'electromagnetic'
    physicality: Optional[Callable] = None
    kappa: float = 0.0


@dataclass(frozen=True)
class Scenario:
    '''
    A catalog entry: parameter defaults and the builder of the state

    ``parameters`` maps names to defaults; REQUIRED marks a parameter without
    a default. An open scenario takes any further parameter.
    '''

    name: str
    description: str
    parameters: dict
    builder: Callable = field(repr=False)
    open: bool = False

    def build(self, parameters, constants, dsl=None):
        values = dict(self.parameters)
        unknown = set(parameters) - set(values)
        if unknown and not self.open:
            raise ConfigError('scenario {} has no parameter {!r}'.format(
                self.name,
                sorted(unknown)[0]))
        for key, value in parameters.items():
            if isinstance(value, str) and key not in TEXT_PARAMETERS:
                raise ConfigError('parameter {} must be a number, got {!r}'.format(
                    key, value))
        values.update(parameters)
        missing = [k for k, v in values.items() if v is REQUIRED]
        if missing:
            raise ConfigError('scenario {} needs the parameter {}'.format(
                self.name, missing[0]))
        return self.builder(values, constants, dsl or {})


def _window(p):
    return (p['t_start'], p['t_end'])


def _rotation(p, k, dsl):
    if isinstance(p['omega'], str) and p['omega'] != 'resonant':
        raise ConfigError("omega must be a number or 'resonant'")
    if p['omega'] == 'resonant':
        params = RotationScenarioParams.resonant(p['r0'], p['B0'], k)
    else:
        params = RotationScenarioParams(p['r0'], p['omega'], p['B0'], k)

    def physicality(threshold):
        return synchrotron_check(params, threshold)

    return BuiltScenario(params.state(), physicality=physicality)


def _translation(p, k, dsl):
    if isinstance(p['path'], str):
        path = ExpressionCurve(p['path'], 't', {'L': p['L'], 'T': p['T']}, k)
        window = _window(p) if p['t_end'] is not None else (0.0, p['T'])
        params = TranslationScenarioParams(path, p['B0'], window, k)
    else:
        params = TranslationScenarioParams.sinusoidal(p['L'], p['T'], p['B0'], k)

    def physicality(threshold):
        return bremsstrahlung_check(params, threshold)

    return BuiltScenario(params.state(normalized=bool(p['normalized'])),
                         physicality=physicality)


def _profile(p, k):
    if isinstance(p['profile'], str):
        return ExpressionCurve(p['profile'], 'z', {'xi': p['xi']}, k)
    return SoftCoreProfile(p['xi'])


def _confined(p, k, dsl):
    return BuiltScenario(confined_3d_state(_profile(p, k), p['B0'], p['energy'], k))


def _soft_coulomb(p, k, dsl):
    return BuiltScenario(confined_3d_state(SoftCoreProfile(p['xi']), 0.0, 0.0, k))


def _rotating_confined(p, k, dsl):
    return BuiltScenario(
        rotating_confined_3d_state(p['r0'], p['omega'], p['B0'],
                                   SoftCoreProfile(p['xi']), k))


def _scalar(p, k, dsl):
    return BuiltScenario(scalar_state(p['xi'], p['energy'], k), kind='scalar')


def _nonlinear(p, k, dsl):
    return BuiltScenario(nonlinear_state(p['xi'], k),
                         kind='scalar',
                         kappa=p['kappa'])


def _boosted_landau(p, k, dsl):
    return BuiltScenario(boosted_landau(p['u2'], p['B0'], k))


def _accelerated_boost(p, k, dsl):
    return BuiltScenario(
        accelerated_boost_state(p['E0'], p['B0'], k, window=_window(p)))


def _dsl(p, k, dsl):
    p = dict(p)
    energy = p.pop('energy')
    density_scale = p.pop('density_scale')
    kind = p.pop('kind')
    kappa = p.pop('kappa')
    if kind not in ('electromagnetic', 'scalar'):
        raise ConfigError("kind must be 'electromagnetic' or 'scalar'")
    state = expression_state(dsl, p, k, energy=energy,
                             density_scale=density_scale)
    return BuiltScenario(state, kind=kind, kappa=kappa)


def _scenarios():
    entries = [
        Scenario('rotation',
                 'dispersionless rotation of a Landau packet on a ring of radius r0; '
                 "omega may be 'resonant'", {
                     'r0': REQUIRED,
                     'B0': REQUIRED,
                     'omega': 'resonant'
                 }, _rotation),
        Scenario('translation',
                 'dispersionless translation along y; sinusoidal transfer over L in '
                 'time T or an expression path Y(t)', {
                     'L': REQUIRED,
                     'T': REQUIRED,
                     'B0': REQUIRED,
                     'path': None,
                     'normalized': True,
                     't_start': 0.0,
                     't_end': None
                 }, _translation),
        Scenario('confined', 'stationary state confined along z by an '
                 'electrostatic well and transversally by B0', {
                     'xi': REQUIRED,
                     'B0': 0.0,
                     'energy': 0.0,
                     'profile': None
                 }, _confined),
        Scenario('soft-coulomb', 'soft-core Coulomb well, f(z) = sqrt(xi^2 + z^2)',
                 {'xi': REQUIRED}, _soft_coulomb),
        Scenario('rotating-confined',
                 'rotating packet additionally confined along z', {
                     'r0': REQUIRED,
                     'omega': REQUIRED,
                     'B0': REQUIRED,
                     'xi': REQUIRED
                 }, _rotating_confined),
        Scenario('scalar', 'stationary state held by a scalar potential', {
            'xi': REQUIRED,
            'energy': REQUIRED
        }, _scalar),
        Scenario('nonlinear', 'Gaussian held by a linear plus nonlinear scalar '
                 'interaction', {
                     'xi': REQUIRED,
                     'kappa': 0.0
                 }, _nonlinear),
        Scenario('boosted-landau', 'Landau state boosted with constant proper '
                 'velocity u2 along y', {
                     'u2': REQUIRED,
                     'B0': REQUIRED
                 }, _boosted_landau),
        Scenario('accelerated-boost', 'Landau state boosted by a constant electric '
                 'field E0 along y', {
                     'E0': REQUIRED,
                     'B0': REQUIRED,
                     't_start': 0.0,
                     't_end': 1.0
                 }, _accelerated_boost),
        Scenario('dsl', 'state written in the expression language (dsl section)',
                 {
                     'energy': 0.0,
                     'density_scale': 1.0,
                     'kind': 'electromagnetic',
                     'kappa': 0.0
                 },
                 _dsl,
                 open=True),
    ]
    return {entry.name: entry for entry in entries}


SCENARIOS = _scenarios()


def build_scenario(config):
    '''
    The state and its companions for a ScenarioConfig

    Raises
    ------

    ConfigError
        for an unknown scenario or missing parameters

    SuperluminalError
        when the parameters ask for motion at or above c
    '''
    try:
        scenario = SCENARIOS[config.scenario]
    except KeyError:
        raise ConfigError('unknown scenario {!r}; known: {}'.format(
            config.scenario, ', '.join(SCENARIOS)))
    return scenario.build(config.parameters, config.constants, config.dsl)


def _axis(lo, hi, count):
    return {'min': lo, 'max': hi, 'count': count}


PRESETS = {
    'fig1': {
        'scenario': 'rotation',
        'parameters': {
            'r0': 2e-6,
            'B0': 0.35,
            'omega': -61.55e9
        },
        'grid': {
            't': [0.0],
            'x': _axis(-4e-6, 4e-6, 41),
            'y': _axis(-4e-6, 4e-6, 41),
            'z': [0.0]
        },
    },
    'fig2': {
        'scenario': 'translation',
        'parameters': {
            'L': 10e-6,
            'T': 1e-9,
            'B0': 1.0
        },
        'grid': {
            't': [0.0, 0.505e-9],
            'x': _axis(-4e-6, 4e-6, 21),
            'y': _axis(-2e-6, 12e-6, 36),
            'z': [0.0]
        },
    },
    'soft-coulomb': {
        'scenario': 'soft-coulomb',
        'parameters': {
            'xi': 1.0
        },
        'constants': {
            'units': 'natural'
        },
        'grid': {
            't': [0.0],
            'x': [0.0],
            'y': [0.0],
            'z': _axis(-5.0, 5.0, 101)
        },
    },
    'scalar': {
        'scenario': 'scalar',
        'parameters': {
            'xi': 1e-12,
            'energy': 3.204353e-14
        },
        'grid': {
            't': [0.0],
            'x': [0.0],
            'y': [0.0],
            'z': _axis(-5e-12, 5e-12, 101)
        },
    },
    'nonlinear': {
        'scenario': 'nonlinear',
        'parameters': {
            'xi': 1e-12,
            'kappa': 1e-27
        },
        'grid': {
            't': [0.0],
            'x': [0.0],
            'y': [0.0],
            'z': _axis(-5e-12, 5e-12, 101)
        },
    },
    'boosted-landau': {
        'scenario': 'boosted-landau',
        'parameters': {
            'u2': 0.7,
            'B0': 1.0
        },
        'constants': {
            'units': 'natural'
        },
        'grid': {
            't': [0.0, 1.0],
            'x': _axis(-2.0, 2.0, 21),
            'y': _axis(-2.0, 2.0, 21),
            'z': [0.0]
        },
    },
    # drops the 1/sqrt(u0) amplitude factor; fails the Hermiticity gate
    'broken-translation': {
        'scenario': 'translation',
        'parameters': {
            'L': 1.0,
            'T': 2.0,
            'B0': 1.0,
            'normalized': False
        },
        'constants': {
            'units': 'natural'
        },
        'grid': {
            't': [0.25, 0.5, 0.75],
            'x': _axis(-1.0, 1.0, 11),
            'y': _axis(-1.0, 1.0, 11),
            'z': [0.3]
        },
    },
}


def preset_config(name):
    """A copy of the raw configuration of a preset."""
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise ConfigError('unknown preset {!r}; known: {}'.format(
            name, ', '.join(PRESETS)))
