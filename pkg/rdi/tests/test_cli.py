import contextlib
import io
import json
import os
import tempfile
import unittest
from unittest import mock

import numpy as np
import yaml
from rdi.cli import (EXIT_CONFIG, EXIT_NON_PHYSICAL, EXIT_OK, FIELD_MAP_COLUMNS,
                     PRESETS, SCALAR_MAP_COLUMNS, SCENARIOS, FieldMapSweep,
                     GridAxis, ScenarioConfig, build_scenario, load_config,
                     load_verify_config, main, merge_config, read_yaml,
                     resolve_threads)
from rdi.util.util import ConfigError, SuperluminalError


def _write_yaml(directory, raw, name='config.yml'):
    path = os.path.join(directory, name)
    with open(path, 'w') as f:
        yaml.safe_dump(raw, f)
    return path


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class Config_Tester(unittest.TestCase):
    def test_Config_presets(self):
        config = load_config(preset='fig1')
        self.assertEqual(config.scenario, 'rotation')
        self.assertEqual(config.shape, (1, 41, 41, 1))
        np.testing.assert_allclose(config.grid['x'].values[0], -4e-6)
        self.assertEqual(config.constants.c, 299792458.0)
        t, x, y, z = config.points()
        self.assertEqual(x.shape, (1, 41, 41, 1))
        for name in PRESETS:
            build_scenario(load_config(preset=name))

    def test_Config_file_overrides_preset(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = _write_yaml(tmp, {
                'parameters': {'B0': 0.5},
                'tolerances': {'hermiticity': '1e-6'},
                'output': {'field_map': 'map.csv'}
            })
            config = load_config(path, 'fig1', out=tmp)
        self.assertEqual(config.parameters, {'r0': 2e-6, 'B0': 0.5, 'omega': -61.55e9})
        self.assertEqual(config.tolerances, {'hermiticity': 1e-6})
        self.assertEqual(config.path('field_map'), os.path.join(tmp, 'map.csv'))
        self.assertEqual(config.output['summary'], 'summary.json')

    def test_Config_yaml_exponents(self):
        # YAML 1.1 reads 1e-8 as a string
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'c.yml')
            with open(path, 'w') as f:
                f.write('scenario: soft-coulomb\nparameters: {xi: 1e0}\n'
                        'tolerances: {hermiticity: 1e-8}\n'
                        'grid: {z: {min: -1e0, max: 1e0, count: 3}}\n')
            config = load_config(path)
        self.assertEqual(config.parameters['xi'], 1.0)
        self.assertEqual(config.tolerances['hermiticity'], 1e-8)
        self.assertEqual(config.grid['z'].values, (-1.0, 0.0, 1.0))

    def test_Config_merge(self):
        merged = merge_config({'a': {'b': 1, 'c': 2}, 'd': 3}, {'a': {'b': 5}})
        self.assertEqual(merged, {'a': {'b': 5, 'c': 2}, 'd': 3})
        self.assertEqual(merge_config({'a': 1}, None), {'a': 1})

    def test_Config_grid_axis(self):
        self.assertEqual(GridAxis.parse('x', 0.5).values, (0.5, ))
        self.assertEqual(GridAxis.parse('x', [1, 2]).values, (1.0, 2.0))
        self.assertEqual(len(GridAxis.parse('x', {'min': 0, 'max': 1, 'count': 5})), 5)
        for bad in ([], {'min': 0, 'max': 1}, {'min': 0, 'max': 1, 'count': 0},
                    {'min': 0, 'max': 1, 'count': 2.5}, [float('nan')], True, 'x'):
            with self.assertRaises(ConfigError):
                GridAxis.parse('x', bad)

    def test_Config_errors(self):
        bad = [
            {},
            {'scenario': 'rotation', 'colour': 1},
            {'scenario': 'rotation', 'grid': {'w': [0]}},
            {'scenario': 'rotation', 'tolerances': {'hermiticity': -1}},
            {'scenario': 'rotation', 'tolerances': {'snug': 1e-3}},
            {'scenario': 'rotation', 'constants': {'units': 'gaussian'}},
            {'scenario': 'rotation', 'constants': {'hbar': 0}},
            {'scenario': 'rotation', 'constants': {'g': 2}},
            {'scenario': 'rotation', 'output': {'plot': 'a.png'}},
            {'scenario': 'rotation', 'parameters': {'r0': [1, 2]}},
            {'scenario': 'dsl'},
        ]
        for raw in bad:
            with self.assertRaises(ConfigError):
                ScenarioConfig.from_dict(raw)
        with self.assertRaises(ConfigError):
            load_config()
        with self.assertRaises(ConfigError):
            load_config(preset='fig3')

    def test_Config_read_yaml(self):
        with tempfile.TemporaryDirectory() as tmp:
            listing = _write_yaml(tmp, [1, 2])
            with self.assertRaises(ConfigError):
                read_yaml(listing)
            broken = os.path.join(tmp, 'broken.yml')
            with open(broken, 'w') as f:
                f.write('scenario: [rotation\n')
            with self.assertRaises(ConfigError):
                read_yaml(broken)
            with self.assertRaises(ConfigError):
                read_yaml(os.path.join(tmp, 'missing.yml'))
            empty = os.path.join(tmp, 'empty.yml')
            open(empty, 'w').close()
            self.assertEqual(read_yaml(empty), {})

    def test_Config_verify(self):
        config = load_verify_config()
        self.assertIsNone(config.checks)
        self.assertEqual(config.seed, 0)
        with tempfile.TemporaryDirectory() as tmp:
            path = _write_yaml(tmp, {'checks': ['resonance'], 'seed': 4,
                                     'tolerances': {'velocity': 1e-9,
                                                    'physicality ratio': 1e-2}})
            config = load_verify_config(path, out=tmp)
            self.assertEqual(config.checks, ('resonance', ))
            self.assertEqual(config.tolerances, {'velocity': 1e-9})
            self.assertEqual(config.path('report'), os.path.join(tmp, 'verification.csv'))
            for raw in ({'checks': ['spiral']}, {'checks': 'resonance'}, {'seed': -1},
                        {'seed': 1.5}):
                with self.assertRaises(ConfigError):
                    load_verify_config(_write_yaml(tmp, raw, 'bad.yml'))

    def test_Config_threads(self):
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(resolve_threads(), 1)
        with mock.patch.dict(os.environ, {'RDI_THREADS': '3'}):
            self.assertEqual(resolve_threads(), 3)
            self.assertEqual(resolve_threads(2), 2)
        with mock.patch.dict(os.environ, {'RDI_THREADS': 'many'}):
            with self.assertRaises(ConfigError):
                resolve_threads()
        with self.assertRaises(ConfigError):
            resolve_threads(0)


class Scenarios_Tester(unittest.TestCase):
    def test_Scenarios_parameters(self):
        config = ScenarioConfig.from_dict({'scenario': 'rotation',
                                           'parameters': {'r0': 1e-6}})
        with self.assertRaises(ConfigError):
            build_scenario(config)
        config = ScenarioConfig.from_dict({
            'scenario': 'rotation',
            'parameters': {'r0': 1e-6, 'B0': 1.0, 'spin': 1}
        })
        with self.assertRaises(ConfigError):
            build_scenario(config)
        config = ScenarioConfig.from_dict({
            'scenario': 'boosted-landau',
            'parameters': {'u2': 'fast', 'B0': 1.0}
        })
        with self.assertRaises(ConfigError):
            build_scenario(config)
        with self.assertRaises(ConfigError):
            build_scenario(ScenarioConfig.from_dict({'scenario': 'spiral'}))

    def test_Scenarios_superluminal(self):
        config = ScenarioConfig.from_dict({
            'scenario': 'rotation',
            'parameters': {'r0': 1.0, 'B0': 1.0, 'omega': 1e9}
        })
        with self.assertRaises(SuperluminalError):
            build_scenario(config)

    def test_Scenarios_resonant_rotation(self):
        config = ScenarioConfig.from_dict({
            'scenario': 'rotation',
            'parameters': {'r0': 2e-6, 'B0': 0.35},
        })
        built = build_scenario(config)
        self.assertEqual(built.kind, 'electromagnetic')
        np.testing.assert_allclose(built.state.parameters['omega'] * 1e-9, -61.56,
                                   atol=5e-3)
        self.assertTrue(built.physicality(1e-3).passed)

    def test_Scenarios_expression_path(self):
        config = ScenarioConfig.from_dict({
            'scenario': 'translation',
            'parameters': {
                'L': 1.0, 'T': 10.0, 'B0': 1.0,
                'path': 'L/2*(1 + sin(pi*(t - T/2)/T))'
            },
            'constants': {'units': 'natural'},
        })
        built = build_scenario(config)
        np.testing.assert_allclose(built.state.parameters['path'](5.0), 0.5)

    def test_Scenarios_catalog_covers_presets(self):
        for preset in PRESETS.values():
            self.assertIn(preset['scenario'], SCENARIOS)


class FieldMapSweep_Tester(unittest.TestCase):
    def test_FieldMapSweep_soft_coulomb(self):
        sweep = FieldMapSweep(load_config(preset='soft-coulomb'), progress=False)
        self.assertEqual(sweep.computed.shape, (101, 20))
        self.assertEqual(list(sweep.computed.columns), FIELD_MAP_COLUMNS)
        self.assertTrue(sweep.physical)
        self.assertEqual(sweep.summary['kind'], 'electromagnetic')
        self.assertIsNone(sweep.summary['physicality'])
        z = sweep.computed['z'].to_numpy()
        np.testing.assert_allclose(sweep.computed['eA_0'],
                                   -1 / np.sqrt(1 + z * z) - 1 / (2 * (1 + z * z)),
                                   rtol=1e-10)

    def test_FieldMapSweep_scalar(self):
        sweep = FieldMapSweep(load_config(preset='scalar'), progress=False)
        self.assertEqual(list(sweep.computed.columns), SCALAR_MAP_COLUMNS)
        self.assertTrue(sweep.physical)
        self.assertEqual(sweep.summary['gate'], 'scalar_residual')

    def test_FieldMapSweep_dsl(self):
        config = ScenarioConfig.from_dict({
            'scenario': 'dsl',
            'parameters': {'xi': 1.0},
            'constants': {'units': 'natural'},
            'dsl': {
                'log_rho': '-2*m*c*sqrt(xi^2 + z^2)/hbar',
                'beta': 'arcsin(z/sqrt(xi^2 + z^2))'
            },
            'grid': {'z': [0.0, 1.0]},
        })
        sweep = FieldMapSweep(config, progress=False)
        np.testing.assert_allclose(sweep.computed['eA_0'].iloc[0], -1.5)

    def test_FieldMapSweep_row_order(self):
        config = ScenarioConfig.from_dict({
            'scenario': 'boosted-landau',
            'parameters': {'u2': 0.5, 'B0': 1.0},
            'constants': {'units': 'natural'},
            'grid': {'t': [0.0, 1.0], 'x': [-1.0, 1.0], 'y': [0.0, 0.5, 1.0]},
        })
        table = FieldMapSweep(config, threads=3, progress=False).computed
        self.assertEqual(table['t'].tolist(), [0.0] * 6 + [1.0] * 6)
        self.assertEqual(table['x'].tolist(), ([-1.0] * 3 + [1.0] * 3) * 2)
        self.assertEqual(table['y'].tolist(), [0.0, 0.5, 1.0] * 4)


class Main_Tester(unittest.TestCase):
    def test_Main_invert(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, out, _ = _run(['invert', '--preset', 'soft-coulomb', '--out', tmp,
                                 '--quiet', '--json'])
            self.assertEqual(code, EXIT_OK)
            self.assertTrue(json.loads(out)['physical'])
            with open(os.path.join(tmp, 'summary.json')) as f:
                self.assertEqual(json.load(f)['points'], 101)
            self.assertTrue(os.path.exists(os.path.join(tmp, 'field_map.csv')))

    def test_Main_threads_do_not_change_output(self):
        outputs = []
        with tempfile.TemporaryDirectory() as tmp:
            for threads in ('1', '4'):
                directory = os.path.join(tmp, threads)
                code, _, _ = _run(['invert', '--preset', 'broken-translation', '--out',
                                   directory, '--quiet', '--threads', threads])
                self.assertEqual(code, EXIT_NON_PHYSICAL)
                with open(os.path.join(directory, 'field_map.csv'), 'rb') as f:
                    outputs.append(f.read())
        self.assertEqual(outputs[0], outputs[1])

    def test_Main_non_physical_keeps_the_map(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _, err = _run(['invert', '--preset', 'broken-translation', '--out',
                                 tmp, '--quiet'])
            self.assertEqual(code, EXIT_NON_PHYSICAL)
            self.assertIn('non-physical', err)
            with open(os.path.join(tmp, 'summary.json')) as f:
                summary = json.load(f)
            self.assertFalse(summary['physical'])
            self.assertGreater(summary['max_residual'], summary['tolerance'])
            self.assertTrue(os.path.exists(os.path.join(tmp, 'field_map.csv')))

    def test_Main_configuration_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = _write_yaml(tmp, {'scenario': 'spiral'})
            code, _, err = _run(['invert', '--config', path, '--out', tmp, '--quiet'])
            self.assertEqual(code, EXIT_CONFIG)
            self.assertIn('spiral', err)
            path = _write_yaml(tmp, {'scenario': 'rotation',
                                     'parameters': {'r0': 1.0, 'B0': 1.0,
                                                    'omega': 1e9}}, 'fast.yml')
            code, _, _ = _run(['invert', '--config', path, '--out', tmp, '--quiet'])
            self.assertEqual(code, EXIT_CONFIG)
            code, _, _ = _run(['invert', '--out', tmp, '--quiet'])
            self.assertEqual(code, EXIT_CONFIG)
        with self.assertRaises(SystemExit):
            _run([])

    def test_Main_verify(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = _write_yaml(tmp, {'checks': ['resonance'],
                                     'tolerances': {'resonant frequency': 1e-12}})
            code, out, _ = _run(['verify', '--config', path, '--out', tmp, '--quiet'])
            self.assertEqual(code, EXIT_OK)
            self.assertIn('3 of 4 checks passed', out)
            self.assertIn('failed: resonant frequency at 0.35 T', out)
            self.assertTrue(os.path.exists(os.path.join(tmp, 'verification.csv')))

    def test_Main_catalog(self):
        code, out, _ = _run(['catalog', '--json'])
        self.assertEqual(code, EXIT_OK)
        listing = json.loads(out)
        names = [s['name'] for s in listing['scenarios']]
        self.assertIn('rotation', names)
        rotation = listing['scenarios'][names.index('rotation')]
        self.assertEqual(rotation['parameters']['r0'], 'required')
        self.assertEqual({p['name'] for p in listing['presets']}, set(PRESETS))
        code, out, _ = _run(['catalog'])
        self.assertEqual(code, EXIT_OK)
        self.assertIn('preset fig1', out)


if __name__ == '__main__':
    unittest.main()
