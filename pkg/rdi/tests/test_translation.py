import unittest
import numpy as np
from rdi.catalog import (TranslationScenarioParams, radiation_reaction_gap,
                         translation_classical_fields, translation_closed_form,
                         translation_low_energy_current,
                         translation_nonrelativistic_fields)
from rdi.engine import invert_point, invert_potential
from rdi.states import HyperbolicPath, PhysicalConstants
from rdi.util.util import SuperluminalError, relative_difference

NATURAL = PhysicalConstants.natural()


def _points(T, n=40, seed=0):
    rng = np.random.default_rng(seed)
    return (rng.uniform(0.05 * T, 0.95 * T, n), rng.uniform(-2, 2, n),
            rng.uniform(-2, 2, n), rng.uniform(-1, 1, n))


class Translation_Tester(unittest.TestCase):
    def test_Translation_matches_closed_form(self):
        params = TranslationScenarioParams.sinusoidal(1.0, 10.0, 1.0, NATURAL)
        point = _points(10.0)
        report = invert_point(params.state(), point)
        closed = translation_closed_form(params, point)
        self.assertLess(relative_difference(report.potential.contravariant, closed.eA),
                        1e-9)
        self.assertLess(relative_difference(report.E, closed.E), 1e-9)
        self.assertLess(relative_difference(report.B, closed.B), 1e-9)
        self.assertLess(
            relative_difference(report.maxwell_current, closed.J, floor=1e-300), 1e-6)
        np.testing.assert_allclose(report.maxwell_current[..., 0], 0.0, atol=1e-9)

    def test_Translation_expanded_forms_reduce_to_lorentz_factor_forms(self):
        params = TranslationScenarioParams.sinusoidal(1.0, 2.0, 1.0, NATURAL)
        t, x, y, z = _points(2.0, n=15, seed=4)
        closed = translation_closed_form(params, (t, x, y, z))
        Y, v, a, j = params.path.derivatives(t, 3)
        g = 1 / np.sqrt(1 - v * v)
        np.testing.assert_allclose(closed.eA[:, 0],
                                   g * x * v / 2 - g**3 * a * (y - t * v),
                                   rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(closed.eA[:, 1], -(y - Y) / (2 * g) + g * a / 2,
                                   rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(closed.B[:, 2], (g + 1 / g) / 2, rtol=1e-12)
        np.testing.assert_allclose(closed.E[:, 1],
                                   g**3 * a * (1 - x * v / 2), rtol=1e-12,
                                   atol=1e-12)
        eE1 = (-(v / 2) * (g + 1 / g + (y - Y) * g * a) -
               (g**3 * v * a * a + g * j) / 2)
        np.testing.assert_allclose(closed.E[:, 0], eE1, rtol=1e-10, atol=1e-12)

    def test_Translation_radiation_reaction_gap(self):
        params = TranslationScenarioParams.sinusoidal(1.0, 10.0, 1.0, NATURAL)
        point = _points(10.0, n=20, seed=1)
        report = invert_point(params.state(), point)
        gap = translation_classical_fields(params, point).E[..., 0] - report.E[..., 0]
        self.assertLess(
            relative_difference(gap, radiation_reaction_gap(params, point[0])), 1e-6)

    def test_Translation_low_speed(self):
        params = TranslationScenarioParams.sinusoidal(1.0, 1000.0, 1.0, NATURAL)
        t = np.linspace(100.0, 400.0, 7)
        point = (t, 0.1 + 0 * t, 0 * t, 0 * t)
        closed = translation_closed_form(params, point)
        self.assertLess(
            relative_difference(translation_low_energy_current(params, t),
                                closed.mu0_eJ[..., 1:]), 1e-3)
        slow = translation_nonrelativistic_fields(params, point)
        self.assertLess(relative_difference(closed.E, slow.E), 1e-3)
        self.assertLess(relative_difference(closed.B, slow.B), 1e-5)

    def test_Translation_reachability(self):
        params = TranslationScenarioParams.sinusoidal(1.0, 2.0, 1.0, NATURAL)
        point = (np.array([0.5, 1.5]), np.array([0.3, -0.2]), np.array([0.2, 0.4]),
                 np.array([0.1, 0.0]))
        _, broken = invert_potential(params.state(normalized=False), point)
        _, reachable = invert_potential(params.state(), point)
        np.testing.assert_array_less(1e-3, broken)
        np.testing.assert_array_less(reachable, 1e-8)

    def test_Translation_reachability_over_a_grid(self):
        params = TranslationScenarioParams.sinusoidal(1.0, 2.0, 1.0, NATURAL)
        # the mid-transfer time, where du0/dt vanishes, is left out
        t = np.array([0.2, 0.4, 0.6, 0.8, 1.2, 1.4, 1.6, 1.8])
        axis = np.linspace(-1.0, 1.0, 5)
        point = tuple(np.meshgrid(t, axis, axis, axis, indexing='ij'))
        _, broken = invert_potential(params.state(normalized=False), point)
        _, reachable = invert_potential(params.state(), point)
        self.assertEqual(broken.shape, (8, 5, 5, 5))
        self.assertGreaterEqual(np.mean(broken > 1e-3), 0.95)
        self.assertEqual(np.mean(broken < 1e-8), 0.0)
        self.assertLess(np.max(reachable), 1e-8)

    def test_Translation_superluminal(self):
        with self.assertRaises(SuperluminalError):
            TranslationScenarioParams.sinusoidal(10.0, 1.0, 1.0, NATURAL)
        params = TranslationScenarioParams.sinusoidal(10e-6, 1e-9, 1.0)
        np.testing.assert_allclose(params.max_speed, np.pi * 10e-6 / 2e-9)

    def test_Translation_hyperbolic_path(self):
        path = HyperbolicPath(0.3, 1.0)
        params = TranslationScenarioParams(path, 1.0, (0.0, 2.0), NATURAL)
        point = _points(2.0, n=10, seed=2)
        report = invert_point(params.state(), point)
        closed = translation_closed_form(params, point)
        self.assertLess(relative_difference(report.E, closed.E), 1e-9)


if __name__ == '__main__':
    unittest.main()
