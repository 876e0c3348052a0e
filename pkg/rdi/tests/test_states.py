import unittest
import numpy as np
from rdi.aps import boost
from rdi.states import (HyperbolicPath, PhysicalConstants, SinusoidalPath,
                        SoftCoreProfile, StateParametrization, StaticPath,
                        accelerated_boost_state, boosted_landau,
                        confined_3d_state, evaluate_state, nonlinear_state,
                        rest_state, rotation_state, scalar_state,
                        translation_state)
from rdi.util.util import SuperluminalError

NATURAL = PhysicalConstants.natural()


class PhysicalConstants_Tester(unittest.TestCase):
    def test_PhysicalConstants(self):
        k = PhysicalConstants.codata()
        np.testing.assert_almost_equal(k.c, 299792458.0)
        np.testing.assert_allclose(k.mu0 * k.epsilon_0 * k.c**2, 1.0)
        np.testing.assert_allclose(NATURAL.rest_energy, 1.0)
        classical = NATURAL.replace(hbar=1e-3)
        self.assertEqual(classical.hbar, 1e-3)
        self.assertEqual(NATURAL.hbar, 1.0)
        with self.assertRaises(ValueError):
            PhysicalConstants(hbar=0.0)
        with self.assertRaises(ValueError):
            NATURAL.replace(c=np.inf)


class Curves_Tester(unittest.TestCase):
    def test_Curves_sinusoidal_path(self):
        path = SinusoidalPath(2.0, 1.0)
        Y, v, a = path.derivatives(np.array([0.0, 0.5, 1.0]), 2)
        np.testing.assert_allclose(Y, [0.0, 1.0, 2.0], atol=1e-15)
        np.testing.assert_allclose(v[[0, 2]], 0.0, atol=1e-15)
        np.testing.assert_allclose(v[1], path.max_speed())
        np.testing.assert_allclose(a[1], 0.0, atol=1e-14)
        with self.assertRaises(ValueError):
            SinusoidalPath(1.0, 0.0)
        with self.assertRaises(ValueError):
            path.derivatives(0.0, 9)

    def test_Curves_hyperbolic_path(self):
        path = HyperbolicPath(2.0, 1.0)
        Y, v, a = path.derivatives(np.array([0.0, 1.0, 100.0]), 2)
        np.testing.assert_allclose(Y[0], 0.0)
        np.testing.assert_allclose(v[1], 2 / np.sqrt(5))
        self.assertTrue(np.all(v < 1.0))
        # proper acceleration gamma^3 a stays equal to tau c
        gamma = 1 / np.sqrt(1 - v * v)
        np.testing.assert_allclose(gamma**3 * a, 2.0, rtol=1e-10)
        self.assertLess(path.max_speed((0.0, 100.0)), 1.0)

    def test_Curves_soft_core_profile(self):
        profile = SoftCoreProfile(4.0)
        f, f1, f2, f3 = profile.derivatives(3.0, 3)
        np.testing.assert_allclose([f, f1, f2], [5.0, 0.6, 16 / 125])
        np.testing.assert_allclose(f3, -3 * 16 * 3 / 5**5)
        np.testing.assert_allclose(profile(0.0), 4.0)
        with self.assertRaises(ValueError):
            SoftCoreProfile(-1.0)

    def test_Curves_static_path(self):
        Y, v = StaticPath(0.3).derivatives(np.zeros(3), 1)
        np.testing.assert_allclose(Y, 0.3)
        np.testing.assert_allclose(v, 0.0)


class States_Tester(unittest.TestCase):
    def test_States_rest(self):
        spinor = evaluate_state(rest_state(NATURAL), (0.3, 0.1, 0.2, 0.4))
        self.assertEqual(spinor.order, 3)
        np.testing.assert_allclose(spinor.log_amplitude.value, 0.0)
        np.testing.assert_allclose(spinor.value,
                                   np.diag([np.exp(-0.3j), np.exp(0.3j)]),
                                   atol=1e-15)
        # d/d(ct) of the frame is -i sigma_3 frame (m c/hbar = 1)
        np.testing.assert_allclose(spinor.frame.gradient[0],
                                   np.diag([-1j * np.exp(-0.3j), 1j * np.exp(0.3j)]),
                                   atol=1e-14)

    def test_States_evaluate_on_a_grid(self):
        z = np.linspace(-1, 1, 7)
        zero = np.zeros_like(z)
        spinor = evaluate_state(rest_state(NATURAL), (zero, zero, zero, z), order=2)
        self.assertEqual(spinor.psi.shape, (7, 2, 2))
        self.assertEqual(spinor.order, 2)

    def test_States_from_rho(self):
        param = StateParametrization.from_rho(lambda t, x, y, z: 4.0 + x * x,
                                              constants=NATURAL)
        spinor = evaluate_state(param, (0.0, 0.0, 0.0, 0.0))
        np.testing.assert_allclose(spinor.log_amplitude.value, 0.5 * np.log(4.0))
        np.testing.assert_allclose(spinor.value, 2.0 * np.eye(2))
        np.testing.assert_allclose(param.rho(0.0, 1.0, 0.0, 0.0), 5.0)

    def test_States_confined_amplitude_and_beta(self):
        param = confined_3d_state(SoftCoreProfile(1.0), 0.0, 0.0, NATURAL)
        spinor = evaluate_state(param, (0.0, 0.0, 0.0, 0.75))
        np.testing.assert_allclose(spinor.log_amplitude.value,
                                   -1.25 + 0.5j * np.arcsin(0.6))
        np.testing.assert_allclose(spinor.frame.value, np.eye(2), atol=1e-15)

    def test_States_boosted_landau_frame(self):
        spinor = evaluate_state(boosted_landau(0.7, 1.0, NATURAL),
                                (0.0, 0.0, 0.0, 0.0))
        np.testing.assert_allclose(spinor.frame.value, boost((0.0, 0.7, 0.0)),
                                   atol=1e-15)

    def test_States_rotation_velocity(self):
        param = rotation_state(1.0, -0.3, 0.5, NATURAL)
        u1, u2, u3 = param.velocity(0.0, 0.0, 0.0, 0.0)
        gamma = 1 / np.sqrt(1 - 0.09)
        np.testing.assert_allclose(u1, 0.0, atol=1e-15)
        np.testing.assert_allclose(u2, -0.3 * gamma)
        self.assertEqual(param.name, 'rotation')

    def test_States_superluminal(self):
        with self.assertRaises(SuperluminalError):
            rotation_state(1.0, 1.5, 1.0, NATURAL)
        with self.assertRaises(SuperluminalError):
            translation_state(SinusoidalPath(10.0, 1.0), 1.0, NATURAL)
        # below c the same builder is accepted
        translation_state(SinusoidalPath(0.1, 1.0), 1.0, NATURAL)

    def test_States_translation_variants(self):
        path = SinusoidalPath(1.0, 2.0)
        self.assertEqual(translation_state(path, 1.0, NATURAL).name, 'translation')
        broken = translation_state(path, 1.0, NATURAL, normalized=False)
        self.assertEqual(broken.name, 'broken-translation')
        point = (1.0, 0.0, 0.5, 0.0)
        normalized = evaluate_state(translation_state(path, 1.0, NATURAL), point)
        plain = evaluate_state(broken, point)
        gamma = 1 / np.sqrt(1 - (np.pi / 4)**2)
        np.testing.assert_allclose(
            plain.log_amplitude.value - normalized.log_amplitude.value,
            0.5 * np.log(gamma))

    def test_States_scalar_and_nonlinear(self):
        with self.assertRaises(ValueError):
            scalar_state(0.0, 1.0, NATURAL)
        with self.assertRaises(ValueError):
            nonlinear_state(-1.0, NATURAL)
        spinor = evaluate_state(scalar_state(1.0, 0.5, NATURAL), (0.0, 0.0, 0.0, 1.0))
        np.testing.assert_allclose(spinor.log_amplitude.value.imag, np.pi / 8)
        param = nonlinear_state(2.0, NATURAL)
        np.testing.assert_allclose(param.density_scale,
                                   np.sqrt(1 / np.pi) * np.exp(-1.0))

    def test_States_accelerated_boost(self):
        param = accelerated_boost_state(0.3, 1.0, NATURAL, window=(0.0, 2.0))
        self.assertEqual(param.name, 'accelerated-boost')
        self.assertEqual(param.parameters, {'E0': 0.3, 'B0': 1.0})
        _, u2, _ = param.velocity(1.0, 0.0, 0.0, 0.0)
        np.testing.assert_allclose(u2, 0.3, rtol=1e-12)


if __name__ == '__main__':
    unittest.main()
