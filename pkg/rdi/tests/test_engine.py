import unittest
import numpy as np
from rdi.aps import ApsElement
from rdi.engine import (FieldStrength, FourPotential, dirac_current,
                        dirac_residual, field_strength, hermiticity_gate,
                        homogeneous_maxwell_residual, invert_point,
                        invert_potential, maxwell_current, scalar_inversion)
from rdi.jets import value_of
from rdi.states import (PhysicalConstants, SinusoidalPath,
                        StateParametrization, boosted_landau, nonlinear_state,
                        rest_state, rotation_state, scalar_state,
                        translation_state)
from rdi.catalog import nonlinear_potential, scalar_potential_closed_form
from rdi.util.util import NonPhysicalDynamicsError, ZeroDensityError

NATURAL = PhysicalConstants.natural()


def _cloud(n=20, seed=0):
    rng = np.random.default_rng(seed)
    return tuple(rng.uniform(-1, 1, n) for _ in range(4))


class Inversion_Tester(unittest.TestCase):
    def test_Inversion_free_particle(self):
        A_raw, residual = invert_potential(rest_state(NATURAL), (0.3, 0.1, 0.2, 0.4))
        np.testing.assert_allclose(value_of(A_raw.matrix), np.zeros((2, 2)),
                                   atol=1e-14)
        self.assertLess(residual, 1e-14)
        potential = hermiticity_gate(A_raw, constants=NATURAL)
        np.testing.assert_allclose(potential.contravariant, np.zeros(4), atol=1e-14)

    def test_Inversion_free_particle_codata(self):
        k = PhysicalConstants()
        A_raw, residual = invert_potential(rest_state(k), (2e-21, 1e-9, 0.0, 0.0))
        # m c sets the scale of a vanishing potential
        self.assertLess(np.max(np.abs(value_of(A_raw.matrix))) / (k.m * k.c), 1e-10)
        self.assertLess(residual, 1e-10)

    def test_Inversion_requires_a_point(self):
        with self.assertRaises(ValueError):
            invert_potential(rest_state(NATURAL))
        with self.assertRaises(TypeError):
            invert_potential(object(), (0.0, 0.0, 0.0, 0.0))

    def test_Inversion_gate_rejects_anti_hermitian(self):
        with self.assertRaises(NonPhysicalDynamicsError) as caught:
            hermiticity_gate(ApsElement(1j * np.eye(2)), 1e-8, NATURAL)
        np.testing.assert_allclose(caught.exception.residual, 2.0)
        self.assertEqual(caught.exception.tolerance, 1e-8)

    def test_Inversion_unreachable_translation(self):
        broken = translation_state(SinusoidalPath(1.0, 2.0), 1.0, NATURAL,
                                   normalized=False, window=(0.0, 2.0))
        with self.assertRaises(NonPhysicalDynamicsError):
            invert_point(broken, (0.5, 0.3, 0.2, 0.1))
        reachable = translation_state(SinusoidalPath(1.0, 2.0), 1.0, NATURAL,
                                      window=(0.0, 2.0))
        report = invert_point(reachable, (0.5, 0.3, 0.2, 0.1))
        self.assertLess(report.hermiticity_residual, 1e-8)


class FourPotential_Tester(unittest.TestCase):
    def test_FourPotential_components(self):
        potential = FourPotential.from_contravariant(1.0, 2.0, 3.0, 4.0, NATURAL)
        np.testing.assert_allclose(potential.covariant, [1, -2, -3, -4])
        np.testing.assert_allclose(potential.contravariant, [1, 2, 3, 4])
        np.testing.assert_allclose(potential.energy_units, [1, 2, 3, 4])
        np.testing.assert_allclose(potential.matrix,
                                   [[1 - 4, -2 + 3j], [-2 - 3j, 1 + 4]])
        np.testing.assert_allclose(potential.shifted(0.5).contravariant,
                                   [1.5, 2, 3, 4])
        self.assertEqual(potential.order, 0)
        with self.assertRaises(ValueError):
            field_strength(potential)

    def test_FourPotential_si_units(self):
        k = PhysicalConstants()
        potential = FourPotential.from_contravariant(k.e, 0.0, 0.0, 0.0, k)
        np.testing.assert_allclose(potential.si, [1, 0, 0, 0])


class Fields_Tester(unittest.TestCase):
    def test_Fields_tensor(self):
        fields = FieldStrength(np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0]),
                               NATURAL)
        F = fields.tensor()
        np.testing.assert_allclose(F, -F.T)
        self.assertEqual(F[1, 0], 1.0)
        self.assertEqual(F[1, 2], -6.0)
        self.assertEqual(F[3, 1], -5.0)

    def test_Fields_boosted_landau(self):
        u2 = 0.7
        report = invert_point(boosted_landau(u2, 1.0, NATURAL), _cloud())
        self.assertEqual(report.E.shape, (20, 3))
        np.testing.assert_allclose(report.E[:, 0], -u2, rtol=1e-9)
        np.testing.assert_allclose(report.E[:, 1:], 0.0, atol=1e-9)
        np.testing.assert_allclose(report.B[:, 2], np.sqrt(1 + u2 * u2), rtol=1e-9)
        np.testing.assert_allclose(report.maxwell_current, 0.0, atol=1e-8)
        np.testing.assert_array_less(report.dirac_residual, 1e-9)

    def test_Fields_grid_shape(self):
        t, x = np.meshgrid(np.linspace(0, 1, 3), np.linspace(-1, 1, 4), indexing='ij')
        point = (t, x, 0.2, 0.0)
        report = invert_point(boosted_landau(0.3, 1.0, NATURAL), point)
        self.assertEqual(report.potential.contravariant.shape, (3, 4, 4))
        self.assertEqual(report.maxwell_current.shape, (3, 4, 4))
        self.assertEqual(report.point[2].shape, (3, 4))

    def test_Fields_homogeneous_maxwell(self):
        state = rotation_state(1.0, -0.3, 0.5, NATURAL)
        A_raw, _ = invert_potential(state, _cloud(seed=1))
        fields = field_strength(hermiticity_gate(A_raw, constants=NATURAL))
        self.assertLess(homogeneous_maxwell_residual(fields), 1e-9)
        current = maxwell_current(fields)
        # the rotating packet carries no charge density
        np.testing.assert_allclose(current.J[..., 0], 0.0, atol=1e-9)

    def test_Fields_dirac_residual_of_free_particle(self):
        residual = dirac_residual(rest_state(NATURAL), np.zeros((2, 2)),
                                  (0.2, 0.0, 0.0, 0.0))
        self.assertLess(residual, 1e-14)
        wrong = dirac_residual(rest_state(NATURAL), 0.1 * np.eye(2),
                               (0.2, 0.0, 0.0, 0.0))
        np.testing.assert_allclose(wrong, 0.1, rtol=1e-12)


class DiracCurrent_Tester(unittest.TestCase):
    def test_DiracCurrent_rotation_speed(self):
        current = dirac_current(rotation_state(1.0, -0.3, 0.5, NATURAL), _cloud())
        speed = np.linalg.norm(current.velocity, axis=-1)
        np.testing.assert_allclose(speed, 0.3, rtol=1e-12)
        self.assertFalse(np.any(current.superluminal))
        np.testing.assert_array_less(0.0, current.J_D[..., 0])

    def test_DiracCurrent_half_trace_normalization(self):
        state = StateParametrization(log_rho=lambda t, x, y, z: np.log(2.0),
                                     constants=NATURAL)
        current = dirac_current(state, (0.3, 0.1, -0.2, 0.4))
        # rho (u0, u) at rest, half of Tr(Psi Psi^dagger sigma_mu)
        np.testing.assert_allclose(current.J_D, [2.0, 0.0, 0.0, 0.0], atol=1e-14)

    def test_DiracCurrent_zero_density(self):
        empty = StateParametrization(log_rho=lambda t, x, y, z: -np.inf,
                                     constants=NATURAL)
        with self.assertRaises(ZeroDensityError):
            dirac_current(empty, (0.0, 0.0, 0.0, 0.0))


class ScalarInversion_Tester(unittest.TestCase):
    def test_ScalarInversion_arctan_state(self):
        z = np.linspace(-3, 3, 13)
        zero = np.zeros_like(z)
        result = scalar_inversion(scalar_state(1.0, 0.5, NATURAL), (zero, zero, zero, z))
        np.testing.assert_allclose(result.V,
                                   scalar_potential_closed_form(1.0, 0.5, z, NATURAL),
                                   atol=1e-10)
        np.testing.assert_array_less(result.residual, 1e-10)

    def test_ScalarInversion_nonlinear(self):
        z = np.linspace(-2, 1, 7)
        zero = np.zeros_like(z)
        result = scalar_inversion(nonlinear_state(2.0, NATURAL), (zero, zero, zero, z),
                                  kappa=0.1)
        np.testing.assert_allclose(result.V, nonlinear_potential(2.0, z, 0.1, NATURAL),
                                   atol=1e-10)

    def test_ScalarInversion_needs_a_scalar_state(self):
        with self.assertRaises(NonPhysicalDynamicsError):
            scalar_inversion(rotation_state(1.0, -0.3, 0.5, NATURAL),
                             (0.0, 0.4, 0.2, 0.0))


if __name__ == '__main__':
    unittest.main()
