import unittest
import numpy as np
from rdi.catalog import (Confined3dParams, RotationScenarioParams,
                         confined_3d_closed_form, rotation_3d_closed_form,
                         soft_coulomb)
from rdi.engine import hermiticity_gate, invert_point, invert_potential
from rdi.states import (PhysicalConstants, SoftCoreProfile,
                        rotating_confined_3d_state)
from rdi.util.util import JetDomainError, relative_difference

NATURAL = PhysicalConstants.natural()


class Confined_Tester(unittest.TestCase):
    def test_Confined_soft_coulomb(self):
        np.testing.assert_almost_equal(soft_coulomb(1.0, 0.0, NATURAL), -1.5)
        z = np.linspace(-10, 10, 41)
        zero = np.zeros_like(z)
        params = Confined3dParams.soft_core(1.0, constants=NATURAL)
        report = invert_point(params.state(), (zero, zero, zero, z))
        np.testing.assert_allclose(report.potential.contravariant[..., 0],
                                   soft_coulomb(1.0, z, NATURAL), rtol=1e-10)
        np.testing.assert_allclose(report.potential.contravariant[..., 1:], 0.0,
                                   atol=1e-12)
        # far from the core the well is Coulomb-like
        np.testing.assert_allclose(soft_coulomb(1.0, 1e4, NATURAL), -1e-4, rtol=1e-4)

    def test_Confined_matches_closed_form(self):
        params = Confined3dParams.soft_core(1.0, 0.5, 0.3, NATURAL)
        rng = np.random.default_rng(0)
        point = (rng.uniform(0, 1, 30), rng.uniform(-2, 2, 30), rng.uniform(-2, 2, 30),
                 rng.uniform(-5, 5, 30))
        report = invert_point(params.state(), point)
        closed = confined_3d_closed_form(params, point)
        self.assertLess(relative_difference(report.potential.contravariant, closed.eA),
                        1e-9)
        np.testing.assert_allclose(report.B[..., 2], 0.5, rtol=1e-9)
        np.testing.assert_allclose(report.E[..., :2], 0.0, atol=1e-9)

    def test_Confined_energy_shifts_the_scalar_potential(self):
        point = (0.0, 0.1, -0.2, 0.7)
        low = confined_3d_closed_form(Confined3dParams.soft_core(1.0, 0.5, 0.0, NATURAL),
                                      point)
        high = confined_3d_closed_form(Confined3dParams.soft_core(1.0, 0.5, 0.4, NATURAL),
                                       point)
        np.testing.assert_allclose(high.eA[..., 0] - low.eA[..., 0], 0.4)

    def test_Confined_rotating(self):
        params = RotationScenarioParams(1.0, -0.3, 0.5, NATURAL)
        profile = SoftCoreProfile(1.0)
        rng = np.random.default_rng(1)
        point = (rng.uniform(0, 20, 30), rng.uniform(-2, 2, 30), rng.uniform(-2, 2, 30),
                 rng.uniform(-5, 5, 30))
        state = rotating_confined_3d_state(1.0, -0.3, 0.5, profile, NATURAL)
        A_raw, _ = invert_potential(state, point)
        potential = hermiticity_gate(A_raw, constants=NATURAL)
        closed = rotation_3d_closed_form(params, profile, point)
        self.assertLess(relative_difference(potential.contravariant, closed.eA), 1e-9)

    def test_Confined_profile_slope(self):
        class Steep(SoftCoreProfile):
            def derivatives(self, z, n):
                return [2 * z, 2.0 + 0 * z, 0 * z][:n + 1]

        params = Confined3dParams(Steep(1.0), constants=NATURAL)
        with self.assertRaises(JetDomainError):
            confined_3d_closed_form(params, (0.0, 0.0, 0.0, 1.0))


if __name__ == '__main__':
    unittest.main()
