import unittest
import numpy as np
from hypothesis import given, settings, strategies as st
from rdi.aps import (SIGMA, ApsElement, ProperVelocity, antihermitian_part,
                     assemble_state, bar_dagger, boost, clifford_conjugate,
                     dagger, det, extract_beta_rho, from_pauli, hermitian_part,
                     inverse, matrix_to_spinor, paravector,
                     pauli_coefficients, rotation, spinor_to_matrix)
from rdi.jets import seed
from rdi.util.util import SingularStateError, SuperluminalError

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def _random_matrix(rng, shape=()):
    return rng.normal(size=shape + (2, 2)) + 1j * rng.normal(size=shape + (2, 2))


class Aps_Tester(unittest.TestCase):
    def test_Aps_pauli_decomposition(self):
        rng = np.random.default_rng(1)
        M = _random_matrix(rng, (6, ))
        a = pauli_coefficients(M)
        self.assertEqual(a.shape, (6, 4))
        np.testing.assert_allclose(from_pauli(a), M, atol=1e-14)
        np.testing.assert_allclose(pauli_coefficients(SIGMA[2]), [0, 0, 1, 0])

    def test_Aps_clifford_conjugate_is_adjugate(self):
        rng = np.random.default_rng(2)
        M = _random_matrix(rng, (10, ))
        Mbar = clifford_conjugate(M)
        np.testing.assert_allclose(Mbar @ M, det(M)[:, None, None] * np.eye(2),
                                   atol=1e-13)
        np.testing.assert_allclose(clifford_conjugate(Mbar), M, atol=1e-14)
        np.testing.assert_allclose(dagger(dagger(M)), M)
        np.testing.assert_allclose(bar_dagger(M), dagger(clifford_conjugate(M)))
        a = pauli_coefficients(M)
        b = pauli_coefficients(Mbar)
        np.testing.assert_allclose(b[:, 0], a[:, 0], atol=1e-14)
        np.testing.assert_allclose(b[:, 1:], -a[:, 1:], atol=1e-14)

    def test_Aps_inverse(self):
        rng = np.random.default_rng(3)
        M = _random_matrix(rng, (5, ))
        np.testing.assert_allclose(inverse(M) @ M, np.broadcast_to(np.eye(2), (5, 2, 2)),
                                   atol=1e-12)
        with self.assertRaises(SingularStateError):
            inverse(np.array([[1.0, 1.0], [1.0, 1.0]]))

    def test_Aps_hermitian_split(self):
        rng = np.random.default_rng(4)
        M = _random_matrix(rng)
        H = hermitian_part(M)
        K = antihermitian_part(M)
        np.testing.assert_allclose(H + K, M)
        np.testing.assert_allclose(H, dagger(H))
        np.testing.assert_allclose(K, -dagger(K))
        np.testing.assert_allclose(np.imag(pauli_coefficients(H)), 0, atol=1e-15)

    def test_Aps_element(self):
        M = ApsElement.from_pauli([1, 0, 0, 2])
        np.testing.assert_almost_equal(M.det(), -3)
        np.testing.assert_allclose((M.bar() @ M).matrix, -3 * np.eye(2))
        np.testing.assert_allclose((M.inverse() @ M).matrix, np.eye(2), atol=1e-15)
        np.testing.assert_allclose((2 * M - M).matrix, M.matrix)
        with self.assertRaises(ValueError):
            ApsElement(np.zeros((3, 3)))

    def test_Aps_spinor_map(self):
        rng = np.random.default_rng(5)
        psi = rng.normal(size=(7, 4)) + 1j * rng.normal(size=(7, 4))
        M = spinor_to_matrix(psi)
        np.testing.assert_allclose(matrix_to_spinor(M), psi, atol=1e-14)
        np.testing.assert_allclose(spinor_to_matrix(matrix_to_spinor(M)), M,
                                   atol=1e-14)
        with self.assertRaises(ValueError):
            spinor_to_matrix(np.zeros(3))

    def test_Aps_rest_spinor(self):
        M = spinor_to_matrix([1, 0, 0, 0])
        np.testing.assert_allclose(M, np.eye(2))

    @settings(max_examples=40, deadline=None)
    @given(finite, finite, finite)
    def test_Aps_boost(self, u1, u2, u3):
        B = boost((u1, u2, u3))
        u0 = np.sqrt(1 + u1 * u1 + u2 * u2 + u3 * u3)
        np.testing.assert_allclose(det(B), 1.0, rtol=1e-12)
        np.testing.assert_allclose(B, dagger(B), atol=1e-14)
        np.testing.assert_allclose(B @ B, paravector(u0, u1, u2, u3), rtol=1e-12,
                                   atol=1e-12)
        np.testing.assert_allclose(boost((-u1, -u2, -u3)) @ B, np.eye(2), atol=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(finite, finite, finite)
    def test_Aps_rotation(self, t1, t2, t3):
        R = rotation((t1, t2, t3))
        np.testing.assert_allclose(R @ dagger(R), np.eye(2), atol=1e-13)
        np.testing.assert_allclose(det(R), 1.0, rtol=1e-12)

    def test_Aps_rotation_about_z(self):
        R = rotation((0.0, 0.0, np.pi))
        np.testing.assert_allclose(R, np.diag([-1j, 1j]), atol=1e-15)
        # 2 pi rotation flips the spinor sign
        np.testing.assert_allclose(rotation((0.0, 0.0, 2 * np.pi)), -np.eye(2),
                                   atol=1e-15)

    def test_Aps_rotation_jet_near_zero_angle(self):
        ct, x, y, z = seed((0.0, 1e-4, 2e-4, 0.0), c=1.0, order=2)
        R = rotation((x, y, z))
        closed = rotation((1e-4, 2e-4, 0.0))
        np.testing.assert_allclose(R.value, closed, atol=1e-15)
        # dR/dtheta1 at theta -> 0 is -i sigma_1/2
        np.testing.assert_allclose(R.gradient[1], -0.5j * SIGMA[1], atol=1e-4)

    def test_Aps_assemble_state(self):
        Psi = assemble_state(2.0, (0.3, -0.1, 0.2), (0.4, 0.5, -0.6), 0.7)
        rho, beta = extract_beta_rho(Psi)
        np.testing.assert_allclose(rho, 2.0, rtol=1e-13)
        np.testing.assert_allclose(beta, 0.7, rtol=1e-13)
        with self.assertRaises(ValueError):
            assemble_state(-1.0, (0, 0, 0), (0, 0, 0), 0.0)
        with self.assertRaises(SingularStateError):
            extract_beta_rho(np.array([[1.0, 0.0], [0.0, 0.0]]))

    def test_Aps_beta_range_excludes_minus_pi(self):
        Psi = np.array([[1.0, 0.0], [0.0, complex(-1.0, -0.0)]])
        self.assertEqual(np.angle(det(Psi)), -np.pi)
        rho, beta = extract_beta_rho(Psi)
        self.assertEqual(beta, np.pi)
        np.testing.assert_allclose(rho, 1.0)
        grid = np.broadcast_to(Psi, (3, 2, 2))
        _, betas = extract_beta_rho(grid)
        np.testing.assert_array_equal(betas, np.pi)

    def test_Aps_proper_velocity(self):
        u = ProperVelocity.from_velocity((0.6, 0.0, 0.0), c=1.0)
        np.testing.assert_allclose(u.u1, 0.75)
        np.testing.assert_allclose(u.u0, 1.25)
        np.testing.assert_allclose(u.velocity(1.0)[0], 0.6)
        with self.assertRaises(SuperluminalError):
            ProperVelocity.from_velocity((1.0, 0.0, 0.0), c=1.0)


if __name__ == '__main__':
    unittest.main()
