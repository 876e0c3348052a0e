"""
Algebra of physical space: 2x2 complex matrices as spinors, paravectors and
Lorentz operators

Every function here accepts a plain numpy array whose two trailing axes are the
matrix axes, a matrix-valued :class:`rdi.jets.Jet`, or an :class:`ApsElement`,
and returns the same kind of object.
"""

__author__ = "rdi developers"

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import factorial

from rdi.jets import jets
from rdi.jets.jets import Jet
from rdi.util.util import SingularStateError, SuperluminalError, frobenius_norm

__all__ = [
    'SIGMA', 'SINGULAR_THRESHOLD', 'ApsElement', 'ProperVelocity',
    'pauli_coefficients', 'from_pauli', 'paravector', 'clifford_conjugate',
    'dagger', 'bar_dagger', 'det', 'inverse', 'hermitian_part',
    'antihermitian_part', 'spinor_to_matrix', 'matrix_to_spinor', 'boost',
    'rotation', 'assemble_state', 'extract_beta_rho'
]

# sigma_0 (identity) followed by the three Pauli matrices
SIGMA = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

SINGULAR_THRESHOLD = 1e-12

_IDENTITY = SIGMA[0]


class ApsElement:
    '''
    An element of the algebra of physical space

    Stores the 2x2 matrix; the Pauli coefficients a_mu = Tr(M sigma_mu)/2 are
    derived on demand.

    Parameters
    ----------

    matrix : array_like of shape (..., 2, 2), or a matrix-valued Jet

    Examples
    --------

    >>> M = ApsElement.from_pauli([1, 0, 0, 2])
    >>> complex(M.det())
    (-3+0j)

    '''

    def __init__(self, matrix):
        if isinstance(matrix, ApsElement):
            matrix = matrix.matrix
        if not isinstance(matrix, Jet):
            matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape[-2:] != (2, 2):
            raise ValueError('an APS element is a 2x2 matrix, got shape {}'.format(
                matrix.shape))
        self.matrix = matrix

    @classmethod
    def from_pauli(cls, coefficients):
        return cls(from_pauli(coefficients))

    @classmethod
    def identity(cls):
        return cls(_IDENTITY.copy())

    @property
    def coefficients(self):
        return pauli_coefficients(self.matrix)

    def bar(self):
        return ApsElement(clifford_conjugate(self.matrix))

    def dagger(self):
        return ApsElement(dagger(self.matrix))

    def bar_dagger(self):
        return ApsElement(bar_dagger(self.matrix))

    def det(self):
        return det(self.matrix)

    def inverse(self):
        return ApsElement(inverse(self.matrix))

    def hermitian_part(self):
        return ApsElement(hermitian_part(self.matrix))

    def antihermitian_part(self):
        return ApsElement(antihermitian_part(self.matrix))

    def __matmul__(self, other):
        other = other.matrix if isinstance(other, ApsElement) else other
        return ApsElement(self.matrix @ other)

    def __rmatmul__(self, other):
        return ApsElement(other @ self.matrix)

    def __mul__(self, scalar):
        return ApsElement(self.matrix * scalar)

    __rmul__ = __mul__

    def __add__(self, other):
        other = other.matrix if isinstance(other, ApsElement) else other
        return ApsElement(self.matrix + other)

    def __sub__(self, other):
        other = other.matrix if isinstance(other, ApsElement) else other
        return ApsElement(self.matrix - other)

    def __neg__(self):
        return ApsElement(-self.matrix)

    def __repr__(self):
        return 'ApsElement({!r})'.format(self.matrix)


def _unwrap(M):
    return M.matrix if isinstance(M, ApsElement) else M


def _rewrap(template, result):
    return ApsElement(result) if isinstance(template, ApsElement) else result


def _linear(M, fn):
    """Apply a linear map on the matrix axes to arrays and jets alike."""
    raw = _unwrap(M)
    if isinstance(raw, Jet):
        return _rewrap(M, raw.map_coefficients(fn))
    return _rewrap(M, fn(np.asarray(raw, dtype=complex)))


def _matrix_axes(a):
    """``a[..., None, None]`` for numbers, arrays and jets."""
    if isinstance(a, Jet):
        return a[..., None, None]
    return np.asarray(a)[..., None, None]


def pauli_coefficients(M):
    """a_mu = Tr(M sigma_mu)/2, stacked along a new trailing axis."""
    raw = _unwrap(M)
    fn = lambda a: np.einsum('...ij,mji->...m', a, SIGMA) / 2
    if isinstance(raw, Jet):
        return raw.map_coefficients(fn)
    return fn(np.asarray(raw, dtype=complex))


def from_pauli(coefficients):
    """Matrix a_mu sigma_mu from coefficients stacked on the trailing axis."""
    fn = lambda a: np.einsum('...m,mij->...ij', a, SIGMA)
    if isinstance(coefficients, Jet):
        return coefficients.map_coefficients(fn)
    return fn(np.asarray(coefficients, dtype=complex))


def paravector(a0, a1, a2, a3):
    '''
    Build a0 sigma_0 + a_k sigma_k from separate components

    The components may be numbers, arrays (broadcast against each other) or
    scalar jets; the result is a matrix-valued jet as soon as one of them is.
    '''
    total = 0
    for mu, a in enumerate((a0, a1, a2, a3)):
        if isinstance(a, Jet) or np.any(np.asarray(a) != 0):
            total = total + _matrix_axes(a) * SIGMA[mu]
    if isinstance(total, int):
        shape = np.broadcast_shapes(*[np.shape(a) for a in (a0, a1, a2, a3)])
        return np.zeros(shape + (2, 2), dtype=complex)
    return total


def clifford_conjugate(M):
    '''
    Clifford conjugation (the adjugate for 2x2 matrices)

    bar(M) = Tr(M) 1 - M flips the sign of the vector part without
    conjugating the scalars, so that bar(M) M = det(M) 1.
    '''
    fn = lambda a: (np.einsum('...ii->...', a)[..., None, None] * _IDENTITY - a)
    return _linear(M, fn)


def dagger(M):
    """Hermitian conjugate (reversion followed by complex conjugation)."""
    return _linear(M, lambda a: np.conj(np.swapaxes(a, -1, -2)))


def bar_dagger(M):
    """dagger(bar(M)), the combination entering the Dirac mass term."""
    return dagger(clifford_conjugate(M))


def det(M):
    raw = _unwrap(M)
    return raw[..., 0, 0] * raw[..., 1, 1] - raw[..., 0, 1] * raw[..., 1, 0]


def inverse(M):
    '''
    Matrix inverse bar(M)/det(M)

    Raises
    ------

    SingularStateError
        when |det M| <= SINGULAR_THRESHOLD * ||M||_F^2
    '''
    raw = _unwrap(M)
    d = det(raw)
    value = raw.value if isinstance(raw, Jet) else np.asarray(raw)
    d_value = d.value if isinstance(d, Jet) else d
    threshold = SINGULAR_THRESHOLD * frobenius_norm(value)**2
    if np.any(np.abs(d_value) <= threshold):
        index = np.argmin(np.abs(d_value) - threshold)
        raise SingularStateError(np.ravel(d_value)[index],
                                 np.ravel(threshold)[index])
    if np.any(np.abs(d_value) <= 10 * threshold):
        warnings.warn('determinant within a decade of the singular threshold',
                      RuntimeWarning)
    return _rewrap(M, clifford_conjugate(raw) * jets.reciprocal(_matrix_axes(d)))


def hermitian_part(M):
    return _linear(M, lambda a: (a + np.conj(np.swapaxes(a, -1, -2))) / 2)


def antihermitian_part(M):
    return _linear(M, lambda a: (a - np.conj(np.swapaxes(a, -1, -2))) / 2)


def spinor_to_matrix(psi):
    '''
    Map a column bispinor to its 2x2 matrix form

    Parameters
    ----------

    psi : array_like of shape (..., 4)

    Returns
    -------

    numpy array of shape (..., 2, 2) with
    Psi11 = psi1 + psi3, Psi21 = psi2 + psi4, Psi12 = -psi2* + psi4*,
    Psi22 = psi1* - psi3*
    '''
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[-1] != 4:
        raise ValueError('a bispinor has 4 components')
    p1, p2, p3, p4 = np.moveaxis(psi, -1, 0)
    top = np.stack([p1 + p3, np.conj(p4) - np.conj(p2)], axis=-1)
    bottom = np.stack([p2 + p4, np.conj(p1) - np.conj(p3)], axis=-1)
    return np.stack([top, bottom], axis=-2)


def matrix_to_spinor(M):
    """Inverse of :func:`spinor_to_matrix`."""
    M = np.asarray(_unwrap(M), dtype=complex)
    p1 = (M[..., 0, 0] + np.conj(M[..., 1, 1])) / 2
    p3 = (M[..., 0, 0] - np.conj(M[..., 1, 1])) / 2
    p2 = (M[..., 1, 0] - np.conj(M[..., 0, 1])) / 2
    p4 = (M[..., 1, 0] + np.conj(M[..., 0, 1])) / 2
    return np.stack([p1, p2, p3, p4], axis=-1)


@dataclass(frozen=True)
class ProperVelocity:
    '''
    Spatial proper velocity u = gamma v / c (dimensionless)

    Components may be numbers, arrays or scalar jets. ``u0`` is fixed by the
    mass shell, u0^2 - |u|^2 = 1.
    '''

    u1: object = 0.0
    u2: object = 0.0
    u3: object = 0.0

    @classmethod
    def from_velocity(cls, v, c):
        """Proper velocity of the ordinary velocity ``v`` (m/s)."""
        v = [np.asarray(vk, dtype=float) for vk in v]
        speed2 = sum(vk * vk for vk in v)
        if np.any(speed2 >= c * c):
            raise SuperluminalError('velocity must stay below c')
        gamma = 1 / np.sqrt(1 - speed2 / c**2)
        return cls(*[gamma * vk / c for vk in v])

    @property
    def components(self):
        return (self.u1, self.u2, self.u3)

    @property
    def u0(self):
        u1, u2, u3 = self.components
        return jets.sqrt(1 + u1 * u1 + u2 * u2 + u3 * u3)

    def velocity(self, c):
        """Ordinary velocity c u / u0."""
        u0 = self.u0
        return tuple(c * uk / u0 for uk in self.components)


def _as_proper_velocity(u):
    if isinstance(u, ProperVelocity):
        return u
    return ProperVelocity(*u)


def boost(u):
    '''
    Lorentz boost B(u) = (u^mu sigma_mu + 1)/sqrt(2(1 + u0))

    Parameters
    ----------

    u : ProperVelocity or sequence of 3 components (numbers, arrays or jets)

    Returns
    -------

    Hermitian matrix (array or jet) with unit determinant; B(u)^-1 = B(-u)
    '''
    u = _as_proper_velocity(u)
    u0 = u.u0
    B = paravector(u0 + 1, *u.components)
    return B * jets.reciprocal(_matrix_axes(jets.sqrt(2 * (1 + u0))))


# Taylor coefficients of cos(sqrt(s)/2) and sin(sqrt(s)/2)/sqrt(s) in s
_N_SERIES = 10
_COS_SERIES = np.array([(-0.25)**n / factorial(2 * n) for n in range(_N_SERIES)])
_SINC_SERIES = np.array(
    [0.5 * (-0.25)**n / factorial(2 * n + 1) for n in range(_N_SERIES)])
_SERIES_LIMIT = 1e-2


def _series(s, coefficients):
    derivatives = [coefficients]
    for _ in range(s.order):
        derivatives.append(P.polyder(derivatives[-1]))
    return s.chain(*[P.polyval(s.value, d) for d in derivatives])


def _half_angle_functions(s):
    """cos(|theta|/2) and sin(|theta|/2)/|theta| as functions of s = |theta|^2."""
    if not isinstance(s, Jet):
        w = np.sqrt(s) / 2
        return np.cos(w), 0.5 * np.sinc(w / np.pi)
    small = np.abs(s.value) < _SERIES_LIMIT
    safe = Jet.where(small, 1.0, s)
    w = jets.sqrt(safe) / 2
    closed_cos, closed_sinc = jets.cos(w), jets.sin(w) / (2 * w)
    if not np.any(small):
        return closed_cos, closed_sinc
    near = Jet.where(small, s, 0.0)
    return (Jet.where(small, _series(near, _COS_SERIES), closed_cos),
            Jet.where(small, _series(near, _SINC_SERIES), closed_sinc))


def rotation(theta):
    '''
    Spatial rotation R = exp(-i theta^k sigma_k / 2)

    Parameters
    ----------

    theta : sequence of 3 angles in radians (numbers, arrays or jets)

    Returns
    -------

    unitary matrix (array or jet) with unit determinant
    '''
    t1, t2, t3 = theta
    if not any(isinstance(t, Jet) for t in (t1, t2)) and not np.any(
            np.asarray(t1)) and not np.any(np.asarray(t2)):
        # rotation about z: diagonal phases
        return _diagonal(jets.exp(-0.5j * t3), jets.exp(0.5j * t3))
    s = t1 * t1 + t2 * t2 + t3 * t3
    C, S = _half_angle_functions(s)
    return paravector(C, -1j * S * t1, -1j * S * t2, -1j * S * t3)


def _diagonal(a, b):
    return _matrix_axes(a) * np.array([[1, 0], [0, 0]]) + _matrix_axes(b) * np.array(
        [[0, 0], [0, 1]])


def assemble_state(rho, u, theta, beta):
    '''
    Spinor Psi = sqrt(rho) B(u) R(theta) exp(i beta/2)

    Parameters
    ----------

    rho   : probability density modulation (>= 0)

    u     : ProperVelocity or 3 components

    theta : 3 rotation angles (radians)

    beta  : Yvon-Takabayashi angle (radians)

    Returns
    -------

    matrix (array or jet) with det = rho exp(i beta)
    '''
    rho_value = jets.value_of(rho)
    if np.any(np.asarray(rho_value) < 0):
        raise ValueError('rho must be non-negative')
    amplitude = jets.sqrt(rho) * jets.exp(0.5j * beta)
    return _matrix_axes(amplitude) * (boost(u) @ rotation(theta))


def extract_beta_rho(Psi):
    '''
    Recover (rho, beta) = (|det Psi|, arg det Psi)

    Returns
    -------

    rho  : float or array

    beta : float or array, principal value in (-pi, pi]

    Raises
    ------

    SingularStateError
        when |det Psi| <= SINGULAR_THRESHOLD * ||Psi||_F^2
    '''
    raw = jets.value_of(_unwrap(Psi))
    raw = np.asarray(raw, dtype=complex)
    d = det(raw)
    threshold = SINGULAR_THRESHOLD * frobenius_norm(raw)**2
    if np.any(np.abs(d) <= threshold):
        index = np.argmin(np.abs(d) - threshold)
        raise SingularStateError(np.ravel(d)[index], np.ravel(threshold)[index])
    beta = np.angle(d)
    # a negative determinant with -0.0 imaginary part lands on -pi
    beta = np.where(beta <= -np.pi, np.pi, beta)[()]
    return np.abs(d), beta
