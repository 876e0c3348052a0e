"""
Relativistic dynamical inversion: the four-potential that drives a given spinor
evolution, with the fields, sources and residuals derived from it

The spinor is carried as Psi = exp(l) L (see :class:`rdi.states.SpinorJet`).
Inserting it into the Dirac equation in matrix form,
i c hbar dbar(Psi) sigma_3 - c e Abar Psi - m c^2 bar(Psi)^dagger = 0, gives

    c e Abar = [i c hbar (sigma_mu d_mu l L + sigma_mu d_mu L) sigma_3
                - m c^2 exp(conj(l) - l) bar(L)^dagger] L^-1,

in which the amplitude exp(Re l) cancels.
"""

__author__ = "rdi developers"

import warnings
from dataclasses import dataclass

import numpy as np

from rdi.aps.aps_algebra import (SIGMA, ApsElement, antihermitian_part,
                                 bar_dagger, hermitian_part, inverse,
                                 paravector, pauli_coefficients)
from rdi.jets import jets
from rdi.jets.jets import Jet
from rdi.states.state_factory import (PhysicalConstants, SpinorJet,
                                      StateParametrization, evaluate_state)
from rdi.util.util import (NonPhysicalDynamicsError, ZeroDensityError,
                           frobenius_norm)

__all__ = [
    'DEFAULT_HERMITICITY_TOL', 'FourPotential', 'FieldStrength',
    'MaxwellCurrent', 'DiracCurrent', 'ScalarInversion', 'ScenarioReport',
    'invert_potential', 'hermiticity_residual', 'hermiticity_gate',
    'field_strength', 'maxwell_current', 'homogeneous_maxwell_residual',
    'dirac_residual', 'dirac_current', 'scalar_inversion', 'invert_point'
]

DEFAULT_HERMITICITY_TOL = 1e-8

# Levi-Civita symbol
_EPSILON = np.zeros((3, 3, 3))
_EPSILON[0, 1, 2] = _EPSILON[1, 2, 0] = _EPSILON[2, 0, 1] = 1
_EPSILON[0, 2, 1] = _EPSILON[2, 1, 0] = _EPSILON[1, 0, 2] = -1


def _resolve(state, point, constants, order=3):
    """SpinorJet and constants from either a parametrization or a SpinorJet."""
    if isinstance(state, StateParametrization):
        constants = state.constants if constants is None else constants
        if point is None:
            raise ValueError('a point is required to evaluate a parametrization')
        return evaluate_state(state, point, constants, order=order), constants
    if not isinstance(state, SpinorJet):
        raise TypeError('state must be a StateParametrization or a SpinorJet')
    return state, PhysicalConstants() if constants is None else constants


def _dirac_terms(spinor, constants):
    '''
    Kinetic and mass terms of the Dirac operator with the amplitude divided out

    Returns (kinetic, mass, frame) with
    kinetic = i c hbar (sigma d l L + sigma d L) sigma_3 and
    mass = m c^2 exp(conj(l) - l) bar(L)^dagger.
    '''
    k = constants
    ell, L = spinor.log_amplitude, spinor.frame
    sigma_d_ell = sum(ell.derivative(mu)[..., None, None] * SIGMA[mu]
                      for mu in range(4))
    sigma_d_L = sum(SIGMA[mu] @ L.derivative(mu) for mu in range(4))
    kinetic = 1j * k.c * k.hbar * ((sigma_d_ell @ L + sigma_d_L) @ SIGMA[3])
    phase = jets.exp(ell.conj() - ell)
    mass = k.m * k.c**2 * (phase[..., None, None] * bar_dagger(L))
    return kinetic, mass, L


def _max(a):
    return float(np.max(a))


def hermiticity_residual(A_raw, constants=None):
    '''
    ||A - A^dagger||_F / max(||A||_F, m c) for a potential in momentum units

    The floor m c keeps the free particle (A = 0) at residual 0.
    '''
    k = PhysicalConstants() if constants is None else constants
    raw = A_raw.matrix if isinstance(A_raw, ApsElement) else A_raw
    value = jets.value_of(raw)
    anti = 2 * antihermitian_part(np.asarray(value))
    return frobenius_norm(anti) / np.maximum(frobenius_norm(value), k.m * k.c)


def invert_potential(state, point=None, constants=None):
    '''
    Invert the Dirac equation for the potential e Abar

    Parameters
    ----------

    state     : StateParametrization or SpinorJet (order 3 for fields and
                currents downstream)

    point     : (t, x, y, z) in SI units; arrays evaluate a grid. Required for
                a parametrization.

    constants : PhysicalConstants

    Returns
    -------

    A_raw     : ApsElement wrapping the matrix jet e Abar (kg m/s); its order
                is one less than the spinor's

    residual  : float or array, Hermiticity residual (see
                :func:`hermiticity_residual`)

    Raises
    ------

    SingularStateError
        when the spinor frame has (numerically) vanishing determinant
    '''
    spinor, k = _resolve(state, point, constants)
    kinetic, mass, L = _dirac_terms(spinor, k)
    ceA = (kinetic - mass) @ inverse(L)
    A_raw = ApsElement(ceA / k.c)
    return A_raw, hermiticity_residual(A_raw, k)


@dataclass(frozen=True)
class FourPotential:
    '''
    Four-potential e A_mu in momentum units (kg m/s)

    Attributes
    ----------

    covariant : Jet or array with trailing axis of length 4
                e A_mu = Tr(e Abar sigma_mu)/2

    constants : PhysicalConstants
    '''

    covariant: object
    constants: PhysicalConstants

    @classmethod
    def from_contravariant(cls, a0, a1, a2, a3, constants):
        """Build from physical components e A^0 = e A_0, e A^k = -e A_k."""
        items = [a0, -a1, -a2, -a3]
        if any(isinstance(a, Jet) for a in items):
            return cls(Jet.stack(items, axis=-1), constants)
        shape = np.broadcast_shapes(*[np.shape(a) for a in items])
        return cls(
            np.stack([np.broadcast_to(a, shape) for a in items], axis=-1),
            constants)

    @property
    def order(self):
        return self.covariant.order if isinstance(self.covariant, Jet) else 0

    def component(self, mu):
        """Contravariant component e A^mu (jet or array)."""
        a = self.covariant[..., mu]
        return a if mu == 0 else -a

    @property
    def contravariant(self):
        """e A^mu values, trailing axis of length 4."""
        a = np.array(jets.value_of(self.covariant), dtype=float)
        a[..., 1:] *= -1
        return a

    @property
    def energy_units(self):
        """c e A^mu (J)."""
        return self.constants.c * self.contravariant

    @property
    def si(self):
        """A^mu (V s/m)."""
        return self.contravariant / self.constants.e

    @property
    def matrix(self):
        """e Abar = e A_mu sigma_mu."""
        a = self.covariant
        return paravector(a[..., 0], a[..., 1], a[..., 2], a[..., 3])

    def shifted(self, delta0):
        """Add a constant to e A_0 (a gauge transformation)."""
        shift = np.zeros(4)
        shift[0] = delta0
        return FourPotential(self.covariant + shift, self.constants)


def hermiticity_gate(A_raw, tol=DEFAULT_HERMITICITY_TOL, constants=None):
    '''
    Accept a raw inverted potential only if it is Hermitian

    Parameters
    ----------

    A_raw     : ApsElement (matrix jet e Abar) from :func:`invert_potential`

    tol       : float
                largest admissible Hermiticity residual

    Returns
    -------

    FourPotential built from the Hermitian part

    Raises
    ------

    NonPhysicalDynamicsError
        carrying the largest residual, when it exceeds ``tol``
    '''
    k = PhysicalConstants() if constants is None else constants
    residual = _max(hermiticity_residual(A_raw, k))
    if residual > tol:
        raise NonPhysicalDynamicsError(residual, tol)
    raw = A_raw.matrix if isinstance(A_raw, ApsElement) else A_raw
    covariant = pauli_coefficients(hermitian_part(raw))
    return FourPotential(covariant.real, k)


@dataclass(frozen=True)
class FieldStrength:
    '''
    Electromagnetic field e E (N) and e B (kg/s)

    The stored jets keep the derivatives needed for the Maxwell source.
    '''

    eE: object
    eB: object
    constants: PhysicalConstants

    @property
    def E(self):
        """Electric field (V/m)."""
        return np.asarray(jets.value_of(self.eE)) / self.constants.e

    @property
    def B(self):
        """Magnetic field (T)."""
        return np.asarray(jets.value_of(self.eB)) / self.constants.e

    def tensor(self):
        '''
        F^{mu nu} in V/m: F^{k0} = E_k, F^{ij} = -c eps_ijk B_k

        Antisymmetric by construction.
        '''
        E, B = self.E, self.B
        F = np.zeros(E.shape[:-1] + (4, 4))
        F[..., 1:, 0] = E
        F[..., 0, 1:] = -E
        F[..., 1:, 1:] = -self.constants.c * np.einsum('ijk,...k->...ij',
                                                      _EPSILON, B)
        return F


def _vector(components):
    return Jet.stack(components, axis=-1)


def field_strength(potential):
    '''
    Fields of a jet-valued four-potential

    e E_k = -c (d_k e A^0 + d_0 e A^k) with d_0 = (1/c) d/dt, and
    e B = curl of the vector part of e A^mu.

    Parameters
    ----------

    potential : FourPotential of order >= 1

    Returns
    -------

    FieldStrength, one derivative order below the potential
    '''
    if potential.order < 1:
        raise ValueError('field_strength needs a jet-valued potential')
    c = potential.constants.c
    a = [potential.component(mu) for mu in range(4)]
    eE = [-c * (a[0].derivative(k) + a[k].derivative(0)) for k in (1, 2, 3)]
    d = lambda i, j: a[j].derivative(i)
    eB = [d(2, 3) - d(3, 2), d(3, 1) - d(1, 3), d(1, 2) - d(2, 1)]
    return FieldStrength(_vector(eE), _vector(eB), potential.constants)


@dataclass(frozen=True)
class MaxwellCurrent:
    '''
    Source of the inhomogeneous Maxwell equations

    Attributes
    ----------

    mu0_eJ : array with trailing axis 4, mu_0 e J^nu (kg/(s m)) with J^0 = c rho
    '''

    mu0_eJ: np.ndarray
    constants: PhysicalConstants

    @property
    def J(self):
        """J^nu in A/m^2."""
        k = self.constants
        return self.mu0_eJ / (k.mu0 * k.e)


def maxwell_current(source):
    '''
    The four-current J^nu = d_mu F^{mu nu}/(epsilon_0 c) supporting the fields

    mu_0 e J^0 = div(e E)/c and mu_0 e J^k = curl(e B)_k - (1/c) d_0 e E_k.

    Parameters
    ----------

    source : FourPotential of order >= 2, or FieldStrength of order >= 1
    '''
    fields = field_strength(source) if isinstance(source, FourPotential) else source
    if not isinstance(fields.eE, Jet) or fields.eE.order < 1:
        raise ValueError('maxwell_current needs fields carrying derivatives')
    c = fields.constants.c
    E = [fields.eE[..., k] for k in range(3)]
    B = [fields.eB[..., k] for k in range(3)]
    dE = lambda mu, k: E[k].derivative(mu).value
    dB = lambda mu, k: B[k].derivative(mu).value
    J0 = (dE(1, 0) + dE(2, 1) + dE(3, 2)) / c
    J1 = dB(2, 2) - dB(3, 1) - dE(0, 0) / c
    J2 = dB(3, 0) - dB(1, 2) - dE(0, 1) / c
    J3 = dB(1, 1) - dB(2, 0) - dE(0, 2) / c
    return MaxwellCurrent(np.stack([J0, J1, J2, J3], axis=-1), fields.constants)


def homogeneous_maxwell_residual(fields):
    '''
    Relative size of div(B) and curl(E) + dB/dt

    Both vanish identically for fields derived from a potential; the residual
    measures the derivative bookkeeping. The largest violation is divided by
    the largest field derivative, c dB counted in the units of dE.
    '''
    c = fields.constants.c
    E = [fields.eE[..., k] for k in range(3)]
    B = [fields.eB[..., k] for k in range(3)]
    dE = np.stack([E[k].derivative(mu).value for mu in range(4) for k in range(3)])
    dB = c * np.stack(
        [B[k].derivative(mu).value for mu in range(4) for k in range(3)])
    d = lambda grad, mu, k: grad[3 * mu + k]
    violations = [
        d(dB, 1, 0) + d(dB, 2, 1) + d(dB, 3, 2),
        d(dE, 2, 2) - d(dE, 3, 1) + d(dB, 0, 0),
        d(dE, 3, 0) - d(dE, 1, 2) + d(dB, 0, 1),
        d(dE, 1, 1) - d(dE, 2, 0) + d(dB, 0, 2),
    ]
    scale = max(_max(np.abs(dE)), _max(np.abs(dB)))
    if scale == 0:
        return 0.0
    return max(_max(np.abs(v)) for v in violations) / scale


def _potential_matrix(potential):
    if isinstance(potential, FourPotential):
        return jets.value_of(potential.matrix)
    if isinstance(potential, ApsElement):
        return jets.value_of(potential.matrix)
    potential = np.asarray(jets.value_of(potential))
    if potential.shape[-2:] == (2, 2):
        return potential
    raise TypeError('potential must be a FourPotential or a 2x2 matrix')


def dirac_residual(state, potential, point=None, constants=None):
    '''
    Normalized residual of the matrix Dirac equation

    ||i c hbar dbar(Psi) sigma_3 - c e Abar Psi - m c^2 bar(Psi)^dagger||_F
    / (m c^2 ||Psi||_F), evaluated with the amplitude divided out.

    Parameters
    ----------

    state     : StateParametrization or SpinorJet

    potential : FourPotential or e Abar matrix (momentum units)

    Returns
    -------

    float or array
    '''
    spinor, k = _resolve(state, point, constants, order=1)
    kinetic, mass, L = _dirac_terms(spinor, k)
    A = _potential_matrix(potential)
    L0 = L.value
    r = kinetic.value - k.c * (A @ L0) - mass.value
    return frobenius_norm(r) / (k.m * k.c**2 * frobenius_norm(L0))


@dataclass(frozen=True)
class DiracCurrent:
    '''
    Dirac current J_D^mu = Tr(Psi Psi^dagger sigma_mu)/2 and its velocity

    Attributes
    ----------

    J_D          : array, trailing axis 4 (density units of rho)

    velocity     : array, trailing axis 3, v^k = c J_D^k/J_D^0 (m/s)

    superluminal : bool array, |v| >= c
    '''

    J_D: np.ndarray
    velocity: np.ndarray
    superluminal: np.ndarray


def dirac_current(state, point=None, constants=None):
    '''
    Dirac current and the velocity it carries

    J_D^mu = Tr(Psi Psi^dagger sigma_mu)/2, half the bare trace, so that
    J_D = rho (u^0, u). The velocity is taken from the unimodular frame, so it
    stays defined where the density underflows.

    Raises
    ------

    ZeroDensityError
        when J_D^0 vanishes
    '''
    spinor, k = _resolve(state, point, constants, order=0)
    L = spinor.frame.value
    frame_current = np.real(
        pauli_coefficients(L @ np.conj(np.swapaxes(L, -1, -2))))
    log_rho = 2 * np.real(spinor.log_amplitude.value)
    if np.any(frame_current[..., 0] <= 0) or np.any(np.isneginf(log_rho)):
        raise ZeroDensityError('J_D^0 vanishes')
    J_D = np.exp(log_rho)[..., None] * frame_current
    velocity = k.c * frame_current[..., 1:] / frame_current[..., :1]
    speed = np.linalg.norm(velocity, axis=-1)
    return DiracCurrent(J_D, velocity, speed >= k.c)


@dataclass(frozen=True)
class ScalarInversion:
    '''
    Scalar potential V (J) and the residual of the scalar ansatz

    The residual is the scale-relative norm of what a real scalar cannot
    absorb (vector and anti-Hermitian parts).
    '''

    V: np.ndarray
    residual: np.ndarray


def scalar_inversion(state,
                     point=None,
                     constants=None,
                     kappa=0.0,
                     tol=DEFAULT_HERMITICITY_TOL,
                     density_scale=None):
    '''
    Solve for a scalar potential instead of an electromagnetic one

    (i c hbar dbar(Psi) sigma_3) Psi^-1 = (m c^2 + V + kappa |psi|^2)
    bar(Psi)^dagger Psi^-1 is projected onto its scalar multiple; |psi|^2 is
    J_D^0 times the state's ``density_scale``.

    Parameters
    ----------

    kappa         : strength of the nonlinear interaction (J per unit density)

    tol           : largest admissible residual

    density_scale : overrides ``state.density_scale``

    Returns
    -------

    ScalarInversion

    Raises
    ------

    NonPhysicalDynamicsError
        when the state needs electromagnetic components
    '''
    spinor, k = _resolve(state, point, constants, order=1)
    if density_scale is None:
        density_scale = (state.density_scale
                         if isinstance(state, StateParametrization) else 1.0)
    kinetic, mass, L = _dirac_terms(spinor, k)
    L_inv = inverse(L.value)
    M = kinetic.value @ L_inv
    N = mass.value @ L_inv / (k.m * k.c**2)
    s = (np.sum(np.conj(N) * M, axis=(-2, -1)) /
         np.sum(np.abs(N)**2, axis=(-2, -1)))
    s = np.real(s)
    residual = frobenius_norm(M - s[..., None, None] * N) / np.maximum(
        frobenius_norm(M), k.m * k.c**2)
    worst = _max(residual)
    if worst > tol:
        raise NonPhysicalDynamicsError(
            worst, tol, 'the state is not reachable by a scalar potential: '
            'residual {:.3e} exceeds tolerance {:.3e}'.format(worst, tol))
    density = np.exp(2 * np.real(spinor.log_amplitude.value)) * density_scale
    V = s - k.m * k.c**2 - kappa * density
    return ScalarInversion(V, residual)


@dataclass(frozen=True)
class ScenarioReport:
    '''
    Everything the inversion yields at a set of points

    Attributes
    ----------

    point                : the (t, x, y, z) arrays evaluated

    potential            : FourPotential (e A_mu, kg m/s)

    hermiticity_residual : array

    E, B                 : arrays (V/m, T), trailing axis 3

    maxwell_current      : array (A/m^2), trailing axis 4

    dirac_current        : array, trailing axis 4

    velocity             : array (m/s), trailing axis 3

    dirac_residual       : array
    '''

    point: tuple
    potential: FourPotential
    hermiticity_residual: np.ndarray
    E: np.ndarray
    B: np.ndarray
    maxwell_current: np.ndarray
    dirac_current: np.ndarray
    velocity: np.ndarray
    dirac_residual: np.ndarray


def invert_point(param, point, constants=None, tol=DEFAULT_HERMITICITY_TOL):
    '''
    Run the full inversion pipeline

    Parameters
    ----------

    param : StateParametrization

    point : (t, x, y, z); arrays evaluate a whole grid at once

    Returns
    -------

    ScenarioReport

    Raises
    ------

    NonPhysicalDynamicsError
        when the inverted potential fails the Hermiticity gate
    '''
    k = param.constants if constants is None else constants
    spinor = evaluate_state(param, point, k, order=3)
    A_raw, residual = invert_potential(spinor, constants=k)
    potential = hermiticity_gate(A_raw, tol, k)
    fields = field_strength(potential)
    current = maxwell_current(fields)
    bilinear = dirac_current(spinor, constants=k)
    if np.any(bilinear.superluminal):
        warnings.warn('bilinear velocity reaches c at some points',
                      RuntimeWarning)
    return ScenarioReport(point=tuple(np.broadcast_arrays(*point)),
                          potential=potential,
                          hermiticity_residual=residual,
                          E=fields.E,
                          B=fields.B,
                          maxwell_current=current.J,
                          dirac_current=bilinear.J_D,
                          velocity=bilinear.velocity,
                          dirac_residual=dirac_residual(spinor, potential,
                                                        constants=k))
