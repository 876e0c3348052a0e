"""
Differentiable spinor fields built from (rho, u, theta, beta) parametrizations
"""

__author__ = "rdi developers"

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.constants

from rdi.aps.aps_algebra import boost, rotation
from rdi.jets import jets
from rdi.jets.jets import Jet, seed
from rdi.states.curves import Curve, HyperbolicPath, SoftCoreProfile
from rdi.util.util import SuperluminalError

__all__ = [
    'PhysicalConstants', 'StateParametrization', 'SpinorJet', 'evaluate_state',
    'rest_state', 'rotation_state', 'translation_state', 'confined_3d_state',
    'rotating_confined_3d_state', 'scalar_state', 'nonlinear_state',
    'boosted_landau', 'accelerated_boost_state', 'nonlinear_density_scale'
]


@dataclass(frozen=True)
class PhysicalConstants:
    '''
    Physical constants entering the Dirac equation

    Every field can be overridden (``dataclasses.replace``), which is how the
    classical (hbar -> 0) and nonrelativistic (c -> infinity) limits are checked.

    Attributes
    ----------

    hbar      : reduced Planck constant (J s)

    c         : speed of light (m/s)

    e         : elementary charge (C)

    m         : particle mass (kg)

    epsilon_0 : vacuum permittivity (F/m)
    '''

    hbar: float = scipy.constants.hbar
    c: float = scipy.constants.c
    e: float = scipy.constants.e
    m: float = scipy.constants.m_e
    epsilon_0: float = scipy.constants.epsilon_0

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not np.isfinite(value) or value <= 0:
                raise ValueError('{} must be a positive finite number, got {}'.format(
                    f.name, value))

    @classmethod
    def codata(cls):
        """CODATA values for an electron (scipy.constants)."""
        return cls()

    @classmethod
    def natural(cls):
        """hbar = c = e = m = epsilon_0 = 1."""
        return cls(1.0, 1.0, 1.0, 1.0, 1.0)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @property
    def mu0(self):
        return 1 / (self.epsilon_0 * self.c**2)

    @property
    def rest_energy(self):
        return self.m * self.c**2


def _zero(t, x, y, z):
    return 0.0


def _no_velocity(t, x, y, z):
    return (0.0, 0.0, 0.0)


def _no_angles(t, x, y, z):
    return (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class StateParametrization:
    '''
    A desired evolution Psi = sqrt(rho) B(u) R(theta) exp(i beta/2)

    All callables take jets (t, x, y, z) with t in seconds and return jets or
    numbers.

    Parameters
    ----------

    log_rho   : ln rho; Gaussian envelopes are carried in logarithmic form
                so that they stay invertible where rho itself underflows

    velocity  : proper velocity components (u1, u2, u3)

    angles    : rotation angles (theta1, theta2, theta3) in radians

    beta      : Yvon-Takabayashi angle in radians

    energy    : energy epsilon (J) of the global factor exp(-i epsilon t sigma_3/hbar)

    density_scale : factor turning rho into the density |psi|^2 entering a
                nonlinear scalar interaction

    name, parameters : bookkeeping for reports
    '''

    log_rho: Callable = _zero
    velocity: Callable = _no_velocity
    angles: Callable = _no_angles
    beta: Callable = _zero
    energy: float = 0.0
    density_scale: float = 1.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    name: str = 'custom'
    parameters: dict = field(default_factory=dict)

    @classmethod
    def from_rho(cls, rho, **kwargs):
        """Build from rho instead of ln rho."""
        return cls(log_rho=lambda t, x, y, z: jets.log(rho(t, x, y, z)),
                   **kwargs)

    def rho(self, t, x, y, z):
        return jets.exp(self.log_rho(t, x, y, z))


@dataclass(frozen=True)
class SpinorJet:
    '''
    Psi = exp(log_amplitude) * frame

    Attributes
    ----------

    log_amplitude : complex scalar jet, (1/2) ln rho + i beta/2

    frame         : 2x2 matrix jet B(u) R(theta), unit determinant
    '''

    log_amplitude: Jet
    frame: Jet

    @property
    def psi(self):
        """The spinor matrix jet; underflows where rho does."""
        return jets.exp(self.log_amplitude)[..., None, None] * self.frame

    @property
    def value(self):
        return self.psi.value

    @property
    def order(self):
        return min(self.log_amplitude.order, self.frame.order)


def _as_jet(v, like):
    if isinstance(v, Jet):
        return v
    return Jet.constant(np.broadcast_to(np.asarray(v), like.shape), like.order)


def evaluate_state(param, point, constants=None, order=3):
    '''
    Evaluate a parametrized spinor field and its derivatives at a point

    Parameters
    ----------

    param     : StateParametrization

    point     : (t, x, y, z) in SI units; array entries evaluate a grid

    constants : PhysicalConstants, default ``param.constants``

    order     : int
                derivative order of the returned jets; the engine needs 3 to
                obtain fields and currents from the inverted potential

    Returns
    -------

    SpinorJet
    '''
    constants = param.constants if constants is None else constants
    ct, x, y, z = seed(point, constants.c, order=order)
    t = ct / constants.c
    log_rho = _as_jet(param.log_rho(t, x, y, z), x)
    beta = _as_jet(param.beta(t, x, y, z), x)
    theta1, theta2, theta3 = param.angles(t, x, y, z)
    if param.energy:
        theta3 = theta3 + 2 * param.energy * t / constants.hbar
    frame = boost(param.velocity(t, x, y, z)) @ rotation((theta1, theta2, theta3))
    if not isinstance(frame, Jet):
        frame = Jet.constant(np.broadcast_to(frame, x.shape + (2, 2)), order)
    return SpinorJet(0.5 * log_rho + 0.5j * beta, frame)


# ----------------------------------------------------------------------
# builders


def rest_state(constants=None):
    """Free particle at rest, Psi = exp(-i m c^2 t sigma_3/hbar)."""
    k = PhysicalConstants() if constants is None else constants
    return StateParametrization(
        angles=lambda t, x, y, z: (0.0, 0.0, 2 * k.m * k.c**2 * t / k.hbar),
        constants=k,
        name='rest')


def _check_rotation(r0, omega, c):
    if abs(r0 * omega) >= c:
        raise SuperluminalError(
            'r0*|omega| = {:.6g} m/s must stay below c'.format(abs(r0 * omega)))


def _rotation_pieces(r0, omega, B0, k):
    gamma = 1 / np.sqrt(1 - (r0 * omega / k.c)**2)

    def centre(t):
        return r0 * jets.cos(omega * t), r0 * jets.sin(omega * t)

    def log_rho(t, x, y, z):
        X, Y = centre(t)
        return -k.e * B0 * ((x - X)**2 + (y - Y)**2) / (2 * k.hbar)

    def velocity(t, x, y, z):
        X, Y = centre(t)
        return (-gamma * omega * Y / k.c, gamma * omega * X / k.c, 0.0)

    return gamma, log_rho, velocity


def rotation_state(r0, omega, B0, constants=None):
    '''
    Gaussian packet circling the origin without spreading

    The packet exp(-e B0 |r - R(t)|^2/(4 hbar)) with R(t) = r0(cos wt, sin wt)
    is boosted tangentially, u = gamma (dR/dt)/c, and carries the co-moving
    rest phase theta_3 = 2(mc/hbar)(u0 ct - u.r).

    Parameters
    ----------

    r0    : orbit radius (m)

    omega : angular frequency (rad/s); dispersionless when it equals
            :func:`rdi.catalog.resonant_frequency`

    B0    : magnetic field scale (T)

    Raises
    ------

    SuperluminalError
        when r0 |omega| >= c
    '''
    k = PhysicalConstants() if constants is None else constants
    _check_rotation(r0, omega, k.c)
    gamma, log_rho, velocity = _rotation_pieces(r0, omega, B0, k)

    def angles(t, x, y, z):
        u1, u2, _ = velocity(t, x, y, z)
        return (0.0, 0.0,
                2 * k.m * k.c / k.hbar * (gamma * k.c * t - u1 * x - u2 * y))

    return StateParametrization(log_rho=log_rho,
                                velocity=velocity,
                                angles=angles,
                                constants=k,
                                name='rotation',
                                parameters={
                                    'r0': r0,
                                    'omega': omega,
                                    'B0': B0
                                })


def _check_path(path, c, window):
    speed = path.max_speed(window)
    if speed >= c:
        raise SuperluminalError(
            'trajectory speed reaches {:.6g} m/s, at or above c'.format(speed))


def translation_state(path,
                      B0,
                      constants=None,
                      normalized=True,
                      window=(0.0, 1.0)):
    '''
    Gaussian packet moved along y by the trajectory Y(t) without spreading

    Parameters
    ----------

    path       : Curve
                 trajectory Y(t) (m)

    B0         : magnetic field scale (T)

    normalized : bool
                 include the 1/sqrt(u0(t)) amplitude that makes the dynamics
                 reachable; ``False`` gives the unreachable variant

    window     : time interval on which |dY/dt| < c is checked for curves
                 without a closed-form speed bound

    Raises
    ------

    SuperluminalError
    '''
    k = PhysicalConstants() if constants is None else constants
    _check_path(path, k.c, window)

    def kinematics(t):
        Y, Ydot = path.derivatives(t, 1)
        gamma = 1 / jets.sqrt(1 - Ydot * Ydot / k.c**2)
        return Y, gamma, gamma * Ydot / k.c

    def log_rho(t, x, y, z):
        Y, gamma, _ = kinematics(t)
        envelope = -k.e * B0 * (x * x + (y - Y)**2) / (2 * k.hbar)
        if normalized:
            return envelope - jets.log(gamma)
        return envelope

    def velocity(t, x, y, z):
        return (0.0, kinematics(t)[2], 0.0)

    def angles(t, x, y, z):
        _, gamma, u2 = kinematics(t)
        return (0.0, 0.0, 2 * k.m * k.c / k.hbar * (gamma * k.c * t - u2 * y))

    return StateParametrization(
        log_rho=log_rho,
        velocity=velocity,
        angles=angles,
        constants=k,
        name='translation' if normalized else 'broken-translation',
        parameters={
            'path': path,
            'B0': B0
        })


def confined_3d_state(profile, B0, energy=0.0, constants=None):
    '''
    Stationary state confined in all three directions

    Psi = exp(i beta/2) exp(-e B0 (x^2+y^2)/(4 hbar) - m c f(z)/hbar)
    exp(-i energy t sigma_3/hbar) with sin(beta) = f'(z).

    Parameters
    ----------

    profile : Curve
              f(z) (m) with |f'(z)| < 1; :class:`SoftCoreProfile` gives the
              soft-core Coulomb well

    B0      : magnetic field (T)

    energy  : epsilon (J)
    '''
    k = PhysicalConstants() if constants is None else constants

    def log_rho(t, x, y, z):
        f = profile(z)
        return (-k.e * B0 * (x * x + y * y) / (2 * k.hbar) -
                2 * k.m * k.c * f / k.hbar)

    def beta(t, x, y, z):
        return jets.arcsin(profile.derivative(z, 1))

    return StateParametrization(log_rho=log_rho,
                                beta=beta,
                                energy=energy,
                                constants=k,
                                name='confined-3d',
                                parameters={
                                    'profile': profile,
                                    'B0': B0,
                                    'energy': energy
                                })


def rotating_confined_3d_state(r0, omega, B0, profile, constants=None):
    '''
    The circling Gaussian of :func:`rotation_state` confined along z by f(z)

    The rest phase is shifted by m c^2 t/hbar, theta_3 = 2(mc/hbar)((u0-1)ct - u.r),
    so that r0 -> 0 reduces to :func:`confined_3d_state` at zero energy.
    '''
    k = PhysicalConstants() if constants is None else constants
    _check_rotation(r0, omega, k.c)
    gamma, planar_log_rho, velocity = _rotation_pieces(r0, omega, B0, k)

    def log_rho(t, x, y, z):
        return planar_log_rho(t, x, y, z) - 2 * k.m * k.c * profile(z) / k.hbar

    def angles(t, x, y, z):
        u1, u2, _ = velocity(t, x, y, z)
        return (0.0, 0.0, 2 * k.m * k.c / k.hbar *
                ((gamma - 1) * k.c * t - u1 * x - u2 * y))

    def beta(t, x, y, z):
        return jets.arcsin(profile.derivative(z, 1))

    return StateParametrization(log_rho=log_rho,
                                velocity=velocity,
                                angles=angles,
                                beta=beta,
                                constants=k,
                                name='rotating-confined-3d',
                                parameters={
                                    'r0': r0,
                                    'omega': omega,
                                    'B0': B0,
                                    'profile': profile
                                })


def scalar_state(xi, energy, constants=None):
    '''
    Stationary state held by a purely scalar potential

    beta = arctan(z/xi) and ln rho = -energy z^2/(c hbar xi) + ln(z^2 + xi^2)/2,
    i.e. f(z) = energy z^2/(2 m c^2 xi) - (hbar/4mc) ln(z^2 + xi^2).
    '''
    k = PhysicalConstants() if constants is None else constants
    if xi <= 0:
        raise ValueError('xi must be positive')

    def log_rho(t, x, y, z):
        return (-energy * z * z / (k.c * k.hbar * xi) +
                0.5 * jets.log(z * z + xi**2))

    def beta(t, x, y, z):
        return jets.arctan(z / xi)

    return StateParametrization(log_rho=log_rho,
                                beta=beta,
                                energy=energy,
                                constants=k,
                                name='scalar',
                                parameters={
                                    'xi': xi,
                                    'energy': energy
                                })


def nonlinear_density_scale(xi, constants):
    """sqrt(2mc/(pi xi hbar)) exp(-m c xi/(2 hbar)): |psi|^2 = scale * rho."""
    k = constants
    return (np.sqrt(2 * k.m * k.c / (np.pi * xi * k.hbar)) *
            np.exp(-k.m * k.c * xi / (2 * k.hbar)))


def nonlinear_state(xi, constants=None):
    '''
    State e^{i pi/4} exp(-m c z/hbar - m c z^2/(xi hbar)) sustained by a
    scalar plus nonlinear (density-dependent) interaction
    '''
    k = PhysicalConstants() if constants is None else constants
    if xi <= 0:
        raise ValueError('xi must be positive')

    def log_rho(t, x, y, z):
        return -2 * k.m * k.c * z / k.hbar - 2 * k.m * k.c * z * z / (xi * k.hbar)

    return StateParametrization(log_rho=log_rho,
                                beta=lambda t, x, y, z: np.pi / 2,
                                density_scale=nonlinear_density_scale(xi, k),
                                constants=k,
                                name='nonlinear',
                                parameters={'xi': xi})


def boosted_landau(u2, B0, constants=None):
    '''
    Landau ground state seen from a frame moving along y

    Psi = exp(-e B0 (x^2 + (ct u2 - u0 y)^2)/(4 hbar)) B(0, u2, 0)
    exp(-i(mc/hbar)(ct u0 - u2 y) sigma_3)

    Parameters
    ----------

    u2 : proper velocity of the boost (dimensionless)

    B0 : rest-frame magnetic field (T)
    '''
    k = PhysicalConstants() if constants is None else constants
    u0 = np.sqrt(1 + u2 * u2)

    def log_rho(t, x, y, z):
        return -k.e * B0 * (x * x + (k.c * t * u2 - u0 * y)**2) / (2 * k.hbar)

    return StateParametrization(
        log_rho=log_rho,
        velocity=lambda t, x, y, z: (0.0, u2, 0.0),
        angles=lambda t, x, y, z: (0.0, 0.0, 2 * k.m * k.c / k.hbar *
                                   (k.c * t * u0 - u2 * y)),
        constants=k,
        name='boosted-landau',
        parameters={
            'u2': u2,
            'B0': B0
        })


def accelerated_boost_state(E0, B0, constants=None, window=(0.0, 1.0)):
    '''
    Landau packet accelerated along y by a constant electric field E0

    The boost rapidity grows as arcsinh(e E0 t/(m c)); the packet follows the
    hyperbolic worldline with the 1/sqrt(u0) normalization of
    :func:`translation_state`.
    '''
    k = PhysicalConstants() if constants is None else constants
    path = HyperbolicPath(k.e * E0 / (k.m * k.c), k.c)
    param = translation_state(path, B0, constants=k, window=window)
    return dataclasses.replace(param,
                               name='accelerated-boost',
                               parameters={
                                   'E0': E0,
                                   'B0': B0
                               })
