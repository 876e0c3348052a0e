"""
Closed forms of the stationary states confined along z: the electromagnetic
soft-core Coulomb well, its rotating generalization, and the states held by
scalar and nonlinear interactions
"""

__author__ = "rdi developers"

from dataclasses import dataclass, field

import numpy as np

from rdi.catalog.closed_form import ClosedForm, unpack_point
from rdi.catalog.rotation import rotation_closed_form
from rdi.states.curves import Curve, SoftCoreProfile
from rdi.states.state_factory import PhysicalConstants, confined_3d_state
from rdi.util.util import JetDomainError

__all__ = [
    'Confined3dParams', 'confined_3d_closed_form', 'soft_coulomb',
    'rotation_3d_closed_form', 'scalar_potential_closed_form',
    'nonlinear_potential'
]


@dataclass(frozen=True)
class Confined3dParams:
    '''
    Parameters of the confined stationary state

    Attributes
    ----------

    profile   : Curve, f(z) in metres with |f'(z)| < 1

    B0        : magnetic field along z (T)

    energy    : epsilon (J)

    constants : PhysicalConstants
    '''

    profile: Curve
    B0: float = 0.0
    energy: float = 0.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    @classmethod
    def soft_core(cls, xi, B0=0.0, energy=0.0, constants=None):
        k = PhysicalConstants() if constants is None else constants
        return cls(SoftCoreProfile(xi), B0, energy, k)

    def state(self):
        return confined_3d_state(self.profile, self.B0, self.energy,
                                 self.constants)


def _slope_factor(profile, z):
    _, f1, f2 = profile.derivatives(z, 2)
    if np.any(np.abs(f1) >= 1):
        raise JetDomainError("|f'(z)| must stay below 1")
    return np.sqrt(1 - f1 * f1), f1, f2


def confined_3d_closed_form(params, point):
    '''
    Potential of the confined state

    e A^0 = epsilon/c + (2 m c (f'^2 - 1) - hbar f'')/(2 sqrt(1 - f'^2)),
    e A = (e B0/2)(-y, x, 0): the confinement along z is electrostatic and
    the transverse Gaussian is held by a uniform magnetic field.

    Raises
    ------

    JetDomainError
        where |f'(z)| >= 1
    '''
    k = params.constants
    t, x, y, z = unpack_point(point)
    root, f1, f2 = _slope_factor(params.profile, z)
    # (2 m c (f'^2 - 1) - hbar f'')/(2 sqrt(1 - f'^2)), shifted by epsilon/c
    eA0 = params.energy / k.c + (2 * k.m * k.c * (f1**2 - 1) - k.hbar * f2) / (
        2 * root)
    eB0 = k.e * params.B0
    zero = np.zeros_like(t)
    return ClosedForm.from_components(t.shape, k,
                                      eA=(eA0, -eB0 * y / 2, eB0 * x / 2, zero),
                                      eB=(zero, zero, eB0 + zero))


def soft_coulomb(xi, z, constants=None):
    '''
    e A^0 of the soft-core profile f(z) = sqrt(xi^2 + z^2) at zero energy

    -xi m c/sqrt(xi^2 + z^2) - xi hbar/(2(xi^2 + z^2)): a soft-core Coulomb
    well plus a short-range term.

    Examples
    --------

    >>> from rdi.states import PhysicalConstants
    >>> float(soft_coulomb(1.0, 0.0, PhysicalConstants.natural()))
    -1.5

    '''
    k = PhysicalConstants() if constants is None else constants
    r2 = xi * xi + np.asarray(z, dtype=float)**2
    return -xi * k.m * k.c / np.sqrt(r2) - xi * k.hbar / (2 * r2)


def rotation_3d_closed_form(params, profile, point):
    '''
    Potential of the rotating packet confined along z

    c e Abar = c e Abar(planar) - m c^2 + K (u^0 - u.sigma) with
    K = m c^2 (1 - sqrt(1 - f'^2)) - c hbar f''/(2 sqrt(1 - f'^2)) and u the
    proper velocity of the orbit.

    Parameters
    ----------

    params  : RotationScenarioParams

    profile : Curve, f(z)

    Returns
    -------

    ClosedForm with the potential only
    '''
    k = params.constants
    planar = rotation_closed_form(params, point)
    t, x, y, z = unpack_point(point)
    root, _, f2 = _slope_factor(profile, z)
    K = k.m * k.c**2 * (1 - root) - k.c * k.hbar * f2 / (2 * root)
    w, r0, g = params.omega, params.r0, params.gamma
    u1 = -g * w * r0 * np.sin(w * t) / k.c
    u2 = g * w * r0 * np.cos(w * t) / k.c
    eA = planar.eA
    zero = np.zeros_like(t)
    return ClosedForm.from_components(
        t.shape, k,
        eA=(eA[..., 0] + K * g / k.c - k.m * k.c, eA[..., 1] + K * u1 / k.c,
            eA[..., 2] + K * u2 / k.c, zero))


def scalar_potential_closed_form(xi, energy, z, constants=None):
    '''
    Scalar potential holding the stationary state of
    :func:`rdi.states.scalar_state`

    V = -m c^2 + (epsilon/xi) sqrt(z^2 + xi^2) - hbar c/(2 sqrt(z^2 + xi^2)) (J)
    '''
    k = PhysicalConstants() if constants is None else constants
    r = np.sqrt(np.asarray(z, dtype=float)**2 + xi * xi)
    return -k.m * k.c**2 + energy / xi * r - k.hbar * k.c / (2 * r)


def nonlinear_potential(xi, z, kappa=0.0, constants=None):
    '''
    Scalar potential of :func:`rdi.states.nonlinear_state` for a nonlinear
    coupling kappa |psi|^2

    V = 2 m c^2 z/xi - kappa sqrt(2mc/(pi xi hbar)) exp(-m c (2z + xi)^2/(2 xi hbar))
    '''
    k = PhysicalConstants() if constants is None else constants
    z = np.asarray(z, dtype=float)
    density = np.sqrt(2 * k.m * k.c / (np.pi * xi * k.hbar)) * np.exp(
        -k.m * k.c * (2 * z + xi)**2 / (2 * xi * k.hbar))
    return 2 * k.m * k.c**2 * z / xi - kappa * density
