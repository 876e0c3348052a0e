"""
Closed forms of the dispersionless rotation: a Gaussian packet of width
sqrt(2 hbar/(e B0)) circling the origin on a ring of radius r0
"""

__author__ = "rdi developers"

from dataclasses import dataclass, field

import numpy as np

from rdi.catalog.closed_form import ClosedForm, unpack_point
from rdi.states.state_factory import PhysicalConstants, rotation_state
from rdi.util.util import SuperluminalError

__all__ = [
    'RotationScenarioParams', 'resonant_frequency',
    'cyclotron_expansion_check', 'rotation_closed_form',
    'rotation_classical_fields', 'rotation_nonrelativistic_fields',
    'rotation_current_norm_squared', 'rotation_current_coefficient',
    'quantum_gap'
]


@dataclass(frozen=True)
class RotationScenarioParams:
    '''
    Parameters of the rotating packet

    Attributes
    ----------

    r0        : orbit radius (m)

    omega     : angular frequency (rad/s)

    B0        : magnetic field scale (T)

    constants : PhysicalConstants

    Raises
    ------

    SuperluminalError
        when r0 |omega| >= c
    '''

    r0: float
    omega: float
    B0: float
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if abs(self.r0 * self.omega) >= self.constants.c:
            raise SuperluminalError(
                'r0*|omega| = {:.6g} m/s must stay below c'.format(
                    abs(self.r0 * self.omega)))

    @classmethod
    def resonant(cls, r0, B0, constants=None):
        """Rotation at the dispersionless frequency of ``B0``."""
        k = PhysicalConstants() if constants is None else constants
        return cls(r0, resonant_frequency(B0, k), B0, k)

    @property
    def speed(self):
        return abs(self.r0 * self.omega)

    @property
    def beta(self):
        return self.r0 * self.omega / self.constants.c

    @property
    def gamma(self):
        return 1 / np.sqrt(1 - self.beta**2)

    def state(self):
        """The matching :class:`rdi.states.StateParametrization`."""
        return rotation_state(self.r0, self.omega, self.B0, self.constants)


def resonant_frequency(B0, constants=None):
    '''
    Frequency at which the rotating packet needs no current oscillation

    The negative root of hbar w^2 - 2 m c^2 w - 2 e B0 c^2 = 0,
    w0 = (m c^2 - sqrt((m c^2)^2 + 2 e B0 c^2 hbar))/hbar, evaluated without
    the cancellation between the two terms.

    Parameters
    ----------

    B0        : float
                magnetic field (T), non-negative

    constants : PhysicalConstants

    Returns
    -------

    float, rad/s

    Examples
    --------

    >>> w0 = resonant_frequency(0.35)
    >>> round(w0 * 1e-9, 2)
    -61.56

    '''
    if B0 < 0:
        raise ValueError('B0 must be non-negative')
    k = PhysicalConstants() if constants is None else constants
    rest = k.m * k.c**2
    root = np.sqrt(rest**2 + 2 * k.e * B0 * k.c**2 * k.hbar)
    return -2 * k.e * B0 * k.c**2 / (rest + root)


def cyclotron_expansion_check(B0, constants=None):
    '''
    w0 + w_c - hbar w_c^2/(2 m c^2) with w_c = e B0/m

    The first quantum correction to the cyclotron frequency; the returned
    remainder is second order in hbar.
    '''
    k = PhysicalConstants() if constants is None else constants
    w_c = k.e * B0 / k.m
    return resonant_frequency(B0, k) + w_c - k.hbar * w_c**2 / (2 * k.m * k.c**2)


def _orbit(params, t):
    w = params.omega
    return np.cos(t * w), np.sin(t * w), np.cos(2 * t * w), np.sin(2 * t * w)


def _roots(params):
    # sqrt(c^2 - r0^2 w^2) and its factored twin sqrt((c - r0 w)(c + r0 w))
    c, r0, w = params.constants.c, params.r0, params.omega
    return np.sqrt(c**2 - r0**2 * w**2), np.sqrt((c - r0 * w) * (c + r0 * w))


def rotation_current_coefficient(params):
    """hbar w^2 - 2 c^2 (e B0 + m w); the current is stationary where it vanishes."""
    k = params.constants
    w = params.omega
    return w**2 * k.hbar - 2 * k.c**2 * (k.e * params.B0 + k.m * w)


def _electric_field(params, t, x, y, hbar):
    k = params.constants
    c, r0, w = k.c, params.r0, params.omega
    eB0 = k.e * params.B0
    co, s, co2, s2 = _orbit(params, t)
    _, root_pm = _roots(params)

    # r0 w [cos wt (w^2 hbar - 2c^2 (eB0 + m w)) + r0 w^2 eB0 (x cos 2wt + y sin 2wt)]
    eE1 = r0 * w * (co * (w**2 * hbar - 2 * c**2 * (eB0 + k.m * w)) +
                    r0 * w**2 * eB0 * (x * co2 + y * s2)) / (2 * c * root_pm)
    # r0 w [sin wt (-2c^2 (eB0 + m w) + 2 r0 x w^2 eB0 cos wt + w^2 hbar)
    #       - r0 y w^2 eB0 cos 2wt]
    eE2 = r0 * w * (s * (-2 * c**2 * (eB0 + k.m * w) +
                         2 * r0 * x * w**2 * eB0 * co + w**2 * hbar) -
                    r0 * y * w**2 * eB0 * co2) / (2 * c * root_pm)
    return eE1, eE2


def rotation_closed_form(params, point):
    '''
    Potential, fields, Maxwell source and Dirac current of the rotating packet

    Every component is kept in its expanded form, over sqrt(c^2 - r0^2 w^2)
    or its factored twin, with no further simplification.

    Parameters
    ----------

    params : RotationScenarioParams

    point  : (t, x, y, z) in SI units, numbers or arrays

    Returns
    -------

    ClosedForm; E_3 = B_1 = B_2 = 0 and J^0 = 0 identically
    '''
    k = params.constants
    t, x, y, z = unpack_point(point)
    c, r0, w, hbar = k.c, params.r0, params.omega, k.hbar
    eB0 = k.e * params.B0
    co, s, co2, s2 = _orbit(params, t)
    root, root_pm = _roots(params)
    P = rotation_current_coefficient(params)
    zero = np.zeros_like(t)

    # scalar potential: orbit term, centring term, and the two hbar w/2 terms
    eA0 = (r0 * w * (eB0 + 2 * k.m * w) * (x * co + y * s) / (2 * root) -
           r0**2 * w * eB0 / (2 * root) +
           w * hbar / (2 * root) - w * hbar / (2 * c))
    # y eB0 (-2c^2 + r0^2 w^2 cos 2wt + r0^2 w^2)
    #   - 2 r0 sin wt (-c^2 eB0 + r0 x w^2 eB0 cos wt + w^2 hbar)
    eA1 = (y * eB0 * (-2 * c**2 + r0**2 * w**2 * co2 + r0**2 * w**2) -
           2 * r0 * s * (-c**2 * eB0 + r0 * x * w**2 * eB0 * co + w**2 * hbar)
           ) / (4 * c * root_pm)
    # r0 [cos wt (2 w^2 hbar - 2c^2 eB0) + r0 w^2 eB0 (x cos 2wt + y sin 2wt)]
    #   + x eB0 (2c^2 - r0^2 w^2)
    eA2 = (r0 * (co * (2 * w**2 * hbar - 2 * c**2 * eB0) +
                 r0 * w**2 * eB0 * (x * co2 + y * s2)) +
           x * eB0 * (2 * c**2 - r0**2 * w**2)) / (4 * c * root_pm)

    eE1, eE2 = _electric_field(params, t, x, y, hbar)
    eB3 = eB0 * (2 * c**2 - r0**2 * w**2) / (2 * c * root)

    # -r0 w [2 r0 w^3 eB0 (y cos 2wt - x sin 2wt) - w sin wt P]
    J1 = -r0 * w * (2 * r0 * w**3 * eB0 * (y * co2 - x * s2) -
                    w * s * P) / (2 * c**3 * root)
    # -r0 w^2 [cos wt P + 2 r0 w^2 eB0 (x cos 2wt + y sin 2wt)]
    J2 = -r0 * w**2 * (co * P + 2 * r0 * w**2 * eB0 * (x * co2 + y * s2)) / (
        2 * c**3 * root)

    rho = np.exp(-eB0 * ((x - r0 * co)**2 + (y - r0 * s)**2) / (2 * hbar))
    J_D = (c * rho / root, -r0 * w * s * rho / root, r0 * w * co * rho / root,
           zero)

    return ClosedForm.from_components(
        t.shape,
        k,
        eA=(eA0, eA1, eA2, zero),
        eE=(eE1, eE2, zero),
        eB=(zero, zero, eB3 + zero),
        mu0_eJ=(zero, J1, J2, zero),
        J_D=J_D)


def rotation_classical_fields(params, point):
    '''
    e E and e B with every hbar term dropped

    r0 w [r0 w^2 eB0 (x cos 2wt + y sin 2wt) - 2c^2 cos wt (eB0 + m w)] and
    -r0 w [2 sin wt (c^2 (eB0 + m w) - r0 x w^2 eB0 cos wt)
    + r0 y w^2 eB0 cos 2wt], both over 2c sqrt(c^2 - r0^2 w^2).
    '''
    k = params.constants
    t, x, y, z = unpack_point(point)
    c, r0, w = k.c, params.r0, params.omega
    eB0 = k.e * params.B0
    co, s, co2, s2 = _orbit(params, t)
    root, _ = _roots(params)
    zero = np.zeros_like(t)
    eE1 = r0 * w * (r0 * w**2 * eB0 * (x * co2 + y * s2) -
                    2 * c**2 * co * (eB0 + k.m * w)) / (2 * c * root)
    eE2 = -r0 * w * (2 * s * (c**2 * (eB0 + k.m * w) - r0 * x * w**2 * eB0 * co) +
                     r0 * y * w**2 * eB0 * co2) / (2 * c * root)
    eB3 = eB0 * (2 * c**2 - r0**2 * w**2) / (2 * c * root)
    return ClosedForm.from_components(t.shape, k,
                                      eA=(zero, zero, zero, zero),
                                      eE=(eE1, eE2, zero),
                                      eB=(zero, zero, eB3 + zero))


def rotation_nonrelativistic_fields(params, point):
    """e E = -r0 w (e B0 + m w)(cos wt, sin wt, 0) and B = (0, 0, B0)."""
    k = params.constants
    t, x, y, z = unpack_point(point)
    zero = np.zeros_like(t)
    co, s, _, _ = _orbit(params, t)
    drive = -params.r0 * params.omega * (k.e * params.B0 + k.m * params.omega)
    return ClosedForm.from_components(t.shape, k,
                                      eA=(zero, zero, zero, zero),
                                      eE=(drive * co, drive * s, zero),
                                      eB=(zero, zero, k.e * params.B0 + zero))


def rotation_current_norm_squared(params, point):
    '''
    |mu_0 e J|^2 in closed form

    r0^2 w^4 / (4 c^6 (c^2 - r0^2 w^2)) times the sum of
    (sin wt P - 2 r0 w^2 eB0 (y cos 2wt - x sin 2wt))^2 and
    (cos wt P + 2 r0 w^2 eB0 (x cos 2wt + y sin 2wt))^2, with P from
    :func:`rotation_current_coefficient`. Expanded, only the cross term
    4 P r0 w^2 eB0 (x cos wt + y sin wt) depends on time, so the current
    is stationary exactly when P = 0.
    '''
    k = params.constants
    t, x, y, z = unpack_point(point)
    c, r0, w = k.c, params.r0, params.omega
    eB0 = k.e * params.B0
    P = rotation_current_coefficient(params)
    co, s, co2, s2 = _orbit(params, t)
    prefactor = r0**2 * w**4 / (4 * c**6 * (c**2 - r0**2 * w**2))
    return (prefactor * (s * P - 2 * r0 * w**2 * eB0 * (y * co2 - x * s2))**2 +
            prefactor * (co * P + 2 * r0 * w**2 * eB0 * (x * co2 + y * s2))**2)


def quantum_gap(params):
    """|E - E_classical| = gamma r0 |w|^3 hbar/(2 e c^2) in V/m, uniform in space and time."""
    k = params.constants
    return params.gamma * params.r0 * abs(params.omega)**3 * k.hbar / (
        2 * k.e * k.c**2)
