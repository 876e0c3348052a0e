"""
Closed forms of the dispersionless translation: the Gaussian packet carried
along y by an arbitrary trajectory Y(t)
"""

__author__ = "rdi developers"

from dataclasses import dataclass, field

import numpy as np

from rdi.catalog.closed_form import ClosedForm, unpack_point
from rdi.states.curves import Curve, SinusoidalPath
from rdi.states.state_factory import PhysicalConstants, translation_state
from rdi.util.util import SuperluminalError

__all__ = [
    'TranslationScenarioParams', 'translation_closed_form',
    'translation_classical_fields', 'translation_nonrelativistic_fields',
    'translation_low_energy_current', 'radiation_reaction_gap'
]


@dataclass(frozen=True)
class TranslationScenarioParams:
    '''
    Parameters of the translated packet

    Attributes
    ----------

    path      : Curve with derivatives through fourth order, Y(t) (m)

    B0        : magnetic field scale (T)

    window    : (t_start, t_end) on which the trajectory is used (s)

    constants : PhysicalConstants

    Raises
    ------

    SuperluminalError
        when sup |dY/dt| >= c on ``window``
    '''

    path: Curve
    B0: float
    window: tuple = (0.0, 1.0)
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        speed = self.path.max_speed(self.window)
        if speed >= self.constants.c:
            raise SuperluminalError(
                'trajectory speed reaches {:.6g} m/s, at or above c'.format(speed))

    @classmethod
    def sinusoidal(cls, L, T, B0, constants=None):
        """Transfer over L in time T along (L/2)(1 + sin(pi(t - T/2)/T))."""
        k = PhysicalConstants() if constants is None else constants
        return cls(SinusoidalPath(L, T), B0, (0.0, T), k)

    @property
    def max_speed(self):
        return self.path.max_speed(self.window)

    def state(self, normalized=True):
        return translation_state(self.path, self.B0, self.constants,
                                 normalized=normalized, window=self.window)


def _kinematics(params, t):
    c = params.constants.c
    Y, v, a, j, snap = params.path.derivatives(t, 4)
    Q = np.sqrt(c * c - v * v)
    return Y, v, a, j, snap, Q


def _electric_field(params, t, x, y, hbar):
    k = params.constants
    c, m = k.c, k.m
    eB0 = k.e * params.B0
    Y, v, a, j, snap, Q = _kinematics(params, t)
    # v^3 eB0 ((y - Y) a + 3c^2) - v (c^2 (y - Y) a eB0 + hbar a^2 + 2c^4 eB0)
    #   - c^2 hbar j + v^2 hbar j - v^5 eB0
    eE1 = (v**3 * eB0 * ((y - Y) * a + 3 * c**2) -
           v * (c**2 * (y - Y) * a * eB0 + hbar * a**2 + 2 * c**4 * eB0) -
           c**2 * hbar * j + v**2 * hbar * j - v**5 * eB0) / (2 * c * Q**3)
    # a (2c^3 m - c x v eB0)
    eE2 = a * (2 * c**3 * m - c * x * v * eB0) / (2 * Q**3)
    return eE1, eE2


def translation_closed_form(params, point):
    '''
    Potential, fields and Maxwell source of the translated packet

    Components are kept in their expanded form, in powers of
    Q = sqrt(c^2 - (dY/dt)^2), with no further simplification.

    Parameters
    ----------

    params : TranslationScenarioParams

    point  : (t, x, y, z) in SI units

    Returns
    -------

    ClosedForm; B is uniform, B_1 = B_2 = E_3 = 0 and J^0 = 0
    '''
    k = params.constants
    c, hbar, m = k.c, k.hbar, k.m
    eB0 = k.e * params.B0
    t, x, y, z = unpack_point(point)
    zero = np.zeros_like(t)
    Y, v, a, j, snap, Q = _kinematics(params, t)

    # c (4c (Q + c) - v^2 (sqrt(1 - v^2/c^2) + 3))
    #   (x v (c^2 - v^2) eB0 - 2c^2 m a (y - t v)) / (2 (c (Q + c) - v^2)^3)
    eA0 = (c * (4 * c * (Q + c) - v**2 * (np.sqrt(1 - v**2 / c**2) + 3)) *
           (x * v * (c**2 - v**2) * eB0 - 2 * c**2 * m * a * (y - t * v)) /
           (2 * (c * (Q + c) - v**2)**3))
    eA1 = (hbar * a - (c**2 - v**2) * eB0 * (y - Y)) / (2 * c * Q)
    eA2 = c * x * eB0 / (2 * Q)

    eE1, eE2 = _electric_field(params, t, x, y, hbar)
    eB3 = eB0 * (2 * c**2 - v**2) / (2 * c * Q)

    # Q^2 v j (3 hbar a + Q^2 (y - Y) eB0) + 3 Q^2 v^4 a eB0 + 2 v^2 hbar a^3
    #   + Q^4 hbar snap, over 2 c^3 Q^5
    J1 = ((Q**2 * v * j * (3 * hbar * a + Q**2 * (y - Y) * eB0) +
           3 * Q**2 * v**4 * a * eB0 + 2 * v**2 * hbar * a**3 +
           Q**4 * hbar * snap) / (2 * c**3 * Q**5) +
          c * a * eB0 / Q**3 +
          a * (Q**2 * (y - Y) * a * eB0 + hbar * a**2 -
               4 * Q**2 * v**2 * eB0) / (2 * c * Q**5))
    # c (x a^2 eB0 - 2 m Q^2 j - 6 m v a^2) / (2 Q^5)
    #   + x v eB0 (Q^2 j + 2 v a^2) / (2 c Q^5)
    J2 = (c * (x * a**2 * eB0 - 2 * m * Q**2 * j - 6 * m * v * a**2) /
          (2 * Q**5) +
          x * v * eB0 * (Q**2 * j + 2 * v * a**2) / (2 * c * Q**5))

    return ClosedForm.from_components(t.shape,
                                      k,
                                      eA=(eA0, eA1, eA2, zero),
                                      eE=(eE1, eE2, zero),
                                      eB=(zero, zero, eB3 + zero),
                                      mu0_eJ=(zero, J1, J2, zero))


def translation_classical_fields(params, point):
    '''
    e E and e B with the hbar terms dropped

    e E_1 = v eB0 ((Y - y) a - 2c^2 + v^2)/(2c Q) and
    e E_2 = c a (2c^2 m - eB0 x v)/(2 Q^3).
    '''
    k = params.constants
    c = k.c
    eB0 = k.e * params.B0
    t, x, y, z = unpack_point(point)
    zero = np.zeros_like(t)
    Y, v, a, _, _, Q = _kinematics(params, t)
    eE1 = v * eB0 * ((Y - y) * a - 2 * c**2 + v**2) / (2 * c * Q)
    eE2 = c * a * (2 * c**2 * k.m - eB0 * x * v) / (2 * Q**3)
    eB3 = eB0 * (2 * c**2 - v**2) / (2 * c * Q)
    return ClosedForm.from_components(t.shape, k,
                                      eA=(zero, zero, zero, zero),
                                      eE=(eE1, eE2, zero),
                                      eB=(zero, zero, eB3 + zero))


def translation_nonrelativistic_fields(params, point):
    """e E = (-e B0 dY/dt, m d2Y/dt2, 0) and B = (0, 0, B0)."""
    k = params.constants
    t, x, y, z = unpack_point(point)
    zero = np.zeros_like(t)
    _, v, a = params.path.derivatives(t, 2)
    eB0 = k.e * params.B0
    return ClosedForm.from_components(t.shape, k,
                                      eA=(zero, zero, zero, zero),
                                      eE=(-eB0 * v + zero, k.m * a + zero, zero),
                                      eB=(zero, zero, eB0 + zero))


def translation_low_energy_current(params, t):
    '''
    Leading Maxwell source at low speed

    mu_0 e J = (e B0 d2Y/dt2, -m d3Y/dt3, 0)/c^2, spatially uniform.

    Returns
    -------

    array (..., 3), mu_0 e J^k (kg/(s m))
    '''
    k = params.constants
    _, _, a, j = params.path.derivatives(np.asarray(t, dtype=float), 3)
    return np.stack([k.e * params.B0 * a / k.c**2, -k.m * j / k.c**2,
                     np.zeros_like(a)], axis=-1)


def radiation_reaction_gap(params, t):
    '''
    E_1(classical) - E_1 = (hbar/(2 e c^2)) d/dt(gamma d2Y/dt2) in V/m

    The quantum correction has the form of a radiation-reaction force and is
    uniform in space.
    '''
    k = params.constants
    t = np.asarray(t, dtype=float)
    _, v, a, j, _, Q = _kinematics(params, t)
    g = k.c / Q
    return k.hbar / (2 * k.e * k.c**2) * (g**3 * v * a * a / k.c**2 + g * j)
