"""
The Landau ground state seen from a moving frame
"""

__author__ = "rdi developers"

import numpy as np

from rdi.catalog.closed_form import ClosedForm, unpack_point
from rdi.states.state_factory import PhysicalConstants

__all__ = ['boosted_landau_fields', 'boosted_landau_closed_form']


def boosted_landau_fields(u2, B0, constants=None):
    '''
    Fields recovered from the boosted Landau state

    B = (0, 0, u^0 B0) and E = (-c u^2 B0, 0, 0): the rest-frame magnetic
    field Lorentz-transformed to a frame moving along y with proper velocity
    u^2.

    Parameters
    ----------

    u2 : proper velocity of the frame (dimensionless)

    B0 : rest-frame magnetic field (T)

    Returns
    -------

    E : array (3,), V/m

    B : array (3,), T

    Examples
    --------

    >>> from rdi.states import PhysicalConstants
    >>> E, B = boosted_landau_fields(1.0, 1.0, PhysicalConstants.natural())
    >>> float(E[0]), round(float(B[2]), 6)
    (-1.0, 1.414214)

    '''
    k = PhysicalConstants() if constants is None else constants
    u0 = np.sqrt(1 + u2 * u2)
    return (np.array([-k.c * u2 * B0, 0.0, 0.0]), np.array([0.0, 0.0, u0 * B0]))


def boosted_landau_closed_form(u2, B0, point, constants=None):
    '''
    Potential and fields of the boosted Landau state

    e A^0 = e B0 x u^2/2, e A^1 = (e B0/2)(c t u^2 - u^0 y),
    e A^2 = u^0 e B0 x/2 in momentum units.
    '''
    k = PhysicalConstants() if constants is None else constants
    t, x, y, z = unpack_point(point)
    u0 = np.sqrt(1 + u2 * u2)
    eB0 = k.e * B0
    zero = np.zeros_like(t)
    return ClosedForm.from_components(
        t.shape, k,
        eA=(eB0 * x * u2 / 2, eB0 / 2 * (k.c * t * u2 - u0 * y), u0 * eB0 * x / 2,
            zero),
        eE=(-k.c * u2 * eB0 + zero, zero, zero),
        eB=(zero, zero, u0 * eB0 + zero),
        mu0_eJ=(zero, zero, zero, zero))
