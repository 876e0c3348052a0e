"""
Container shared by the closed-form solutions
"""

__author__ = "rdi developers"

from dataclasses import dataclass
from typing import Optional

import numpy as np

from rdi.states.state_factory import PhysicalConstants

__all__ = ['ClosedForm', 'unpack_point']


def unpack_point(point):
    """Broadcast (t, x, y, z) to float arrays of a common shape."""
    if len(point) != 4:
        raise ValueError('a spacetime point has 4 coordinates (t, x, y, z)')
    return np.broadcast_arrays(*[np.asarray(p, dtype=float) for p in point])


def _stack(components, shape):
    return np.stack([np.broadcast_to(np.asarray(a, dtype=float), shape)
                     for a in components], axis=-1)


@dataclass(frozen=True)
class ClosedForm:
    '''
    Closed-form potential, fields and currents at a set of points

    Attributes
    ----------

    eA        : array (..., 4), contravariant e A^mu (kg m/s)

    eE        : array (..., 3), e E (N)

    eB        : array (..., 3), e B (kg/s)

    mu0_eJ    : array (..., 4), mu_0 e J^nu, or None where not transcribed

    J_D       : array (..., 4), Dirac current, or None

    constants : PhysicalConstants
    '''

    eA: np.ndarray
    eE: Optional[np.ndarray]
    eB: Optional[np.ndarray]
    mu0_eJ: Optional[np.ndarray]
    J_D: Optional[np.ndarray]
    constants: PhysicalConstants

    @classmethod
    def from_components(cls, shape, constants, eA, eE=None, eB=None,
                        mu0_eJ=None, J_D=None):
        pack = lambda v: None if v is None else _stack(v, shape)
        return cls(pack(eA), pack(eE), pack(eB), pack(mu0_eJ), pack(J_D),
                   constants)

    @property
    def covariant(self):
        """e A_mu, the layout used by :class:`rdi.engine.FourPotential`."""
        a = self.eA.copy()
        a[..., 1:] *= -1
        return a

    @property
    def E(self):
        return self.eE / self.constants.e

    @property
    def B(self):
        return self.eB / self.constants.e

    @property
    def J(self):
        k = self.constants
        return self.mu0_eJ / (k.mu0 * k.e)
