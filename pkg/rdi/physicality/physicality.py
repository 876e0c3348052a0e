"""
Admissibility of a control protocol beyond Hermiticity: the energy the driven
charge radiates must stay far below its kinetic energy
"""

__author__ = "rdi developers"

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from rdi.util.util import SuperluminalError

__all__ = [
    'DEFAULT_RATIO_THRESHOLD', 'PhysicalityVerdict', 'larmor_power',
    'kinetic_energy', 'synchrotron_check', 'bremsstrahlung_check'
]

DEFAULT_RATIO_THRESHOLD = 1e-3


@dataclass(frozen=True)
class PhysicalityVerdict:
    '''
    Radiated energy against kinetic energy

    Attributes
    ----------

    superluminal    : bool

    radiated_energy : float (J), per period for a rotation and over the
                      whole window for a translation

    kinetic_energy  : float (J)

    ratio           : float, radiated_energy/kinetic_energy (0 when both vanish)

    threshold       : float
    '''

    superluminal: bool
    radiated_energy: float
    kinetic_energy: float
    ratio: float
    threshold: float = DEFAULT_RATIO_THRESHOLD

    @property
    def passed(self):
        return (not self.superluminal) and self.ratio < self.threshold

    def as_dict(self):
        return {
            'superluminal': bool(self.superluminal),
            'radiated_energy': float(self.radiated_energy),
            'kinetic_energy': float(self.kinetic_energy),
            'ratio': float(self.ratio),
            'threshold': float(self.threshold),
            'passed': bool(self.passed)
        }


def larmor_power(proper_acceleration, constants):
    '''
    Relativistic Larmor power e^2 alpha^2/(6 pi epsilon_0 c^3) in W

    ``proper_acceleration`` is the magnitude of the four-acceleration (m/s^2),
    gamma^2 a for circular motion and gamma^3 a for linear motion.
    '''
    k = constants
    return k.e**2 * np.asarray(proper_acceleration)**2 / (
        6 * np.pi * k.epsilon_0 * k.c**3)


def kinetic_energy(speed, constants):
    """(gamma - 1) m c^2 in the form gamma^2 beta^2/(gamma + 1), exact at low speed."""
    k = constants
    beta2 = (np.asarray(speed) / k.c)**2
    if np.any(beta2 >= 1):
        raise SuperluminalError('speed must stay below c')
    gamma = 1 / np.sqrt(1 - beta2)
    return k.m * k.c**2 * gamma**2 * beta2 / (gamma + 1)


def _verdict(radiated, kinetic, threshold, superluminal=False):
    ratio = radiated / kinetic if kinetic > 0 else (0.0 if radiated == 0 else np.inf)
    verdict = PhysicalityVerdict(superluminal, float(radiated), float(kinetic),
                                 float(ratio), threshold)
    if not verdict.passed:
        warnings.warn(
            'radiated energy is {:.3g} of the kinetic energy, above {:.3g}'.format(
                ratio, threshold), RuntimeWarning)
    return verdict


def synchrotron_check(params, threshold=DEFAULT_RATIO_THRESHOLD):
    '''
    Synchrotron loss per period of the rotating packet

    Parameters
    ----------

    params    : RotationScenarioParams (construction rejects r0 |omega| >= c)

    threshold : float
                largest admissible loss/kinetic-energy ratio

    Returns
    -------

    PhysicalityVerdict
    '''
    k = params.constants
    w = abs(params.omega)
    if params.speed >= k.c:
        raise SuperluminalError('r0*|omega| must stay below c')
    if w == 0:
        return _verdict(0.0, 0.0, threshold)
    alpha = params.gamma**2 * w * w * params.r0
    radiated = larmor_power(alpha, k) * 2 * np.pi / w
    return _verdict(radiated, kinetic_energy(params.speed, k), threshold)


def bremsstrahlung_check(params, threshold=DEFAULT_RATIO_THRESHOLD):
    '''
    Radiation emitted along the whole trajectory of the translated packet

    The Larmor power with proper acceleration gamma^3 d2Y/dt2 is integrated
    over ``params.window``; the kinetic energy is taken at peak speed.

    Parameters
    ----------

    params    : TranslationScenarioParams

    threshold : float

    Returns
    -------

    PhysicalityVerdict
    '''
    k = params.constants
    speed = params.max_speed
    if speed >= k.c:
        raise SuperluminalError('trajectory speed must stay below c')

    def power(t):
        _, v, a = params.path.derivatives(t, 2)
        gamma = 1 / np.sqrt(1 - (v / k.c)**2)
        return larmor_power(gamma**3 * a, k)

    t0, t1 = params.window
    radiated, _ = quad(power, t0, t1, epsabs=0.0, epsrel=1e-10, limit=200)
    return _verdict(radiated, kinetic_energy(speed, k), threshold)
