"""
Differentiable one-dimensional profiles: trajectories Y(t) and confinement
profiles f(z)
"""

__author__ = "rdi developers"

import numpy as np

from rdi.jets import jets

__all__ = [
    'Curve', 'SinusoidalPath', 'HyperbolicPath', 'StaticPath',
    'SoftCoreProfile'
]


class Curve:
    '''
    A smooth function of one variable with analytic derivatives

    Subclasses implement ``derivatives(s, n)`` returning the list
    ``[f(s), f'(s), ..., f^(n)(s)]``; ``s`` may be a number, an array or a
    scalar jet.
    '''

    max_order = 4

    def derivatives(self, s, n):
        raise NotImplementedError

    def _check_order(self, n):
        if n > self.max_order:
            raise ValueError('{} provides derivatives up to order {}'.format(
                type(self).__name__, self.max_order))

    def __call__(self, s):
        return self.derivatives(s, 0)[0]

    def derivative(self, s, k=1):
        return self.derivatives(s, k)[k]

    def max_speed(self, window):
        """sup |f'| over the closed interval ``window`` (sampled)."""
        grid = np.linspace(window[0], window[1], 2001)
        return float(np.max(np.abs(self.derivative(grid, 1))))


class SinusoidalPath(Curve):
    '''
    Smooth transfer over a distance L in time T

    Y(t) = (L/2)[1 + sin(pi (t - T/2)/T)], starting and ending at rest.

    Parameters
    ----------

    L : float
        distance travelled (m)

    T : float
        duration (s)
    '''

    max_order = 8

    def __init__(self, L, T):
        if T <= 0:
            raise ValueError('T must be positive')
        self.L = float(L)
        self.T = float(T)

    def derivatives(self, t, n):
        self._check_order(n)
        kappa = np.pi / self.T
        phase = kappa * (t - self.T / 2)
        out = [self.L / 2 * (1 + jets.sin(phase))]
        for k in range(1, n + 1):
            out.append(self.L / 2 * kappa**k * jets.sin(phase + k * np.pi / 2))
        return out

    def max_speed(self, window=None):
        return np.pi * abs(self.L) / (2 * self.T)


class HyperbolicPath(Curve):
    '''
    Worldline of uniform proper acceleration starting at rest

    Y(t) = (c/tau)(sqrt(1 + (tau t)^2) - 1), rapidity arcsinh(tau t); for a
    charge in a constant field E0, tau = e E0/(m c).

    Parameters
    ----------

    tau : float
          proper acceleration divided by c (1/s)

    c   : float
          speed of light
    '''

    def __init__(self, tau, c):
        self.tau = float(tau)
        self.c = float(c)

    def derivatives(self, t, n):
        self._check_order(n)
        c, tau = self.c, self.tau
        s = tau * t
        q = 1 + s * s
        out = [c / tau * (jets.sqrt(q) - 1) if tau != 0 else 0 * t]
        if n >= 1:
            out.append(c * s * q**-0.5)
        if n >= 2:
            out.append(c * tau * q**-1.5)
        if n >= 3:
            out.append(-3 * c * tau**2 * s * q**-2.5)
        if n >= 4:
            out.append(3 * c * tau**3 * (4 * s * s - 1) * q**-3.5)
        return out[:n + 1]

    def max_speed(self, window):
        s = self.tau * max(abs(window[0]), abs(window[1]))
        return self.c * s / np.sqrt(1 + s * s)


class StaticPath(Curve):
    """Y(t) = Y0 at all times."""

    max_order = 8

    def __init__(self, Y0=0.0):
        self.Y0 = float(Y0)

    def derivatives(self, t, n):
        self._check_order(n)
        return [self.Y0 + 0 * t] + [0 * t] * n

    def max_speed(self, window=None):
        return 0.0


class SoftCoreProfile(Curve):
    '''
    Confinement profile f(z) = sqrt(xi^2 + z^2)

    With it the confined stationary state is held by a soft-core Coulomb well
    plus a short-range term.
    '''

    max_order = 3

    def __init__(self, xi):
        if xi <= 0:
            raise ValueError('xi must be positive')
        self.xi = float(xi)

    def derivatives(self, z, n):
        self._check_order(n)
        xi2 = self.xi**2
        f = jets.sqrt(xi2 + z * z)
        out = [f, z / f, xi2 / f**3, -3 * xi2 * z / f**5]
        return out[:n + 1]
