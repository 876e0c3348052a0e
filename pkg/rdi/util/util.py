"""
Useful functions and error types shared across rdi
"""

__author__ = "rdi developers"

import numpy as np

__all__ = [
    'RDIError', 'SingularStateError', 'NonPhysicalDynamicsError',
    'SuperluminalError', 'ZeroDensityError', 'JetDomainError', 'ConfigError',
    'DSLSyntaxError', 'UnknownIdentifierError', 'frobenius_norm',
    'relative_difference'
]


class RDIError(Exception):
    """Base class of every error raised by rdi."""


class SingularStateError(RDIError, ValueError):
    """The spinor matrix has (numerically) vanishing determinant.

    Majorana, Weyl and flag-dipole spinors fall in this class and cannot be
    inverted for a four-potential.
    """

    def __init__(self, determinant, threshold):
        self.determinant = determinant
        self.threshold = threshold
        super().__init__(
            '|det Psi| = {:.3e} is below the singular threshold {:.3e}'.format(
                abs(determinant), threshold))


class NonPhysicalDynamicsError(RDIError):
    """The requested evolution cannot be driven by a real four-potential.

    Attributes
    ----------

    residual : float
               scale-relative norm of the part of the inverted potential that
               violates admissibility (anti-Hermitian or non-scalar part)

    tolerance : float
                tolerance the residual was compared against
    """

    def __init__(self, residual, tolerance, message=None):
        self.residual = float(residual)
        self.tolerance = float(tolerance)
        if message is None:
            message = ('the potential is not Hermitian: residual {:.3e} exceeds '
                       'tolerance {:.3e}'.format(self.residual, self.tolerance))
        super().__init__(message)


class SuperluminalError(RDIError, ValueError):
    """A parametrization moves the packet at or above the speed of light."""


class ZeroDensityError(RDIError, ValueError):
    """The Dirac density vanishes, so no velocity can be assigned."""


class JetDomainError(RDIError, ValueError):
    """An elementary function was evaluated outside its domain."""


class ConfigError(RDIError, ValueError):
    """Invalid scenario configuration."""


class DSLSyntaxError(RDIError, ValueError):
    """Malformed expression. ``offset`` is the byte offset of the problem."""

    def __init__(self, message, offset):
        self.offset = offset
        super().__init__('{} (at offset {})'.format(message, offset))


class UnknownIdentifierError(RDIError, KeyError):
    """An expression refers to a name that is not bound."""

    def __init__(self, name, offset=None):
        self.name = name
        self.offset = offset
        where = '' if offset is None else ' (at offset {})'.format(offset)
        super().__init__('unknown identifier {!r}{}'.format(name, where))

    def __str__(self):
        return self.args[0]


def frobenius_norm(M):
    """Frobenius norm over the two trailing (matrix) axes."""
    M = np.asarray(M)
    return np.sqrt(np.sum(np.abs(M)**2, axis=(-2, -1)))


def relative_difference(a, b, floor=0.0):
    '''
    Norm of a - b relative to the larger of the two norms

    Parameters
    ----------

    a, b  : array_like
            quantities to compare (any matching shape)

    floor : float
            lower bound of the denominator; avoids 0/0 when both vanish

    Returns
    -------

    float
    '''
    a = np.asarray(a)
    b = np.asarray(b)
    scale = max(np.linalg.norm(a), np.linalg.norm(b), floor)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(a - b) / scale)
