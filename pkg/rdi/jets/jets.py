"""
Forward-mode differentiation over the spacetime coordinates (ct, x, y, z)

A :class:`Jet` is a (possibly array-valued) number together with its partial
derivatives with respect to the four coordinates, truncated at a fixed order
(at most three). Array-valued jets let 2x2 spinor matrices and whole grids of
points flow through the same arithmetic; the derivative axes always lead, so a
jet of value shape ``S`` stores ``gradient`` with shape ``(4,) + S``,
``hessian`` with shape ``(4, 4) + S`` and ``third`` with shape
``(4, 4, 4) + S``.
"""

__author__ = "rdi developers"

import numbers

import numpy as np

from rdi.util.util import JetDomainError

__all__ = [
    'Jet', 'seed', 'is_jet', 'value_of', 'exp', 'log', 'sqrt', 'sin', 'cos',
    'sinh', 'cosh', 'arcsin', 'arctan', 'arcsinh', 'power', 'reciprocal',
    'MAX_ORDER', 'ARCSIN_GUARD'
]

MAX_ORDER = 3

# arcsin derivatives diverge at |x| = 1
ARCSIN_GUARD = 1e-12


def _lift(array, n_derivative_axes, ndim):
    """Insert singleton value axes so the value part has ``ndim`` axes."""
    value_ndim = array.ndim - n_derivative_axes
    if value_ndim >= ndim:
        return array
    shape = array.shape
    return array.reshape(shape[:n_derivative_axes] + (1, ) *
                         (ndim - value_ndim) + shape[n_derivative_axes:])


def _permute(array, axes):
    """Transpose the three leading derivative axes, keep the value axes."""
    return np.transpose(array, tuple(axes) + tuple(range(3, array.ndim)))


def _symmetrized(first, second, op):
    """The three distinct placements of a (2, 1) split of a third derivative.

    Returns op(first_mn, second_l) summed over the index placements (mn|l),
    (ml|n) and (nl|m).
    """
    T = op(first[:, :, None], second[None, None, :])
    return T + _permute(T, (0, 2, 1)) + _permute(T, (2, 0, 1))


class Jet:
    '''
    A value with its partial derivatives in (ct, x, y, z)

    Parameters
    ----------

    coefficients : sequence of array_like
                   ``[value, gradient, hessian, third]`` truncated at the jet
                   order; entry ``k`` has shape ``(4,)*k + value.shape``.

    Attributes
    ----------

    order        : int
                   highest derivative order carried (0 to 3)

    value        : numpy array

    gradient     : numpy array, or None when ``order < 1``

    hessian      : numpy array, or None when ``order < 2``. Symmetric exactly.

    third        : numpy array, or None when ``order < 3``

    Examples
    --------

    >>> from rdi.jets import seed
    >>> ct, x, y, z = seed((0.0, 3.0, 0.0, 0.0), c=1.0, order=2)
    >>> f = x * x
    >>> float(f.value), float(f.gradient[1]), float(f.hessian[1, 1])
    (9.0, 6.0, 2.0)

    '''

    # numpy defers binary operators to the Jet reflected methods
    __array_ufunc__ = None

    def __init__(self, coefficients):
        coefficients = [np.asarray(c) for c in coefficients]
        if not 1 <= len(coefficients) <= MAX_ORDER + 1:
            raise ValueError('a jet carries between 0 and {} derivative orders'
                             .format(MAX_ORDER))
        shape = coefficients[0].shape
        for k, c in enumerate(coefficients):
            if c.shape != (4, ) * k + shape:
                raise ValueError(
                    'order {} coefficient has shape {}, expected {}'.format(
                        k, c.shape, (4, ) * k + shape))
        self.coefficients = tuple(coefficients)

    @classmethod
    def constant(cls, value, order):
        """A jet with vanishing derivatives."""
        value = np.asarray(value)
        return cls([value] + [
            np.zeros((4, ) * k + value.shape, dtype=value.dtype)
            for k in range(1, order + 1)
        ])

    @classmethod
    def variable(cls, value, index, order):
        """The coordinate jet with unit gradient along axis ``index``."""
        value = np.asarray(value, dtype=float)
        jet = cls.constant(value, order)
        if order >= 1:
            jet.coefficients[1][index] = 1.0
        return jet

    @property
    def order(self):
        return len(self.coefficients) - 1

    @property
    def value(self):
        return self.coefficients[0]

    @property
    def gradient(self):
        return self.coefficients[1] if self.order >= 1 else None

    @property
    def hessian(self):
        return self.coefficients[2] if self.order >= 2 else None

    @property
    def third(self):
        return self.coefficients[3] if self.order >= 3 else None

    @property
    def shape(self):
        return self.value.shape

    @property
    def ndim(self):
        return self.value.ndim

    def __repr__(self):
        return 'Jet(order={}, value={!r})'.format(self.order, self.value)

    # ------------------------------------------------------------------
    # structure

    def truncate(self, order):
        if order > self.order:
            raise ValueError('cannot raise a jet of order {} to order {}'.format(
                self.order, order))
        return Jet(self.coefficients[:order + 1])

    def lifted(self, ndim):
        """Same jet with singleton value axes prepended up to ``ndim``."""
        return Jet([_lift(c, k, ndim) for k, c in enumerate(self.coefficients)])

    def broadcast_to(self, shape):
        shape = tuple(shape)
        jet = self.lifted(len(shape))
        return Jet([
            np.broadcast_to(c, (4, ) * k + shape)
            for k, c in enumerate(jet.coefficients)
        ])

    def map_coefficients(self, fn):
        """Apply a real-linear map acting on the value axes to every order.

        ``fn`` must accept arrays with extra leading axes (use ``...`` in
        einsum signatures), e.g. transposition of the trailing matrix axes.
        """
        return Jet([fn(c) for c in self.coefficients])

    def derivative(self, mu):
        """The jet of the partial derivative along coordinate ``mu``.

        The result has one order less than ``self``.
        """
        if self.order < 1:
            raise ValueError('jet of order 0 carries no derivatives')
        coefficients = [self.coefficients[1][mu]]
        if self.order >= 2:
            coefficients.append(self.coefficients[2][:, mu])
        if self.order >= 3:
            coefficients.append(self.coefficients[3][:, :, mu])
        return Jet(coefficients)

    def __getitem__(self, index):
        if not isinstance(index, tuple):
            index = (index, )
        return Jet([
            c[(slice(None), ) * k + index]
            for k, c in enumerate(self.coefficients)
        ])

    def conj(self):
        return self.map_coefficients(np.conj)

    @property
    def real(self):
        return self.map_coefficients(np.real)

    @property
    def imag(self):
        return self.map_coefficients(np.imag)

    @staticmethod
    def stack(items, axis=-1):
        '''
        Stack jets (or constants) along a new value axis

        Parameters
        ----------

        items : sequence of Jet or array_like

        axis  : int
                negative axis counted among the value axes of the result
        '''
        if axis >= 0:
            raise ValueError('stack axis must be negative (a value axis)')
        jets = [item for item in items if isinstance(item, Jet)]
        if not jets:
            return np.stack([np.asarray(item) for item in items], axis=axis)
        order = min(j.order for j in jets)
        promoted = [
            item.truncate(order) if isinstance(item, Jet) else Jet.constant(
                item, order) for item in items
        ]
        shape = np.broadcast_shapes(*[j.shape for j in promoted])
        promoted = [j.broadcast_to(shape) for j in promoted]
        return Jet([
            np.stack([j.coefficients[k] for j in promoted], axis=axis)
            for k in range(order + 1)
        ])

    @staticmethod
    def where(mask, a, b):
        """Pick coefficients of ``a`` where ``mask`` holds, else of ``b``."""
        order = min(j.order for j in (a, b) if isinstance(j, Jet))
        a = a.truncate(order) if isinstance(a, Jet) else Jet.constant(a, order)
        b = b.truncate(order) if isinstance(b, Jet) else Jet.constant(b, order)
        mask = np.asarray(mask)
        return Jet([
            np.where(mask, ca, cb)
            for ca, cb in zip(a.coefficients, b.coefficients)
        ])

    # ------------------------------------------------------------------
    # calculus

    def chain(self, f0, f1=None, f2=None, f3=None):
        '''
        Compose an elementwise function with this jet

        Parameters
        ----------

        f0, f1, f2, f3 : array_like
                         the function and its first three derivatives
                         evaluated at ``self.value``; orders above the jet
                         order may be omitted

        Returns
        -------

        Jet of the same order
        '''
        c = self.coefficients
        out = [np.asarray(f0)]
        if self.order >= 1:
            g = c[1]
            out.append(f1 * g)
        if self.order >= 2:
            outer = g[:, None] * g[None, :]
            out.append(f2 * outer + f1 * c[2])
        if self.order >= 3:
            triple = outer[:, :, None] * g[None, None, :]
            out.append(f3 * triple +
                       f2 * _symmetrized(c[2], g, np.multiply) + f1 * c[3])
        return Jet(out)

    def _bilinear(self, other, op):
        order = min(self.order, other.order)
        ndim = max(self.ndim, other.ndim)
        A = self.truncate(order).lifted(ndim).coefficients
        B = other.truncate(order).lifted(ndim).coefficients
        out = [op(A[0], B[0])]
        if order >= 1:
            out.append(op(A[1], B[0]) + op(A[0], B[1]))
        if order >= 2:
            cross = op(A[1][:, None], B[1][None, :])
            out.append(
                op(A[2], B[0]) + (cross + np.swapaxes(cross, 0, 1)) +
                op(A[0], B[2]))
        if order >= 3:
            out.append(
                op(A[3], B[0]) + _symmetrized(A[2], B[1], op) +
                _symmetrized(B[2], A[1], lambda b, a: op(a, b)) +
                op(A[0], B[3]))
        return Jet(out)

    def _scaled(self, factor, op=np.multiply, left=False):
        factor = np.asarray(factor)
        jet = self.lifted(factor.ndim)
        if left:
            return jet.map_coefficients(lambda c: op(factor, c))
        return jet.map_coefficients(lambda c: op(c, factor))

    # ------------------------------------------------------------------
    # arithmetic

    def __neg__(self):
        return self.map_coefficients(np.negative)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet):
            order = min(self.order, other.order)
            ndim = max(self.ndim, other.ndim)
            A = self.truncate(order).lifted(ndim).coefficients
            B = other.truncate(order).lifted(ndim).coefficients
            return Jet([a + b for a, b in zip(A, B)])
        value = self.value + other
        return Jet([value] + [
            np.broadcast_to(_lift(c, k, value.ndim), (4, ) * k + value.shape)
            for k, c in enumerate(self.coefficients) if k > 0
        ])

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return self._bilinear(other, np.multiply)
        return self._scaled(other)

    def __rmul__(self, other):
        return self._scaled(other, left=True)

    def __matmul__(self, other):
        if isinstance(other, Jet):
            return self._bilinear(other, np.matmul)
        return self._scaled(other, np.matmul)

    def __rmatmul__(self, other):
        return self._scaled(other, np.matmul, left=True)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * reciprocal(other)
        return self._scaled(1.0 / np.asarray(other))

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, exponent):
        return power(self, exponent)

    def __rpow__(self, base):
        return exp(log(base) * self)


def is_jet(x):
    return isinstance(x, Jet)


def value_of(x):
    """The value of a jet, or ``x`` itself."""
    return x.value if isinstance(x, Jet) else x


def seed(point, c, order=2):
    '''
    Coordinate jets at a spacetime point

    Parameters
    ----------

    point : sequence of 4 floats or arrays
            (t, x, y, z) in SI units; arrays broadcast against each other so
            a whole grid can be seeded at once

    c     : float
            speed of light; the time coordinate is seeded as ``ct`` so that
            the derivative along axis 0 is (1/c) d/dt

    order : int
            derivative order carried by the jets (at most 3)

    Returns
    -------

    tuple of 4 Jets (ct, x, y, z)
    '''
    if len(point) != 4:
        raise ValueError('a spacetime point has 4 coordinates (t, x, y, z)')
    if not 0 <= order <= MAX_ORDER:
        raise ValueError('order must lie between 0 and {}'.format(MAX_ORDER))
    coordinates = list(np.broadcast_arrays(*[np.asarray(p, dtype=float) for p in point]))
    if not all(np.all(np.isfinite(p)) for p in coordinates):
        raise ValueError('spacetime point must be finite')
    coordinates[0] = c * coordinates[0]
    return tuple(
        Jet.variable(coordinates[mu], mu, order) for mu in range(4))


# ----------------------------------------------------------------------
# elementary functions: work on jets and on plain numbers/arrays


def _real_values(v):
    return np.isrealobj(v) or np.all(np.imag(v) == 0)


def exp(x):
    if not isinstance(x, Jet):
        return np.exp(x)
    e = np.exp(x.value)
    return x.chain(e, e, e, e)


def log(x):
    v = x.value if isinstance(x, Jet) else np.asarray(x)
    if np.isrealobj(v) and np.any(v <= 0):
        raise JetDomainError('log of a non-positive number')
    if not isinstance(x, Jet):
        return np.log(x)
    r = 1.0 / v
    return x.chain(np.log(v), r, -r * r, 2 * r**3)


def sqrt(x):
    v = x.value if isinstance(x, Jet) else np.asarray(x)
    if np.isrealobj(v) and np.any(v < 0):
        raise JetDomainError('sqrt of a negative number')
    if not isinstance(x, Jet):
        return np.sqrt(x)
    s = np.sqrt(v)
    return x.chain(s, 0.5 / s, -0.25 / s**3, 0.375 / s**5)


def sin(x):
    if not isinstance(x, Jet):
        return np.sin(x)
    s, c = np.sin(x.value), np.cos(x.value)
    return x.chain(s, c, -s, -c)


def cos(x):
    if not isinstance(x, Jet):
        return np.cos(x)
    s, c = np.sin(x.value), np.cos(x.value)
    return x.chain(c, -s, -c, s)


def sinh(x):
    if not isinstance(x, Jet):
        return np.sinh(x)
    s, c = np.sinh(x.value), np.cosh(x.value)
    return x.chain(s, c, s, c)


def cosh(x):
    if not isinstance(x, Jet):
        return np.cosh(x)
    s, c = np.sinh(x.value), np.cosh(x.value)
    return x.chain(c, s, c, s)


def arcsin(x):
    v = x.value if isinstance(x, Jet) else np.asarray(x)
    if not _real_values(v):
        raise JetDomainError('arcsin of a complex number')
    v = np.real(v)
    limit = 1.0 - ARCSIN_GUARD if isinstance(x, Jet) else 1.0
    if np.any(np.abs(v) > limit):
        raise JetDomainError(
            'arcsin argument {} outside [-1, 1]'.format(np.max(np.abs(v))))
    if not isinstance(x, Jet):
        return np.arcsin(v)
    w = 1.0 - v * v
    return x.chain(np.arcsin(v), w**-0.5, v * w**-1.5, (1 + 2 * v * v) * w**-2.5)


def arctan(x):
    if not isinstance(x, Jet):
        return np.arctan(x)
    v = x.value
    w = 1.0 + v * v
    return x.chain(np.arctan(v), 1 / w, -2 * v / w**2, (6 * v * v - 2) / w**3)


def arcsinh(x):
    if not isinstance(x, Jet):
        return np.arcsinh(x)
    v = x.value
    w = 1.0 + v * v
    return x.chain(np.arcsinh(v), w**-0.5, -v * w**-1.5, (2 * v * v - 1) * w**-2.5)


def reciprocal(x):
    if not isinstance(x, Jet):
        return 1.0 / np.asarray(x)
    r = 1.0 / x.value
    return x.chain(r, -r * r, 2 * r**3, -6 * r**4)


def power(x, exponent):
    '''
    ``x ** exponent`` for jets

    Non-negative integer exponents use repeated products, so ``x ** 2`` is
    exact at ``x = 0``; other real exponents use the chain rule; a jet
    exponent goes through exp/log.
    '''
    if isinstance(exponent, Jet):
        return exp(log(x) * exponent)
    if not isinstance(x, Jet):
        return np.power(x, exponent)
    if isinstance(exponent, numbers.Integral) and exponent >= 0:
        result = Jet.constant(np.ones_like(x.value), x.order)
        base = x
        n = int(exponent)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result
    p = float(exponent)
    v = x.value
    if np.isrealobj(v) and np.any(v < 0) and not float(p).is_integer():
        raise JetDomainError('fractional power of a negative number')
    return x.chain(v**p, p * v**(p - 1), p * (p - 1) * v**(p - 2),
                   p * (p - 1) * (p - 2) * v**(p - 3))
