"""Vectorized second-order forward-mode differentiation.

A :class:`Jet` carries the value, gradient and Hessian of a scalar function of
three independent variables, batched over an arbitrary leading shape.  All
arithmetic propagates the truncated Taylor expansion exactly, so the Hessian
stays bit-for-bit symmetric.
"""

from __future__ import annotations

import numpy as np

NVARS = 3


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]


class Jet:
    """Truncated second-order Taylor expansion of a scalar field."""

    __slots__ = ("val", "grad", "hess")
    __array_priority__ = 100  # make ndarray defer to Jet in mixed arithmetic

    def __init__(self, val, grad, hess):
        self.val = val
        self.grad = grad
        self.hess = hess

    @classmethod
    def variable(cls, value, index: int) -> "Jet":
        value = np.asarray(value, dtype=float)
        grad = np.zeros(value.shape + (NVARS,))
        grad[..., index] = 1.0
        return cls(value, grad, np.zeros(value.shape + (NVARS, NVARS)))

    @classmethod
    def constant(cls, value, shape=()) -> "Jet":
        value = np.broadcast_to(np.asarray(value, dtype=float), shape).copy()
        return cls(value, np.zeros(shape + (NVARS,)), np.zeros(shape + (NVARS, NVARS)))

    @property
    def shape(self):
        return np.shape(self.val)

    def chain(self, f0, f1, f2) -> "Jet":
        """Compose with a scalar function given its value and first two derivatives at ``self.val``."""
        f1 = np.asarray(f1, dtype=float)
        f2 = np.asarray(f2, dtype=float)
        grad = f1[..., None] * self.grad
        hess = f1[..., None, None] * self.hess + f2[..., None, None] * _outer(self.grad, self.grad)
        return Jet(np.asarray(f0, dtype=float), grad, hess)

    # arithmetic -----------------------------------------------------------

    def __neg__(self):
        return Jet(-self.val, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.grad + other.grad, self.hess + other.hess)
        other = np.asarray(other, dtype=float)
        val = self.val + other
        return Jet(val, np.broadcast_to(self.grad, val.shape + (NVARS,)),
                   np.broadcast_to(self.hess, val.shape + (NVARS, NVARS)))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self, other
            val = a.val * b.val
            grad = a.val[..., None] * b.grad + b.val[..., None] * a.grad
            cross = _outer(a.grad, b.grad)
            hess = (a.val[..., None, None] * b.hess + b.val[..., None, None] * a.hess
                    + (cross + np.swapaxes(cross, -1, -2)))
            return Jet(val, grad, hess)
        other = np.asarray(other, dtype=float)
        return Jet(self.val * other, self.grad * other[..., None], self.hess * other[..., None, None])

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        inv = 1.0 / self.val
        return self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, int) and p >= 0:
            if p == 0:
                return Jet.constant(1.0, self.shape)
            out = self
            for _ in range(p - 1):
                out = out * self
            return out
        p = float(p)
        v = self.val
        return self.chain(v ** p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2))

    def __repr__(self):
        return f"Jet(val={self.val!r})"


# elementary functions; each accepts floats, arrays or Jets ------------------

def sin(x):
    if isinstance(x, Jet):
        s, c = np.sin(x.val), np.cos(x.val)
        return x.chain(s, c, -s)
    return np.sin(x)


def cos(x):
    if isinstance(x, Jet):
        s, c = np.sin(x.val), np.cos(x.val)
        return x.chain(c, -s, -c)
    return np.cos(x)


def sqrt(x):
    if isinstance(x, Jet):
        r = np.sqrt(x.val)
        return x.chain(r, 0.5 / r, -0.25 / (r * x.val))
    return np.sqrt(x)


def exp(x):
    if isinstance(x, Jet):
        e = np.exp(x.val)
        return x.chain(e, e, e)
    return np.exp(x)


def log(x):
    if isinstance(x, Jet):
        inv = 1.0 / x.val
        return x.chain(np.log(x.val), inv, -inv * inv)
    return np.log(x)


def value(x):
    return x.val if isinstance(x, Jet) else x


def variables(psi, theta, zeta):
    """Seed the three coordinate variables, broadcast to a common shape."""
    psi, theta, zeta = np.broadcast_arrays(
        np.asarray(psi, dtype=float), np.asarray(theta, dtype=float), np.asarray(zeta, dtype=float))
    return Jet.variable(psi, 0), Jet.variable(theta, 1), Jet.variable(zeta, 2)


def as_jet(x, shape) -> Jet:
    if isinstance(x, Jet):
        return x + np.zeros(shape)
    return Jet.constant(x, shape)
