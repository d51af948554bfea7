"""Second-order forward-mode jets over the four Galilean coordinates.

A :class:`Jet2` carries a value together with its gradient and Hessian with
respect to ``x1..x4``.  All three arrays share an arbitrary leading batch
shape, so one jet can represent the same expression evaluated at many points
at once; a single point is just the empty batch shape ``()``.

Every update writes the Hessian as a sum of terms that are each symmetric
bit-for-bit (``g_i*h_j + h_i*g_j`` and friends), so symmetry never drifts.
"""
from __future__ import annotations

import numpy as np

from .errors import DivisionByZero, DomainError

NDIM = 4


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]


def _sym_outer(a, b):
    # a_i b_j + b_i a_j; exactly symmetric since both products commute
    return _outer(a, b) + _outer(b, a)


class Jet2:
    __slots__ = ("val", "grad", "hess")

    __array_priority__ = 1000  # keep numpy scalars from hijacking operators

    def __init__(self, val, grad, hess):
        self.val = np.asarray(val, dtype=float)
        self.grad = np.asarray(grad, dtype=float)
        self.hess = np.asarray(hess, dtype=float)

    @classmethod
    def constant(cls, c, shape=()):
        val = np.broadcast_to(np.asarray(c, dtype=float), shape).copy()
        return cls(val, np.zeros(shape + (NDIM,)), np.zeros(shape + (NDIM, NDIM)))

    @property
    def shape(self):
        return self.val.shape

    def __repr__(self):
        return f"Jet2(val={self.val!r}, grad={self.grad!r})"

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return Jet2(-self.val, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.val + other.val, self.grad + other.grad, self.hess + other.hess)
        return Jet2(self.val + other, self.grad, self.hess)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.val - other.val, self.grad - other.grad, self.hess - other.hess)
        return Jet2(self.val - other, self.grad, self.hess)

    def __rsub__(self, other):
        return Jet2(other - self.val, -self.grad, -self.hess)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            a, b = self, other
            av = a.val[..., None]
            bv = b.val[..., None]
            return Jet2(
                a.val * b.val,
                a.grad * bv + av * b.grad,
                a.hess * bv[..., None] + av[..., None] * b.hess + _sym_outer(a.grad, b.grad),
            )
        c = np.asarray(other, dtype=float)
        return Jet2(self.val * c, self.grad * c[..., None], self.hess * c[..., None, None])

    __rmul__ = __mul__

    def reciprocal(self):
        v = self.val
        if np.any(v == 0):
            raise DivisionByZero("jet division by a zero value")
        inv = 1.0 / v
        return self._chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        c = np.asarray(other, dtype=float)
        if np.any(c == 0):
            raise DivisionByZero("jet division by zero constant")
        return self * (1.0 / c)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        return powi(self, n)

    # -- chain rule -------------------------------------------------------
    def _chain(self, f0, f1, f2):
        """Compose with a scalar function given its value and first two derivatives."""
        f1 = np.asarray(f1, dtype=float)
        f2 = np.asarray(f2, dtype=float)
        g = self.grad
        return Jet2(
            f0,
            f1[..., None] * g,
            f2[..., None, None] * _outer(g, g) + f1[..., None, None] * self.hess,
        )


def _chain2(a: Jet2, b: Jet2, f0, fa, fb, faa, fab, fbb) -> Jet2:
    """Two-argument chain rule to second order."""
    ga, gb = a.grad, b.grad
    e = lambda t: np.asarray(t, dtype=float)[..., None]
    ee = lambda t: np.asarray(t, dtype=float)[..., None, None]
    return Jet2(
        f0,
        e(fa) * ga + e(fb) * gb,
        ee(fa) * a.hess
        + ee(fb) * b.hess
        + ee(faa) * _outer(ga, ga)
        + ee(fab) * _sym_outer(ga, gb)
        + ee(fbb) * _outer(gb, gb),
    )


def as_jet(a, shape=()) -> Jet2:
    return a if isinstance(a, Jet2) else Jet2.constant(a, shape)


def seed_coordinates(x) -> tuple[Jet2, Jet2, Jet2, Jet2]:
    """Coordinate jets ``x^k`` at the point(s) ``x`` (shape ``(..., 4)``)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != NDIM:
        raise ValueError(f"expected trailing dimension 4, got {x.shape}")
    batch = x.shape[:-1]
    eye = np.eye(NDIM)
    jets = []
    for k in range(NDIM):
        grad = np.broadcast_to(eye[k], batch + (NDIM,)).copy()
        jets.append(Jet2(x[..., k].copy(), grad, np.zeros(batch + (NDIM, NDIM))))
    return tuple(jets)


# -- elementary functions ---------------------------------------------------

def sin(a: Jet2) -> Jet2:
    s, c = np.sin(a.val), np.cos(a.val)
    return a._chain(s, c, -s)


def cos(a: Jet2) -> Jet2:
    s, c = np.sin(a.val), np.cos(a.val)
    return a._chain(c, -s, -c)


def sinh(a: Jet2) -> Jet2:
    s, c = np.sinh(a.val), np.cosh(a.val)
    return a._chain(s, c, s)


def cosh(a: Jet2) -> Jet2:
    s, c = np.sinh(a.val), np.cosh(a.val)
    return a._chain(c, s, c)


def exp(a: Jet2) -> Jet2:
    e = np.exp(a.val)
    return a._chain(e, e, e)


def ln(a: Jet2) -> Jet2:
    v = a.val
    if np.any(~(v > 0)):
        raise DomainError("ln requires a positive argument")
    inv = 1.0 / v
    return a._chain(np.log(v), inv, -inv * inv)


def sqrt(a: Jet2) -> Jet2:
    v = a.val
    if np.any(~(v > 0)):
        raise DomainError("sqrt requires a positive argument")
    r = np.sqrt(v)
    return a._chain(r, 0.5 / r, -0.25 / (r * v))


def powi(a: Jet2, n: int) -> Jet2:
    if int(n) != n:
        raise TypeError("powi takes integer exponents; compose exp(p*ln(.)) for real powers")
    n = int(n)
    if n == 0:
        return Jet2.constant(1.0, a.shape)
    if n == 1:
        return a
    v = a.val
    if n < 0 and np.any(v == 0):
        raise DivisionByZero("negative power of a zero value")
    return a._chain(v**n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2))


def atan2(y: Jet2, x: Jet2) -> Jet2:
    """Angle of the point ``(x, y)`` in ``(-pi, pi]``; argument order as numpy's."""
    yv, xv = y.val, x.val
    r2 = xv * xv + yv * yv
    if np.any(r2 == 0):
        raise DomainError("atan2 undefined at the origin")
    r4 = r2 * r2
    return _chain2(
        y, x,
        np.arctan2(yv, xv),
        xv / r2, -yv / r2,
        -2.0 * xv * yv / r4, (yv * yv - xv * xv) / r4, 2.0 * xv * yv / r4,
    )


ELEMENTARY = {
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "exp": exp,
    "ln": ln,
    "sqrt": sqrt,
}


def jet_elementary(name: str, a: Jet2, b: Jet2 | None = None, n: int | None = None) -> Jet2:
    if name == "atan2":
        return atan2(a, b)
    if name == "pow":
        return powi(a, n)
    return ELEMENTARY[name](a)


def jet_arithmetic(a: Jet2, b: Jet2, op: str) -> Jet2:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown jet operation {op!r}")
