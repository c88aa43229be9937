"""Vectorized second-order jets.

A jet carries a value together with its gradient and Hessian with respect to
the three Cartesian coordinates, evaluated at a batch of points.  All
arithmetic propagates derivatives exactly (forward mode), so expression
evaluation yields machine-precision first and second derivatives.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Packed upper-triangle layout for symmetric Hessians: xx, xy, xz, yy, yz, zz.
PACKED_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
_PIDX = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}
# Packed indices forming row i of the full 3x3 matrix.
_ROW = ((0, 1, 2), (1, 3, 4), (2, 4, 5))


def pidx(i: int, j: int) -> int:
    """Packed index of Hessian entry (i, j)."""
    return _PIDX[(i, j) if i <= j else (j, i)]


def sym_outer(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Packed symmetrized outer product u (x) v + v (x) u of (N,3) arrays."""
    out = np.empty(u.shape[:-1] + (6,))
    for k, (i, j) in enumerate(PACKED_PAIRS):
        out[..., k] = u[..., i] * v[..., j] + u[..., j] * v[..., i]
    return out


def outer(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Packed outer product with entries u_i v_j (symmetric inputs assumed)."""
    out = np.empty(u.shape[:-1] + (6,))
    for k, (i, j) in enumerate(PACKED_PAIRS):
        out[..., k] = u[..., i] * v[..., j]
    return out


class Jet2:
    """Batched value/gradient/Hessian triple.

    value: (N,), grad: (N, 3), hess: (N, 6) packed upper triangle.
    """

    __slots__ = ("value", "grad", "hess")

    def __init__(self, value: np.ndarray, grad: np.ndarray, hess: np.ndarray):
        self.value = value
        self.grad = grad
        self.hess = hess

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: np.ndarray, n: int | None = None) -> "Jet2":
        v = np.asarray(value, dtype=float)
        if v.ndim == 0:
            if n is None:
                raise ValueError("batch size required for scalar constant")
            v = np.full(n, float(v))
        m = v.shape[0]
        return cls(v, np.zeros((m, 3)), np.zeros((m, 6)))

    @classmethod
    def coordinate(cls, pts: np.ndarray, axis: int) -> "Jet2":
        n = pts.shape[0]
        g = np.zeros((n, 3))
        g[:, axis] = 1.0
        return cls(pts[:, axis].astype(float, copy=True), g, np.zeros((n, 6)))

    # -- helpers ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.value.shape[0]

    def hessian(self) -> np.ndarray:
        """Full symmetric Hessian matrices, shape (N, 3, 3)."""
        h = np.empty(self.value.shape + (3, 3))
        for k, (i, j) in enumerate(PACKED_PAIRS):
            h[..., i, j] = self.hess[..., k]
            h[..., j, i] = self.hess[..., k]
        return h

    def hess_row(self, i: int) -> np.ndarray:
        """Row i of the full Hessian, shape (N, 3)."""
        return self.hess[:, _ROW[i]]

    def partial(self, i: int) -> "Jet2":
        """Jet of the i-th first partial derivative.

        Value and gradient are exact; the Hessian slot (third derivatives of
        the parent) is unknown and left zero.  Callers track how many orders
        they may trust.
        """
        return Jet2(self.grad[:, i].copy(), self.hess_row(i).copy(), np.zeros((self.n, 6)))

    def laplacian(self) -> np.ndarray:
        return self.hess[:, 0] + self.hess[:, 3] + self.hess[:, 5]

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.value + other.value, self.grad + other.grad, self.hess + other.hess)
        return Jet2(self.value + other, self.grad.copy(), self.hess.copy())

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.value, -self.grad, -self.hess)

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.value - other.value, self.grad - other.grad, self.hess - other.hess)
        return Jet2(self.value - other, self.grad.copy(), self.hess.copy())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            a, b = self, other
            value = a.value * b.value
            grad = a.value[:, None] * b.grad + b.value[:, None] * a.grad
            hess = (
                a.value[:, None] * b.hess
                + b.value[:, None] * a.hess
                + sym_outer(a.grad, b.grad)
            )
            return Jet2(value, grad, hess)
        c = float(other)
        return Jet2(self.value * c, self.grad * c, self.hess * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def reciprocal(self) -> "Jet2":
        v = self.value
        return self.chain(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def chain(self, f0: np.ndarray, f1: np.ndarray, f2: np.ndarray) -> "Jet2":
        """Compose with a univariate function given f(v), f'(v), f''(v)."""
        grad = f1[:, None] * self.grad
        hess = f1[:, None] * self.hess + f2[:, None] * outer(self.grad, self.grad)
        return Jet2(f0, grad, hess)


# -- elementary functions ----------------------------------------------------


def jexp(j: Jet2) -> Jet2:
    e = np.exp(j.value)
    return j.chain(e, e, e)


def jlog(j: Jet2) -> Jet2:
    v = j.value
    return j.chain(np.log(v), 1.0 / v, -1.0 / v**2)


def jsin(j: Jet2) -> Jet2:
    s, c = np.sin(j.value), np.cos(j.value)
    return j.chain(s, c, -s)


def jcos(j: Jet2) -> Jet2:
    s, c = np.sin(j.value), np.cos(j.value)
    return j.chain(c, -s, -c)


def jsqrt(j: Jet2) -> Jet2:
    r = np.sqrt(j.value)
    return j.chain(r, 0.5 / r, -0.25 / (j.value * r))


def jpow(j: Jet2, e: float) -> Jet2:
    v = j.value
    if e == 0:
        return Jet2.constant(np.ones_like(v))
    if e == 1:
        return Jet2(v.copy(), j.grad.copy(), j.hess.copy())
    if e == 2:
        return j * j
    f0 = v**e
    f1 = e * v ** (e - 1)
    f2 = e * (e - 1) * v ** (e - 2)
    return j.chain(f0, f1, f2)


def jatan2(jy: Jet2, jx: Jet2) -> Jet2:
    """Two-argument arctangent with full second-order chain rule."""
    a, b = jx.value, jy.value  # atan2(b, a)
    r2 = a * a + b * b
    value = np.arctan2(b, a)
    fa = -b / r2
    fb = a / r2
    r4 = r2 * r2
    faa = 2 * a * b / r4
    fbb = -2 * a * b / r4
    fab = (b * b - a * a) / r4
    grad = fa[:, None] * jx.grad + fb[:, None] * jy.grad
    hess = (
        fa[:, None] * jx.hess
        + fb[:, None] * jy.hess
        + faa[:, None] * outer(jx.grad, jx.grad)
        + fbb[:, None] * outer(jy.grad, jy.grad)
        + fab[:, None] * sym_outer(jx.grad, jy.grad)
    )
    return Jet2(value, grad, hess)


class JetValue(NamedTuple):
    """Single-point jet: value, gradient (3,), full Hessian (3, 3)."""

    value: float
    grad: np.ndarray
    hess: np.ndarray
