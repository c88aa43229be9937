"""Shared test helpers: finite-difference oracles and random field corpora."""

from __future__ import annotations

import numpy as np
import pytest

from mhstools import fields as F
from mhstools.fields import cos, exp, sin, vector, x, y, z

FD_STEP = 1e-4


def fd_gradient(f, p, h=FD_STEP):
    """Plain second-order central-difference gradient of a scalar field."""
    p = np.asarray(p, dtype=float)
    out = np.zeros(3)
    for i in range(3):
        e = np.zeros(3)
        e[i] = h
        out[i] = (f(p + e) - f(p - e)) / (2 * h)
    return out


def fd_hessian(f, p, h=FD_STEP):
    """Central-difference Hessian built from function values only."""
    p = np.asarray(p, dtype=float)
    out = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            ei = np.zeros(3)
            ej = np.zeros(3)
            ei[i] = h
            ej[j] = h
            out[i, j] = (
                f(p + ei + ej) - f(p + ei - ej) - f(p - ei + ej) + f(p - ei - ej)
            ) / (4 * h * h)
    return out


def random_scalar_field(rng) -> F.ScalarField:
    """A random smooth polynomial/trigonometric scalar expression."""
    coords = (x, y, z)
    terms = []
    for _ in range(rng.integers(2, 5)):
        kind = rng.integers(0, 3)
        c = float(rng.uniform(-2, 2))
        a, b = coords[rng.integers(0, 3)], coords[rng.integers(0, 3)]
        if kind == 0:
            terms.append(c * a * b)
        elif kind == 1:
            k = float(rng.uniform(0.5, 2.0))
            terms.append(c * sin(k * a + float(rng.uniform(-1, 1))))
        else:
            k = float(rng.uniform(0.3, 1.0))
            terms.append(c * exp(k * a) * cos(k * b))
    f = terms[0]
    for t in terms[1:]:
        f = f + t
    return f


def random_solenoidal_field(rng) -> F.VectorField:
    """A random divergence-free field with plain closed-form components.

    Mixes a traceless linear part, a quadratic part whose components avoid
    their own coordinate, and a two-coefficient trigonometric mode family.
    """
    m = rng.uniform(-1, 1, size=(3, 3))
    m -= np.eye(3) * np.trace(m) / 3.0
    lin = vector(
        m[0, 0] * x + m[0, 1] * y + m[0, 2] * z,
        m[1, 0] * x + m[1, 1] * y + m[1, 2] * z,
        m[2, 0] * x + m[2, 1] * y + m[2, 2] * z,
    )
    q = rng.uniform(-1, 1, size=6)
    quad = vector(
        q[0] * y**2 + q[1] * z**2,
        q[2] * z**2 + q[3] * x**2,
        q[4] * x**2 + q[5] * y**2,
    )
    a, b, c = (float(v) for v in rng.uniform(-1, 1, size=3))
    k = float(rng.integers(1, 3))
    abc = vector(
        a * sin(k * z) + c * cos(k * y),
        b * sin(k * x) + a * cos(k * z),
        c * sin(k * y) + b * cos(k * x),
    )
    return lin + quad + abc


@pytest.fixture
def rng():
    return np.random.default_rng(0)
