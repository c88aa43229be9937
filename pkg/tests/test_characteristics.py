"""Transport solver against the closed-form potentials it must reproduce."""

import numpy as np

from mhstools.characteristics import (
    CharacteristicsProblem,
    InitialCurve,
    solve_characteristics,
)
from mhstools.domains import Domain, sample
from mhstools.fields import log, vector, y, z

# characteristics of  -y psi_y + psi_z = -1  (the constraint with phi = z)
PROB_TEMPLATE = dict(
    advecting=vector(0.0, -y, 1.0),
    source=-1.0,
    domain=Domain.box((-2, 0.02, -3), (2, 8, 3)),
)
TARGET_BOX = Domain.box((-0.1, 0.5, 0.5), (0.1, 1.5, 1.5))


def test_reproduces_log_potential():
    # initial psi(y, 0) = 2 log y transports to psi = z + 2 log y
    prob = CharacteristicsProblem(
        initial=InitialCurve(surface=z, data=2 * log(y)), **PROB_TEMPLATE
    )
    targets = sample(TARGET_BOX, 200)
    results = solve_characteristics(prob, targets)
    assert all(r.ok for r in results)
    vals = np.array([r.value for r in results])
    expect = targets.points[:, 2] + 2 * np.log(targets.points[:, 1])
    assert np.abs(vals - expect).max() < 1e-6
    assert max(r.error_estimate for r in results) < 1e-8


def test_reproduces_linear_potential():
    # zero initial data gives psi = -z, the simplest catalog entry's potential
    prob = CharacteristicsProblem(
        initial=InitialCurve(surface=z, data=0.0 * y), **PROB_TEMPLATE
    )
    targets = sample(TARGET_BOX, 100)
    results = solve_characteristics(prob, targets)
    vals = np.array([r.value for r in results])
    np.testing.assert_allclose(vals, -targets.points[:, 2], atol=1e-6)


def test_reproduces_product_log_potential():
    # constraint with phi = (z^2 - y^2)/2: -2 y psi_y + z psi_z = -1,
    # solved by psi = log(y z); initial data on z = 1 is log y
    prob = CharacteristicsProblem(
        advecting=vector(0.0, -2 * y, z),
        source=-1.0,
        initial=InitialCurve(surface=z - 1.0, data=log(y)),
        domain=Domain.box((-2, 0.02, 0.02), (2, 8, 8)),
    )
    targets = sample(Domain.box((-0.1, 0.5, 0.5), (0.1, 1.5, 1.5)), 200)
    results = solve_characteristics(prob, targets)
    assert all(r.ok for r in results)
    vals = np.array([r.value for r in results])
    expect = np.log(targets.points[:, 1] * targets.points[:, 2])
    assert np.abs(vals - expect).max() < 1e-6


def test_zero_length_integration_exact():
    prob = CharacteristicsProblem(
        initial=InitialCurve(surface=z, data=2 * log(y)), **PROB_TEMPLATE
    )
    r = solve_characteristics(prob, np.array([[0.0, 0.7, 0.0]]))[0]
    assert r.ok
    assert r.value == 2 * np.log(0.7)
    assert r.error_estimate == 0.0


def test_targets_below_initial_surface():
    # points with z < 0 must flow the other way along the characteristic
    prob = CharacteristicsProblem(
        initial=InitialCurve(surface=z, data=2 * log(y)), **PROB_TEMPLATE
    )
    pts = np.array([[0.0, 1.0, -0.5], [0.0, 2.0, -1.0]])
    results = solve_characteristics(prob, pts)
    assert all(r.ok for r in results)
    vals = np.array([r.value for r in results])
    expect = pts[:, 2] + 2 * np.log(pts[:, 1])
    assert np.abs(vals - expect).max() < 1e-6


def test_budget_exhaustion_flags_point():
    # an advecting field parallel to the surface never reaches it
    prob = CharacteristicsProblem(
        advecting=vector(1.0, 0.0, 0.0),
        source=0.0,
        initial=InitialCurve(surface=z - 5.0, data=0.0 * y),
        domain=None,
    )
    r = solve_characteristics(prob, np.array([[0.0, 0.0, 0.0]]), max_time=2.0)[0]
    assert not r.ok
    assert "budget" in r.message
    assert np.isnan(r.value)


def test_domain_escape_flags_point():
    prob = CharacteristicsProblem(
        advecting=vector(0.0, 0.0, 1.0),
        source=0.0,
        initial=InitialCurve(surface=z - 5.0, data=0.0 * y),
        domain=Domain.box((-1, -1, -1), (1, 1, 1)),
    )
    r = solve_characteristics(prob, np.array([[0.0, 0.0, 0.0]]), max_time=10.0)[0]
    assert not r.ok
    assert "domain" in r.message
