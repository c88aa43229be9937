"""Expression-tree operators: spec examples, identities, FD agreement."""

import numpy as np
import pytest
from conftest import fd_gradient, fd_hessian, random_scalar_field, random_solenoidal_field

from mhstools.domains import Domain, sample
from mhstools.fields import (
    Const,
    EvaluationError,
    Gradient,
    characteristic_polynomial,
    cos,
    cross,
    curl,
    div,
    divergence,
    eval_jet,
    exp,
    grad,
    lie_derivative,
    log,
    sin,
    vector,
    x,
    y,
    z,
)

BALL = Domain.ball((0.0, 0.0, 0.0), 1.0)


class TestEvalJet:
    def test_polynomial(self):
        j = eval_jet(x**2 - y**2, (1.0, 2.0, 0.0))
        assert j.value == pytest.approx(-3.0)
        np.testing.assert_allclose(j.grad, [2.0, -4.0, 0.0])
        np.testing.assert_allclose(np.diag(j.hess), [2.0, -2.0, 0.0])

    def test_exp_sin(self):
        j = eval_jet(exp(x) * sin(y), (0.0, 0.0, 0.0))
        assert j.value == pytest.approx(0.0)
        np.testing.assert_allclose(j.grad, [0.0, 1.0, 0.0])

    def test_exp_cos_hessian_vs_fd(self):
        f = exp(x) * cos(y)
        j = eval_jet(f, (0.0, 0.0, 0.0))
        np.testing.assert_allclose(j.grad, [1.0, 0.0, 0.0], atol=1e-14)
        fd = fd_hessian(lambda p: f(p), np.zeros(3), h=1e-4)
        np.testing.assert_allclose(j.hess, fd, atol=1e-6)

    def test_domain_error_names_node(self):
        with pytest.raises(EvaluationError) as ei:
            eval_jet(log(y - 1.0), (0.0, 0.5, 0.0))
        assert "log" in str(ei.value)


class TestGrad:
    def test_constant_direction(self):
        g = grad(z + 0.0 * x)
        for p in [(0, 0, 0), (0.3, -0.7, 0.2)]:
            np.testing.assert_allclose(g(p), [0.0, 0.0, 1.0])

    def test_polynomial(self):
        g = grad((x**2 - y**2) / 2 + z)
        np.testing.assert_allclose(g((0.4, 0.5, -0.1)), [0.4, -0.5, 1.0])

    def test_exp_sin_at_quarter_turn(self):
        g = grad(exp(x) * sin(y))
        np.testing.assert_allclose(g((0.0, np.pi / 2, 0.0)), [1.0, 0.0, 0.0], atol=1e-15)
        fd = fd_gradient(lambda p: float(np.exp(p[0]) * np.sin(p[1])), (0.0, np.pi / 2, 0.0))
        np.testing.assert_allclose(g((0.0, np.pi / 2, 0.0)), fd, atol=1e-7)


class TestDivCurl:
    def test_div_shear(self):
        assert div(vector(x, -y, 0.0), (0.7, 0.1, -0.3)) == pytest.approx(0.0)

    def test_div_radial(self):
        assert div(vector(x, y, z), (0.2, 0.4, 0.6)) == pytest.approx(3.0)

    def test_div_of_pressure_field(self):
        w = vector(x + exp(-z), -y, 1.0)
        assert abs(div(w, (0.3, -0.2, 0.5))) < 1e-12

    def test_curl_of_gradient_vanishes(self, rng):
        pts = sample(BALL, 100).points
        for _ in range(50):
            f = random_scalar_field(rng)
            vals = curl(grad(f)).values(pts)
            assert np.abs(vals).max() < 1e-9

    def test_curl_abc_at_origin(self):
        w = vector(sin(z), cos(z), 0.0)
        np.testing.assert_allclose(curl(w)((0.0, 0.0, 0.0)), [0.0, 1.0, 0.0], atol=1e-15)

    def test_curl_pressure_field_at_origin(self):
        w = vector(x + exp(-z), -y, 1.0)
        np.testing.assert_allclose(curl(w)((0.0, 0.0, 0.0)), [0.0, -1.0, 0.0], atol=1e-15)
        # cross-check against finite differences of the components
        h = 1e-4
        dwx_dz = (w((0, 0, h))[0] - w((0, 0, -h))[0]) / (2 * h)
        assert curl(w)((0.0, 0.0, 0.0))[1] == pytest.approx(dwx_dz, abs=1e-7)

    def test_div_of_curl_vanishes(self, rng):
        pts = sample(BALL, 100).points
        for _ in range(50):
            wf = vector(
                random_scalar_field(rng), random_scalar_field(rng), random_scalar_field(rng)
            )
            vals = divergence(curl(wf)).values(pts)
            assert np.abs(vals).max() < 1e-9


class TestLieDerivative:
    def test_self_transport_vanishes(self, rng):
        w = random_solenoidal_field(rng)
        pts = sample(BALL, 50).points
        vals = lie_derivative(w, w).values(pts)
        assert np.abs(vals).max() < 1e-12

    def test_constant_field_against_rotation(self):
        w = vector(1.0, 0.0, 0.0)
        xi = vector(-y, x, 0.0)  # b = z-hat
        ld = lie_derivative(w, xi)
        for p in [(0, 0, 0), (0.5, 0.2, -0.4)]:
            np.testing.assert_allclose(ld(p), [0.0, -1.0, 0.0], atol=1e-15)

    def test_translation_symmetry_of_abc(self):
        w = vector(sin(z), cos(z), 0.0)
        xi = vector(1.0, 0.0, 0.0)
        pts = sample(BALL, 100).points
        assert np.abs(lie_derivative(w, xi).values(pts)).max() == 0.0

    def test_solenoidal_identity_curl_form(self, rng):
        # for solenoidal w, xi: Lie(xi) w = curl(w x xi)
        pts = sample(BALL, 100).points
        for _ in range(5):
            w = random_solenoidal_field(rng)
            xi = random_solenoidal_field(rng)
            lhs = lie_derivative(w, xi).values(pts)
            rhs = curl(cross(w, xi)).values(pts)
            assert np.abs(lhs - rhs).max() < 1e-9

    def test_linearity_in_xi(self, rng):
        w = random_solenoidal_field(rng)
        xi1 = random_solenoidal_field(rng)
        xi2 = random_solenoidal_field(rng)
        a, b = 0.7, -1.3
        pts = sample(BALL, 50).points
        combo = lie_derivative(w, a * xi1 + b * xi2).values(pts)
        split = a * lie_derivative(w, xi1).values(pts) + b * lie_derivative(w, xi2).values(pts)
        assert np.abs(combo - split).max() < 1e-10


class TestAdFdAgreement:
    def test_gradients_match_fd(self, rng):
        pts = sample(BALL, 30).points
        for _ in range(5):
            f = random_scalar_field(rng)
            g = Gradient(f)
            gv = g.values(pts)
            for p, gp in zip(pts[:10], gv[:10]):
                fd = fd_gradient(lambda q: f(q), p)
                scale = max(1.0, np.abs(fd).max())
                assert np.abs(gp - fd).max() / scale < 1e-5

    def test_divergence_matches_fd(self, rng):
        for _ in range(5):
            w = vector(
                random_scalar_field(rng), random_scalar_field(rng), random_scalar_field(rng)
            )
            p = rng.uniform(-0.5, 0.5, size=3)
            h = 1e-4
            fd = 0.0
            for i in range(3):
                e = np.zeros(3)
                e[i] = h
                fd += (w(p + e)[i] - w(p - e)[i]) / (2 * h)
            got = div(w, p)
            assert abs(got - fd) / max(1.0, abs(fd)) < 1e-5


class TestForceBalance:
    def test_gradient_field_is_curl_free_equilibrium(self, rng):
        from mhstools.checks import force_balance_residual

        ss = sample(BALL, 500)
        for _ in range(3):
            w = grad(random_scalar_field(rng))
            rep = force_balance_residual(w, Const(0.0), ss)
            assert rep.max("force_balance") < 1e-10

    def test_product_potential_equilibrium_on_unit_ball(self):
        # closed-form components stay regular on the whole ball even where
        # the generating log potential does not
        from mhstools.checks import force_balance_residual

        w = vector(x + y * z, -2 * y, z)
        chi = y * z * (x + y * z / 2)
        ss = sample(BALL, 1000)
        rep = force_balance_residual(w, chi, ss)
        assert rep.max("force_balance") < 1e-10
        assert rep.max("divergence") < 1e-12

    def test_simple_pressure_solution_on_unit_ball(self):
        from mhstools.checks import force_balance_residual

        w = vector(x + exp(-z), -y, 1.0)
        chi = exp(-z) * (x + exp(-z) / 2)
        ss = sample(BALL, 1000)
        rep = force_balance_residual(w, chi, ss)
        assert rep.max("force_balance") < 1e-10


class TestCharacteristicPolynomial:
    def test_characteristic_surface(self):
        assert characteristic_polynomial((1, 0, 0), (0, 1, 0)) == 0.0

    def test_aligned(self):
        assert characteristic_polynomial((1, 0, 0), (1, 0, 0)) == 1.0

    def test_hand_expansion(self):
        assert characteristic_polynomial((1, 1, 0), (2, 0, 0)) == pytest.approx(16.0)


class TestErrorHandling:
    def test_batch_evaluation_records_errors_per_sample(self):
        f = log(y)  # invalid for y <= 0
        pts = np.array([[0.0, 0.5, 0.0], [0.0, -0.5, 0.0], [0.0, 2.0, 0.0]])
        vals = f.values(pts)
        assert np.isfinite(vals[[0, 2]]).all()
        assert np.isnan(vals[1])

    def test_report_excludes_failed_samples(self):
        from mhstools.checks import scalar_abs_stats

        f = log(y)
        box = Domain.box((-1.0, -1.0, -1.0), (1.0, 1.0, 1.0))
        ss = sample(box, 200)
        st, errors = scalar_abs_stats(f, ss)
        assert st.n_errors > 0
        assert st.n_errors + (st.n_samples - st.n_errors) == 200
        assert np.isfinite(st.max)
        assert errors  # offending node recorded
