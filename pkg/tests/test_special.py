"""Tests for Jacobi evaluation, normalization, zeros, and weighted sups."""

import math

import numpy as np
import pytest

from widomlab.special import (
    JacobiParams,
    WeightParams,
    jacobi_eval,
    jacobi_zeros,
    log_gamma,
    monic_scale,
    param_to_weight,
    weight_to_param,
    weighted_monic_jacobi_sup,
)


def test_log_gamma_known_values():
    assert log_gamma(1.0) == 0.0
    assert abs(log_gamma(0.5) - 0.5723649429247001) < 1e-15
    assert abs(log_gamma(5.0) - math.log(24.0)) < 1e-14


def test_log_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_gamma(0.0)
    with pytest.raises(ValueError):
        log_gamma(-1.5)


def test_param_validation():
    with pytest.raises(ValueError):
        JacobiParams(-1.0, 0.0)
    with pytest.raises(ValueError):
        JacobiParams(0.0, -1.5)
    with pytest.raises(ValueError):
        WeightParams(-0.1, 0.0)
    assert JacobiParams(0.3, -0.2).q == 0.3


def test_parameter_maps_are_inverse():
    assert param_to_weight(JacobiParams(0.0, 0.0)) == WeightParams(0.25, 0.25)
    assert param_to_weight(JacobiParams(-0.5, 0.5)) == WeightParams(0.0, 0.5)
    rng = np.random.default_rng(11)
    for _ in range(50):
        # alpha >= -1/2 keeps the image inside the valid weight-exponent range
        a, b = rng.uniform(-0.5, 3.0, size=2)
        w = param_to_weight(JacobiParams(a, b))
        p = weight_to_param(w)
        assert abs(p.alpha - a) < 1e-14 and abs(p.beta - b) < 1e-14


def test_jacobi_eval_degree_zero():
    v, d = jacobi_eval(JacobiParams(0.7, -0.3), 0, 0.42)
    assert v == 1.0 and d == 0.0


def test_jacobi_eval_legendre_cubic():
    # (5x^3 - 3x)/2 at x = 1/2
    v, _ = jacobi_eval(JacobiParams(0.0, 0.0), 3, 0.5)
    assert abs(v - (-0.4375)) < 1e-15


def test_jacobi_eval_degree_one():
    # P_1 = ((alpha+beta+2)x + (alpha-beta))/2
    v, d = jacobi_eval(JacobiParams(0.5, -0.5), 1, 0.0)
    assert abs(v - 0.5) < 1e-15
    assert abs(d - 1.0) < 1e-15


def test_jacobi_eval_array_input():
    x = np.linspace(-1.0, 1.0, 7)
    v, d = jacobi_eval(JacobiParams(0.25, -0.25), 5, x)
    assert v.shape == x.shape and d.shape == x.shape
    for i, xi in enumerate(x):
        vi, di = jacobi_eval(JacobiParams(0.25, -0.25), 5, float(xi))
        assert v[i] == vi and d[i] == di


def test_jacobi_eval_derivative_matches_finite_differences():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a, b = rng.uniform(-0.9, 1.0, size=2)
        n = int(rng.integers(1, 12))
        x = float(rng.uniform(-0.95, 0.95))
        p = JacobiParams(a, b)
        _, d = jacobi_eval(p, n, x)
        h = 1e-6
        vp, _ = jacobi_eval(p, n, x + h)
        vm, _ = jacobi_eval(p, n, x - h)
        assert abs(d - (vp - vm) / (2.0 * h)) < 1e-5


def test_jacobi_eval_endpoint_gamma_identity():
    # P_n(1) = Gamma(n+alpha+1) / (Gamma(alpha+1) Gamma(n+1))
    for a in (-0.75, -0.25, 0.0, 0.5, 1.0):
        for b in (-0.5, 0.25, 1.0):
            for n in (1, 3, 8, 15):
                v, _ = jacobi_eval(JacobiParams(a, b), n, 1.0)
                ref = math.exp(log_gamma(n + a + 1.0) - log_gamma(a + 1.0) - log_gamma(n + 1.0))
                assert abs(v - ref) <= 1e-11 * abs(ref)


def test_monic_scale_values():
    assert monic_scale(JacobiParams(0.3, -0.4), 0) == 1.0
    assert abs(monic_scale(JacobiParams(0.0, 0.0), 2) - 4.0 / 6.0) < 1e-15
    assert abs(monic_scale(JacobiParams(0.5, 0.5), 1) - 2.0 / 3.0) < 1e-15


def test_monic_scale_matches_recurrence_leading_coefficient():
    rng = np.random.default_rng(23)
    for _ in range(30):
        a, b = rng.uniform(-0.9, 1.0, size=2)
        n = int(rng.integers(1, 21))
        # leading coefficient of P_n from the recurrence: prod of the x-slopes
        lead = 0.5 * (a + b + 2.0)
        for k in range(2, n + 1):
            s = a + b
            ak = 2.0 * k * (k + s) * (2.0 * k + s - 2.0)
            ck = (2.0 * k + s - 2.0) * (2.0 * k + s - 1.0) * (2.0 * k + s)
            lead *= ck / ak
        assert abs(monic_scale(JacobiParams(a, b), n) * lead - 1.0) < 1e-12


def test_jacobi_zeros_explicit_cases():
    assert jacobi_zeros(JacobiParams(0.0, 0.0), 1) == [0.0]
    z = jacobi_zeros(JacobiParams(0.5, -0.5), 1)
    assert len(z) == 1 and abs(z[0] - (-0.5)) < 1e-14
    z = jacobi_zeros(JacobiParams(0.0, 0.0), 2)
    root = 0.5773502691896258  # sqrt(1/3)
    assert abs(z[0] + root) < 1e-13 and abs(z[1] - root) < 1e-13


def test_jacobi_zeros_validity_grid():
    for a in (-0.75, -0.25, 0.25, 1.0):
        for b in (-0.6, 0.0, 1.0):
            p = JacobiParams(a, b)
            for n in (1, 4, 13, 30):
                z = np.array(jacobi_zeros(p, n))
                assert z.shape == (n,)
                assert np.all(np.diff(z) > 0)
                assert np.all(np.abs(z) < 1.0)
                v, d = jacobi_eval(p, n, z)
                assert np.max(np.abs(v)) <= 1e-10
                assert np.min(np.abs(d)) > 0.0  # simple zeros


def test_jacobi_zeros_rejects_degree_zero():
    with pytest.raises(ValueError):
        jacobi_zeros(JacobiParams(0.0, 0.0), 0)


def test_weighted_sup_classical_kinds():
    # unweighted monic first kind: 2^{1-n}
    assert abs(weighted_monic_jacobi_sup(WeightParams(0.0, 0.0), 3) - 0.25) < 1e-9
    # second kind with sqrt(1-x^2) weight: 2^{-n}
    assert abs(weighted_monic_jacobi_sup(WeightParams(0.5, 0.5), 2) - 0.25) < 1e-9


def test_weighted_sup_frozen_interior_case():
    # dense-grid maximization oracle (10x resolution) for rho = (0.3, 0.3), n = 4
    got = weighted_monic_jacobi_sup(WeightParams(0.3, 0.3), 4)
    assert abs(got - 0.08012820512820513) < 1e-9


def test_weighted_sup_degree_zero_is_weight_max():
    # n = 0: sup of the bare weight
    assert abs(weighted_monic_jacobi_sup(WeightParams(0.0, 0.0), 0) - 1.0) < 1e-12
    assert abs(weighted_monic_jacobi_sup(WeightParams(1.0, 0.0), 0) - 2.0) < 1e-9
