import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import binom

from dixmier_lab.bergman import (
    WeightParam,
    circle_rule,
    disk_rule,
    inner_product,
    kernel_eval,
    log_moment_ratio,
    moment,
    moment_ratio,
    onb_norm,
    project_monomial,
    radial_rule,
)
from dixmier_lab.config import TOL

ALPHAS = [-0.5, 0.0, 1.0, 3.0]


def test_weight_param_rejects_alpha_le_minus_one():
    assert float(WeightParam(0.5)) == 0.5
    for bad in (-1.0, -2.0):
        with pytest.raises(ValueError):
            WeightParam(bad)
    with pytest.raises(ValueError):
        moment(0, -1.0)


@pytest.mark.parametrize("alpha", [-0.9, 0.0, 2.5, 40.0])
def test_moment_zero_is_one(alpha):
    assert moment(0, alpha) == pytest.approx(1.0, rel=1e-15)


def test_moment_oracles():
    assert moment(3, 0.0) == pytest.approx(0.25, rel=1e-15)
    assert moment(1, 1.0) == pytest.approx(1 / 3, rel=1e-15)
    # No overflow deep into the spectrum range.
    m = moment(10**6, 3.0)
    assert 0 < m < 1e-20 and np.isfinite(m)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_moment_strictly_decreasing(alpha):
    m = moment(np.arange(201), alpha)
    assert np.all(np.diff(m) < 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 60), st.floats(-0.99, 10.0))
def test_moment_ratio_matches_log_moments(a, d, alpha):
    b = a + d
    direct = np.log(moment(b, alpha)) - np.log(moment(a, alpha))
    assert log_moment_ratio(b, a, alpha) == pytest.approx(direct, abs=1e-9 * max(1.0, abs(direct)))


def test_moment_ratio_one_step():
    n = np.arange(50)
    assert np.allclose(moment_ratio(n + 1, n, 0.5), (n + 1) / (n + 2.5), rtol=1e-14)


def test_onb_norm():
    assert onb_norm(0, 2.5) == pytest.approx(1.0)
    assert onb_norm(1, 0.0) == pytest.approx(0.70710678118654752, rel=1e-15)
    assert onb_norm(4, 1.0) == pytest.approx(np.sqrt(1 / 15), rel=1e-14)
    n = np.arange(100)
    assert np.allclose(onb_norm(n, 0.7) ** 2, moment(n, 0.7), rtol=1e-14)


def test_project_monomial():
    assert project_monomial(0, 5, 1.3) == (5, pytest.approx(1.0))
    assert project_monomial(1, 0, 0.0)[1] == 0.0
    d, c = project_monomial(1, 1, 0.0)
    assert d == 0 and c == pytest.approx(0.5)
    # Idempotence on the output.
    d, c = project_monomial(3, 7, 2.0)
    assert project_monomial(0, d, 2.0) == (d, pytest.approx(1.0))


def test_kernel_values():
    assert kernel_eval(0.0, 0.7 - 0.2j, 1.5) == pytest.approx(1.0)
    assert kernel_eval(0.5, 0.5, 0.0) == pytest.approx(1 / 0.75**2)
    z, w = 0.3, 0.4j
    series = sum(binom(n + 2, n) * (z * np.conj(w)) ** n for n in range(80))
    assert kernel_eval(z, w, 1.0) == pytest.approx(series, rel=1e-14)
    assert kernel_eval(z, w, 1.0) == pytest.approx((1 + 0.12j) ** -3, rel=1e-14)
    with pytest.raises(ValueError):
        kernel_eval(1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        kernel_eval(0.0, -1j, 0.0)


def test_circle_rule():
    r = circle_rule(4)
    assert abs(r.integrate(lambda z: z)) < 1e-15
    assert r.weights.sum() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        circle_rule(0)


def test_disk_rule_examples():
    assert disk_rule(64, 64, 0.0).integrate(lambda z: np.abs(z) ** 2).real == pytest.approx(0.5, rel=1e-14)
    assert disk_rule(64, 128, -0.5).integrate(lambda z: np.ones_like(z)).real == pytest.approx(2.0, rel=1e-13)
    with pytest.raises(ValueError):
        disk_rule(8, 8, -1.0)
    with pytest.raises(ValueError):
        radial_rule(0, 0.0)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_disk_rule_moments(alpha):
    rule = disk_rule(64, 4, alpha)
    for j in range(51):
        q = (alpha + 1) * rule.integrate(lambda z: np.abs(z) ** (2 * j)).real
        assert abs(q / moment(j, alpha) - 1) <= TOL.quadrature_moment


def test_rules_are_immutable_and_deterministic():
    a, b = disk_rule(16, 8, 0.3), disk_rule(16, 8, 0.3)
    assert np.array_equal(a.points, b.points) and np.array_equal(a.weights, b.weights)
    with pytest.raises(ValueError):
        a.weights[0] = 1.0


@pytest.mark.parametrize("alpha", [0.0, 1.0])
@pytest.mark.parametrize("w", [0.0, 0.3, 0.5 + 0.2j])
def test_reproducing_property(alpha, w):
    rng = np.random.default_rng(7)
    c = rng.normal(size=11) + 1j * rng.normal(size=11)
    f = lambda z: np.polyval(c[::-1], z)  # noqa: E731
    rule = disk_rule(64, 128, alpha)
    val = inner_product(f, lambda z: kernel_eval(z, w, alpha), alpha, rule)
    assert abs(val - f(w)) <= TOL.reproducing_kernel * abs(f(w))


@pytest.mark.parametrize("alpha", [0.0, 2.0])
def test_projection_orthogonality(alpha):
    rule = disk_rule(64, 128, alpha)
    for m in range(11):
        for k in range(m + 1):
            d, c = project_monomial(k, m, alpha)
            resid = lambda z: np.conj(z) ** k * z**m - c * z**d  # noqa: E731
            for j in range(21):
                ip = inner_product(resid, lambda z: z**j, alpha, rule)
                assert abs(ip) <= TOL.projection_orthogonality


def test_inner_product_requires_matching_rule():
    with pytest.raises(ValueError):
        inner_product(lambda z: z, lambda z: z, 1.0, disk_rule(8, 8, 0.0))
