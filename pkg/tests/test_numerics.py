import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import gammaln, roots_laguerre

from exotic_landau import numerics
from exotic_landau.exceptions import NumericError, ParameterError


@pytest.mark.parametrize("order", [1, 2, 5, 16, 64, 128])
def test_laguerre_factorial_moments(order):
    rule = numerics.gauss_laguerre(order)
    for k in range(2 * order):
        got = rule.integrate(lambda u: np.exp(k * np.log(u) - gammaln(k + 1)))
        assert abs(got - 1.0) < 1e-10, (order, k)


@pytest.mark.parametrize("order", [4, 32, 100])
def test_laguerre_nodes_match_scipy(order):
    x, w = roots_laguerre(order)
    rule = numerics.gauss_laguerre(order)
    assert np.allclose(rule.nodes, x, rtol=1e-12)
    big = w > 1e-280
    assert np.allclose(rule.weights[big], w[big], rtol=1e-9)


def test_laguerre_rule_is_immutable():
    rule = numerics.gauss_laguerre(8)
    with pytest.raises(ValueError):
        rule.nodes[0] = 1.0


@pytest.mark.parametrize("order", [0, 129, 2.5, True])
def test_laguerre_order_validated(order):
    with pytest.raises(ParameterError):
        numerics.gauss_laguerre(order)


def test_trapezoid_examples():
    assert abs(numerics.trapezoid_periodic(lambda x: np.ones_like(x), 4) - 2 * math.pi) < 1e-14
    assert abs(numerics.trapezoid_periodic(lambda x: np.exp(3j * x), 8)) < 1e-12
    assert abs(numerics.trapezoid_periodic(lambda x: np.cos(x) ** 2, 16) - math.pi) < 1e-14


def test_trapezoid_order_doubling_stable():
    f = lambda x: np.exp(np.cos(x)) * np.sin(2 * x) ** 2
    assert abs(numerics.trapezoid_periodic(f, 64) - numerics.trapezoid_periodic(f, 128)) < 1e-12


def test_trapezoid_reports_bad_node():
    with pytest.raises(NumericError) as info, np.errstate(divide="ignore"):
        numerics.trapezoid_periodic(lambda x: 1.0 / (x - x[3]), 8)
    assert info.value.node == pytest.approx(2 * math.pi * 3 / 8)


def test_plane_integral_gaussian_moments():
    # (1/pi) int exp(-|z|^2) |z|^(2k) d^2z = k!
    for k in range(6):
        got = numerics.integrate_complex_plane(lambda z: np.exp(-abs(z) ** 2) * abs(z) ** (2 * k))
        assert abs(got - math.factorial(k)) < 1e-10 * math.factorial(k)


def test_plane_integral_kills_angular_modes():
    got = numerics.integrate_complex_plane(lambda z: np.exp(-abs(z) ** 2) * z ** 3)
    assert abs(got) < 1e-13


def test_plane_integral_reports_non_finite():
    with pytest.raises(NumericError):
        numerics.integrate_complex_plane(lambda z: np.where(abs(z) > 3, np.inf, 0.0))


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0), st.floats(-2, 2), st.floats(-2, 2))
def test_plane_integral_linear(a1, a2, c1, c2):
    f = lambda z: np.exp(-a1 * abs(z) ** 2)
    g = lambda z: np.exp(-a2 * abs(z - 0.3) ** 2)
    lhs = numerics.integrate_complex_plane(lambda z: c1 * f(z) + c2 * g(z))
    rhs = c1 * numerics.integrate_complex_plane(f) + c2 * numerics.integrate_complex_plane(g)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


def test_gauss_legendre_interval():
    x, w = numerics.gauss_legendre(10, 0.0, math.pi)
    assert abs(np.sum(w * np.sin(x)) - 2.0) < 1e-13
