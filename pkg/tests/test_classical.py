import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from exotic_landau import classical
from exotic_landau.classical import P1, P2, X1, X2, PhaseSpacePoint
from exotic_landau.exceptions import CriticalPointError, ParameterError
from exotic_landau.model import ModelParams, derive

coords = st.floats(-3, 3, allow_nan=False)


def test_fundamental_brackets(params):
    pt = PhaseSpacePoint(0.2, -0.5, 1.0, 0.3)
    g = params.gap
    assert classical.poisson_bracket(X1, X2, pt, params) == pytest.approx(params.theta / g)
    assert classical.poisson_bracket(P1, P2, pt, params) == pytest.approx(params.eb / g)
    assert classical.poisson_bracket(X1, P1, pt, params) == pytest.approx(1 / g)
    assert classical.poisson_bracket(X1, P2, pt, params) == 0.0


@settings(max_examples=30, deadline=None)
@given(coords, coords, coords, coords)
def test_bracket_generates_the_flow(x1, x2, p1, p2):
    params = ModelParams(mass=1.4, theta=0.3)
    pt = PhaseSpacePoint(x1, x2, p1, p2)
    h = classical.Observable(
        lambda q: classical.energy(q.as_array(), params),
        lambda q: np.array([0.0, 0.0, q.p1 / params.mass, q.p2 / params.mass]),
    )
    flow = classical.equations_of_motion(pt, params)
    for obs, rate in zip((X1, X2, P1, P2), flow):
        assert classical.poisson_bracket(obs, h, pt, params) == pytest.approx(rate, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(coords, coords, coords, coords)
def test_bracket_antisymmetric_and_leibniz(x1, x2, p1, p2):
    params = ModelParams(theta=-0.4)
    pt = PhaseSpacePoint(x1, x2, p1, p2)
    f, g, h = X1 * P2, P1 * P1, X2
    assert classical.poisson_bracket(f, g, pt, params) == pytest.approx(-classical.poisson_bracket(g, f, pt, params))
    lhs = classical.poisson_bracket(f * g, h, pt, params)
    rhs = f(pt) * classical.poisson_bracket(g, h, pt, params) + g(pt) * classical.poisson_bracket(f, h, pt, params)
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_observable_gradients_self_test(params):
    pt = PhaseSpacePoint(0.3, 0.1, -0.7, 1.2, t=0.4)
    for obs in classical.charge_observables(params):
        assert obs.self_test(pt)
    assert (X1 * P2 * P2).self_test(pt)


def test_critical_point_in_bracket():
    with pytest.raises(CriticalPointError):
        classical.poisson_bracket(X1, X2, PhaseSpacePoint(0, 0, 0, 0), ModelParams(theta=1.0))


def test_conserved_quantities_agree_with_arrays(params):
    traj = classical.integrate(PhaseSpacePoint(0.5, 0.2, -0.1, 0.8), params, dt=0.01, steps=50)
    arr = classical.conserved_arrays(traj.t, traj.states, params)
    for i, pt in enumerate(traj):
        assert np.allclose(classical.conserved_quantities(pt, params), arr[i], atol=1e-13)


def test_trajectory_conservation_and_frequency(backend, params):
    d = derive(params)
    period = 2 * math.pi / d.effective_frequency
    traj = classical.integrate(PhaseSpacePoint(0.7, -0.2, 0.3, 1.1), params, dt=period / 1000, steps=10_000)
    q = classical.conserved_arrays(traj.t, traj.states, params)
    assert np.max(np.abs(q - q[0])) < 1e-6 * np.max(np.abs(q[0]))
    e = classical.energy(traj.states, params)
    assert np.max(np.abs(e - e[0])) < 1e-8
    assert classical.measure_frequency(traj.t, traj.states[:, 2]) == pytest.approx(d.effective_frequency, rel=1e-6)


def test_electric_field_drift():
    # with E the guiding centre drifts at E x B / B^2
    params = ModelParams(theta=0.2)
    field = (0.1, 0.0)
    d = derive(params)
    period = 2 * math.pi / d.effective_frequency
    traj = classical.integrate(PhaseSpacePoint(0, 0, 0, 0), params, field, dt=period / 400, steps=4000)
    drift = (traj.states[-1, :2] - traj.states[0, :2]) / (traj.t[-1] - traj.t[0])
    assert drift == pytest.approx([0.0, -0.1], abs=1e-9)


def test_charge_algebra_report(params, rng):
    pts = [PhaseSpacePoint(*rng.uniform(-2, 2, 4), t=rng.uniform(0, 3)) for _ in range(25)]
    rep = classical.verify_charge_algebra(params, pts)
    assert rep.passed and rep.checked == 25 * 6
    assert classical.expected_charge_algebra(params)["{P1,P2}"] == pytest.approx(-params.eb)


def test_integrate_validates_arguments(params):
    pt = PhaseSpacePoint(0, 0, 1, 0)
    with pytest.raises(ParameterError):
        classical.integrate(pt, params, dt=-1.0)
    with pytest.raises(ParameterError):
        classical.integrate(pt, params, steps=0)
    with pytest.raises(ParameterError):
        PhaseSpacePoint(math.inf, 0, 0, 0)


def test_measure_frequency_needs_crossings():
    with pytest.raises(ParameterError):
        classical.measure_frequency(np.linspace(0, 1, 10), np.ones(10))
