"""Classical exotic Landau dynamics in a uniform magnetic and electric field.

Phase space is ``(x1, x2, p1, p2)`` with the deformed bracket

    {f, g} = (M/M*) [ grad_x f . grad_p g - grad_x g . grad_p f
                      + theta (f_x1 g_x2 - g_x1 f_x2)
                      + e B (f_p1 g_p2 - g_p1 f_p2) ]

The prefactor ``M/M*`` is what makes the bracket generate the flow
``M* xdot = p - M e theta eps E`` and ``pdot = e B eps xdot + e E``
(``eps^{12} = +1``).
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .exceptions import ParameterError
from .model import check_noncritical, derive

EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])


def rotation(alpha):
    """``R(alpha) = ((cos, -sin), (sin, cos))``."""
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class PhaseSpacePoint:
    x1: float
    x2: float
    p1: float
    p2: float
    t: float = 0.0

    def __post_init__(self):
        if not np.all(np.isfinite(self.as_array())) or not np.isfinite(self.t):
            raise ParameterError(f"phase-space point must be finite: {self}")

    def as_array(self):
        return np.array([self.x1, self.x2, self.p1, self.p2], dtype=float)

    @classmethod
    def from_array(cls, y, t=0.0):
        return cls(float(y[0]), float(y[1]), float(y[2]), float(y[3]), float(t))


@dataclass(frozen=True)
class Observable:
    """A phase-space function with its analytic gradient ``(d_x1, d_x2, d_p1, d_p2)``."""

    value: Callable
    gradient: Callable
    name: str = "f"

    def __call__(self, pt):
        return self.value(pt)

    def __mul__(self, other):
        return Observable(
            lambda pt: self.value(pt) * other.value(pt),
            lambda pt: self.value(pt) * np.asarray(other.gradient(pt))
            + other.value(pt) * np.asarray(self.gradient(pt)),
            f"{self.name}*{other.name}",
        )

    def finite_difference_gradient(self, pt, h=1e-6):
        y = pt.as_array()
        grad = np.empty(4)
        for i in range(4):
            step = np.zeros(4)
            step[i] = h
            hi = self.value(PhaseSpacePoint.from_array(y + step, pt.t))
            lo = self.value(PhaseSpacePoint.from_array(y - step, pt.t))
            grad[i] = (hi - lo) / (2 * h)
        return grad

    def self_test(self, pt, tol=1e-6):
        """True when the analytic gradient matches central differences at ``pt``."""
        analytic = np.asarray(self.gradient(pt), dtype=float)
        numeric = self.finite_difference_gradient(pt)
        return bool(np.all(np.abs(analytic - numeric) <= tol * np.maximum(1.0, np.abs(numeric))))


def coordinate(index):
    """Observable returning coordinate ``index`` of ``(x1, x2, p1, p2)``."""
    names = ("x1", "x2", "p1", "p2")
    unit = np.zeros(4)
    unit[index] = 1.0
    return Observable(lambda pt: pt.as_array()[index], lambda pt: unit.copy(), names[index])


X1, X2, P1, P2 = (coordinate(i) for i in range(4))


def poisson_bracket(f, g, pt, params):
    check_noncritical(params)
    df = np.asarray(f.gradient(pt), dtype=float)
    dg = np.asarray(g.gradient(pt), dtype=float)
    canonical = df[0] * dg[2] + df[1] * dg[3] - dg[0] * df[2] - dg[1] * df[3]
    theta_term = params.theta * (df[0] * dg[1] - dg[0] * df[1])
    field_term = params.eb * (df[2] * dg[3] - dg[2] * df[3])
    return float((canonical + theta_term + field_term) / params.gap)


def _affine_flow(params, field):
    """Matrix ``a`` and offset ``b`` with ``d/dt (x, p) = a @ (x, p) + b``."""
    check_noncritical(params)
    d = derive(params)
    m_eff, eb = d.effective_mass, params.eb
    e_vec = np.asarray(field, dtype=float)
    a = np.zeros((4, 4))
    a[0:2, 2:4] = np.eye(2) / m_eff
    a[2:4, 2:4] = eb * EPS / m_eff
    v_offset = -(params.mass * params.charge * params.theta / m_eff) * (EPS @ e_vec)
    b = np.concatenate([v_offset, eb * (EPS @ v_offset) + params.charge * e_vec])
    return a, b


def equations_of_motion(pt, params, field=(0.0, 0.0)):
    """Return ``(x1dot, x2dot, p1dot, p2dot)`` at ``pt`` for the uniform field ``field``."""
    a, b = _affine_flow(params, field)
    return tuple(float(v) for v in a @ pt.as_array() + b)


def energy(y, params, field=(0.0, 0.0)):
    """``p^2/(2M) - e E.x`` for states ``y`` of shape ``(..., 4)``."""
    y = np.asarray(y, dtype=float)
    e_vec = np.asarray(field, dtype=float)
    kinetic = (y[..., 2] ** 2 + y[..., 3] ** 2) / (2 * params.mass)
    return kinetic - params.charge * (y[..., 0] * e_vec[0] + y[..., 1] * e_vec[1])


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    states: np.ndarray

    def __len__(self):
        return self.t.size

    def __getitem__(self, i):
        return PhaseSpacePoint.from_array(self.states[i], self.t[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))


def integrate(pt0, params, field=(0.0, 0.0), dt=1e-3, steps=1000):
    """Fixed-step RK4 trajectory starting at ``pt0`` (``steps + 1`` samples)."""
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt!r}")
    if int(steps) != steps or steps < 1:
        raise ParameterError(f"steps must be a positive integer, got {steps!r}")
    a, b = _affine_flow(params, field)
    states = kernels.rk4_affine(a, b, pt0.as_array(), float(dt), int(steps))
    t = pt0.t + dt * np.arange(steps + 1)
    return Trajectory(t, states)


def conserved_arrays(t, states, params):
    """Vectorized ``(P1, P2, K1, K2)`` for zero electric field."""
    d = derive(params)
    states = np.atleast_2d(states)
    t = np.broadcast_to(np.asarray(t, dtype=float), states.shape[:1])
    x, p = states[:, 0:2], states[:, 2:4]
    eb = params.eb
    big_p = np.stack([p[:, 0] - eb * x[:, 1], p[:, 1] + eb * x[:, 0]], axis=1)
    c, s = np.cos(d.effective_frequency * t), np.sin(d.effective_frequency * t)
    scale = d.effective_mass / params.mass
    big_k = scale * np.stack([c * p[:, 0] - s * p[:, 1], s * p[:, 0] + c * p[:, 1]], axis=1)
    return np.concatenate([big_p, big_k], axis=1)


def conserved_quantities(pt, params):
    """``(P1, P2, K1, K2)`` at ``pt`` with no electric field.

    ``P = M*(xdot - w* eps x)`` and ``K = (M*^2/M) R(w* t) xdot``, with
    ``xdot`` taken from the equations of motion.
    """
    d = derive(params)
    xdot = np.array(equations_of_motion(pt, params)[:2])
    x = np.array([pt.x1, pt.x2])
    big_p = d.effective_mass * (xdot - d.effective_frequency * (EPS @ x))
    big_k = d.effective_mass ** 2 / params.mass * (rotation(d.effective_frequency * pt.t) @ xdot)
    return tuple(float(v) for v in np.concatenate([big_p, big_k]))


def charge_observables(params):
    """Observables ``P1, P2, K1, K2`` written in ``(x, p)`` for zero field."""
    d = derive(params)
    eb = params.eb
    w = d.effective_frequency
    scale = d.effective_mass / params.mass

    def k_grad(i):
        def grad(pt):
            r = rotation(w * pt.t)
            return np.array([0.0, 0.0, scale * r[i, 0], scale * r[i, 1]])

        return grad

    def k_val(i):
        return lambda pt: float(scale * (rotation(w * pt.t)[i] @ np.array([pt.p1, pt.p2])))

    return (
        Observable(lambda pt: pt.p1 - eb * pt.x2, lambda pt: np.array([0.0, -eb, 1.0, 0.0]), "P1"),
        Observable(lambda pt: pt.p2 + eb * pt.x1, lambda pt: np.array([eb, 0.0, 0.0, 1.0]), "P2"),
        Observable(k_val(0), k_grad(0), "K1"),
        Observable(k_val(1), k_grad(1), "K2"),
    )


@dataclass
class AlgebraReport:
    max_deviation: float
    worst: str
    worst_point: PhaseSpacePoint
    tolerance: float
    checked: int

    @property
    def passed(self):
        return self.max_deviation <= self.tolerance


def expected_charge_algebra(params):
    """Expected brackets keyed by pair name: ``{P1,P2} = -M* w*``, ``{K1,K2} = (1 - eB theta) M* w*``."""
    d = derive(params)
    mw = d.effective_mass * d.effective_frequency
    expected = {"{P1,P2}": -mw, "{K1,K2}": params.gap * mw}
    for i in (1, 2):
        for j in (1, 2):
            expected[f"{{P{i},K{j}}}"] = 0.0
    return expected


def verify_charge_algebra(params, sample_points, tol=1e-8):
    """Check the bracket algebra of ``P`` and ``K`` at every sample point."""
    obs = dict(zip(("P1", "P2", "K1", "K2"), charge_observables(params)))
    expected = expected_charge_algebra(params)
    worst = (-1.0, "", None)
    count = 0
    for pt in sample_points:
        for key, value in expected.items():
            a, b = key.strip("{}").split(",")
            got = poisson_bracket(obs[a], obs[b], pt, params)
            dev = abs(got - value)
            count += 1
            if dev > worst[0]:
                worst = (dev, key, pt)
    return AlgebraReport(worst[0], worst[1], worst[2], tol, count)


def measure_frequency(t, signal):
    """Angular frequency from linearly interpolated zero crossings of ``signal``."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(signal, dtype=float)
    idx = np.nonzero(np.signbit(s[:-1]) != np.signbit(s[1:]))[0]
    if idx.size < 3:
        raise ParameterError("need at least three zero crossings to measure a frequency")
    crossings = t[idx] - s[idx] * (t[idx + 1] - t[idx]) / (s[idx + 1] - s[idx])
    half_periods = crossings.size - 1
    return np.pi * half_periods / (crossings[-1] - crossings[0])
