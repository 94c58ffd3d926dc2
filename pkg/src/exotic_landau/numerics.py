"""Quadrature rules shared by every verification routine.

Radial integrals use the substitution ``u = r**2`` so that Gaussian factors
``exp(-r**2) r dr`` become the Gauss-Laguerre weight ``exp(-u) du / 2``.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import kernels
from .exceptions import NumericError, ParameterError

MAX_LAGUERRE_ORDER = 128
DEFAULT_RADIAL_ORDER = 64
DEFAULT_ANGULAR_ORDER = 128


@dataclass(frozen=True)
class RadialRule:
    """Gauss-Laguerre rule for the weight ``exp(-x)`` on ``[0, inf)``.

    ``log_weights`` is kept alongside ``weights`` because integrands that
    cancel the weight (``w * exp(x)``) need it to avoid underflow.
    """

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray

    def integrate(self, f):
        """Approximate ``int_0^inf exp(-x) f(x) dx``."""
        return np.sum(self.weights * f(self.nodes))


@dataclass(frozen=True)
class AngularRule:
    """Uniform trapezoid nodes on ``[0, 2*pi)``."""

    order: int
    nodes: np.ndarray
    weight: float


def _check_order(order, upper=None):
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise ParameterError(f"quadrature order must be an integer, got {order!r}")
    if order < 1 or (upper is not None and order > upper):
        bound = f"[1, {upper}]" if upper is not None else ">= 1"
        raise ParameterError(f"quadrature order {order} outside {bound}")
    return int(order)


@lru_cache(maxsize=None)
def _laguerre_nodes_weights(order):
    k = np.arange(order)
    diag = 2.0 * k + 1.0
    off = k[1:].astype(float)
    x = eigh_tridiagonal(diag, off, eigvals_only=True)
    for _ in range(100):
        step, _ = kernels.laguerre_newton(x, order)
        x = x - step
        if np.all(np.abs(step) <= 4 * np.finfo(float).eps * np.abs(x)):
            break
    _, log_c = kernels.laguerre_newton(x, order)
    log_w = -log_c
    # Christoffel weights are accurate node by node; the final rescale only
    # absorbs the last few ulps of the sum rule.
    log_w -= np.log(np.sum(np.exp(log_w)))
    x.setflags(write=False)
    log_w.setflags(write=False)
    w = np.exp(log_w)
    w.setflags(write=False)
    return x, w, log_w


def gauss_laguerre(order):
    """Return the ``order``-point Gauss-Laguerre rule (1 <= order <= 128).

    Nodes start from the eigenvalues of the Jacobi matrix and are polished by
    Newton iterations on the three-term recurrence; weights are the
    reciprocal Christoffel sums ``1 / sum_k L_k(x_i)**2``.
    """
    order = _check_order(order, MAX_LAGUERRE_ORDER)
    x, w, log_w = _laguerre_nodes_weights(order)
    return RadialRule(order, x, w, log_w)


def angular_rule(order):
    order = _check_order(order)
    nodes = 2.0 * np.pi * np.arange(order) / order
    nodes.setflags(write=False)
    return AngularRule(order, nodes, 2.0 * np.pi / order)


def trapezoid_periodic(f, order):
    """Trapezoid rule for ``int_0^{2 pi} f``; spectrally accurate for periodic ``f``."""
    rule = angular_rule(order)
    vals = np.asarray(f(rule.nodes), dtype=complex)
    if vals.ndim == 0:
        vals = np.full(rule.order, vals)
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        raise NumericError(f"non-finite integrand at angle {rule.nodes[i]!r}", node=rule.nodes[i])
    return complex(rule.weight * vals.sum())


def plane_nodes(radial_order=DEFAULT_RADIAL_ORDER, angular_order=DEFAULT_ANGULAR_ORDER):
    """Nodes ``z`` and weights ``W`` with ``sum(W * f(z)) ~ (1/pi) int f d^2z``.

    With ``u = |z|**2``: ``(1/pi) int f d^2z = (1/(2 pi)) int_0^{2pi} int_0^inf f du dtheta``.
    """
    rad = gauss_laguerre(radial_order)
    ang = angular_rule(angular_order)
    r = np.sqrt(rad.nodes)
    z = r[:, None] * np.exp(1j * ang.nodes)[None, :]
    radial_w = np.exp(rad.log_weights + rad.nodes)
    w = np.broadcast_to((radial_w / ang.order)[:, None], z.shape)
    return z, w


def integrate_complex_plane(f, radial_order=DEFAULT_RADIAL_ORDER, angular_order=DEFAULT_ANGULAR_ORDER):
    """Approximate ``(1/pi) int_C f(z) d^2z`` with ``d^2z = r dr dtheta``.

    ``f`` is called once on a 2-D array of complex nodes and must broadcast.
    Requires ``|f(z)| <= C exp((1 - eps) |z|**2)``.
    """
    z, w = plane_nodes(radial_order, angular_order)
    vals = np.asarray(f(z), dtype=complex)
    vals = np.broadcast_to(vals, z.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        idx = np.unravel_index(int(np.argmax(bad)), z.shape)
        raise NumericError(f"non-finite integrand at z = {z[idx]!r}", node=complex(z[idx]))
    return complex(np.sum(w * vals))


def gauss_hermite(order):
    """Gauss-Hermite nodes and weights for ``exp(-x**2)`` (thin wrapper)."""
    order = _check_order(order)
    return np.polynomial.hermite.hermgauss(order)


def gauss_legendre(order, a=-1.0, b=1.0):
    """Gauss-Legendre nodes and weights mapped to ``[a, b]``."""
    order = _check_order(order)
    x, w = np.polynomial.legendre.leggauss(order)
    half = 0.5 * (b - a)
    return half * x + 0.5 * (a + b), half * w
