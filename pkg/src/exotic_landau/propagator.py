"""Free-particle propagator on the noncommutative plane.

Short-time kernels are Gaussians ``A exp(-beta |z - z0|^2)`` with

    c    = (1 - e B theta) / (2 e B)
    beta = M theta / (M theta + i tau c)
    A    = c beta

Gaussians compose in closed form under the star product, so an ``n``-slice
path integral reduces to a fold of ``star_compose``.
"""
from dataclasses import dataclass
import math

import numpy as np

from .exceptions import ParameterError, SingularCompositionError
from .model import check_noncritical
from .numerics import gauss_hermite

SINGULAR_GUARD = 1e-14


@dataclass(frozen=True)
class GaussianKernel:
    """``K(z, z0) = prefactor * exp(-exponent * |z - z0|^2)``."""

    prefactor: complex
    exponent: complex

    def __post_init__(self):
        if not np.real(self.exponent) > 0:
            raise ParameterError(f"kernel exponent needs a positive real part, got {self.exponent!r}")

    def __call__(self, z, z0):
        d = np.asarray(z) - np.asarray(z0)
        return self.prefactor * np.exp(-self.exponent * np.abs(d) ** 2)

    def scaled(self, factor):
        return GaussianKernel(self.prefactor * factor, self.exponent)


@dataclass(frozen=True)
class MomentumLabel:
    """Dimensionless complex momentum ``p = sqrt(c) (p1 + i p2)``."""

    p: complex

    @classmethod
    def from_components(cls, p1, p2, params):
        return cls(complex(math.sqrt(momentum_scale(params)) * complex(p1, p2)))


def momentum_scale(params):
    """``c = (1 - e B theta) / (2 e B)``: the square of the momentum rescaling."""
    check_noncritical(params)
    if params.eb == 0:
        raise ParameterError("the momentum rescaling needs e*B != 0")
    c = params.gap / (2.0 * params.eb)
    if c <= 0:
        raise ParameterError(f"(1 - eB theta)/(2 eB) must be positive, got {c!r}")
    return c


def _require_theta(params):
    if not params.theta > 0:
        raise ParameterError(f"propagator constructions need theta > 0, got {params.theta!r}")


def cs_momentum_overlap(z, p, params):
    """``(z | p)`` for a coherent label ``z`` and dimensionless momentum ``p``.

    ``p`` may be a ``MomentumLabel``, a complex number or an array.
    """
    _require_theta(params)
    p = p.p if isinstance(p, MomentumLabel) else np.asarray(p, dtype=complex)
    hb, th = params.hbar, params.theta
    z = np.asarray(z, dtype=complex)
    amp = math.sqrt(th / (2 * math.pi * hb * hb)) * np.exp(-th * np.abs(p) ** 2 / (4 * hb * hb))
    return amp * np.exp(1j / hb * math.sqrt(th / 2) * (p * np.conj(z) + np.conj(p) * z))


def short_time_exponent(tau, params):
    """``beta(tau) = 2 M theta / (2 M theta + i tau (1/(e B) - theta))``."""
    _require_theta(params)
    check_noncritical(params)
    m, th = params.mass, params.theta
    return 2 * m * th / (2 * m * th + 1j * tau * (1.0 / params.eb - th))


def short_time_kernel(tau, params):
    """Kernel of ``exp(-i tau H)`` between coherent labels over one slice.

    ``A = M theta / (2 e M B theta / (1 - e B theta) + i tau)``.
    """
    if not tau > 0:
        raise ParameterError(f"tau must be positive, got {tau!r}")
    beta = short_time_exponent(tau, params)
    m, th = params.mass, params.theta
    a = m * th / (2 * params.eb * m * th / params.gap + 1j * tau)
    return GaussianKernel(complex(a), complex(beta))


def slice_phase_energy(p, params):
    """Phase rate ``c |p|^2 / (2 M)`` that turns the momentum integral into the kernel above."""
    return momentum_scale(params) * np.abs(p) ** 2 / (2 * params.mass)


def short_time_kernel_quadrature(z_next, z_prev, tau, params, order=160):
    """``c * int d^2p (z_next | e^{-i tau H} | p)(p | z_prev)`` by tensor Gauss-Hermite.

    The Gaussian damping ``exp(-theta |p|^2 / 2)`` of the two overlaps is the
    Hermite weight after rescaling ``p`` by ``sqrt(2/theta)``.
    """
    _require_theta(params)
    c = momentum_scale(params)
    u, w = gauss_hermite(order)
    s = math.sqrt(2.0 / params.theta) * params.hbar
    p = s * (u[:, None] + 1j * u[None, :])
    ww = np.outer(w, w) * s * s
    damping = np.exp(-params.theta * np.abs(p) ** 2 / (2 * params.hbar ** 2))
    f = (
        cs_momentum_overlap(z_next, p, params)
        * np.conj(cs_momentum_overlap(z_prev, p, params))
        * np.exp(-1j * tau * slice_phase_energy(p, params) / params.hbar)
    )
    return complex(c * np.sum(ww * f / damping))


def gaussian_integral(a, b):
    """``int d^2p exp(-a |p|^2 + b p + conj(b) conj(p)) = (pi / a) exp(|b|^2 / a)``."""
    if not np.real(a) > 0:
        raise ParameterError("the Gaussian integral needs Re(a) > 0")
    return complex(math.pi / a * np.exp(abs(b) ** 2 / a))


def gaussian_integral_quadrature(a, b, order=80):
    """Same integral by Gauss-Hermite in the real and imaginary parts of ``p``."""
    s = 1.0 / math.sqrt(np.real(a))
    u, w = gauss_hermite(order)
    p = s * (u[:, None] + 1j * u[None, :])
    resid = np.exp(-(a - np.real(a)) * np.abs(p) ** 2 + b * p + np.conj(b) * np.conj(p))
    return complex(np.sum(np.outer(w, w) * resid) * s * s)


def star_compose(k1, k2):
    """``int d^2z K1(z_out, z) * K2(z, z_in)`` with the star product.

    With ``gamma = beta2 / beta1`` and ``Lam = 1 + gamma - beta2`` the result
    has prefactor ``A1 A2 pi / (beta1 Lam)`` and exponent ``beta1 gamma / Lam``.
    """
    b1, b2 = complex(k1.exponent), complex(k2.exponent)
    gamma = b2 / b1
    lam = 1.0 + gamma - b2
    if abs(lam) < SINGULAR_GUARD:
        raise SingularCompositionError(f"Lambda = 1 + gamma - beta2 vanishes ({lam!r})")
    return GaussianKernel(k1.prefactor * k2.prefactor * math.pi / (b1 * lam), b1 * gamma / lam)


def star_compose_quadrature(k1, k2, z_out, z_in, order=48):
    """Numeric star composition through the auxiliary ``v`` representation.

    ``f * g = int d^2v/pi exp(-|v|^2) f(zbar + vbar) g(z + v)``: the left kernel
    has its ``conj(z)`` argument shifted by ``conj(v)``, the right kernel its
    ``z`` argument by ``v``. Both ``z`` and ``v`` integrals use Gauss-Hermite.
    """
    b1, b2 = complex(k1.exponent), complex(k2.exponent)
    u, w = gauss_hermite(order)
    ww = np.outer(w, w).ravel()
    grid = (u[:, None] + 1j * u[None, :]).ravel()
    v = grid[:, None]
    # z integral: scale to the combined real width and centre between the endpoints
    s = 1.0 / math.sqrt(np.real(b1 + b2))
    centre = (b1 * z_out + b2 * z_in) / (b1 + b2)
    z = centre + s * grid[None, :]
    left = np.exp(-b1 * (z_out - z) * (np.conj(z_out) - np.conj(z) - np.conj(v)))
    right = np.exp(-b2 * (z + v - z_in) * (np.conj(z) - np.conj(z_in)))
    residual = np.exp(np.abs(z - centre) ** 2 / (s * s))
    inner = np.sum(left * right * residual * ww[None, :], axis=1) * s * s
    total = np.sum(ww * inner) / math.pi
    return complex(k1.prefactor * k2.prefactor * total)


def normalized_kernel(tau, params):
    """Slice kernel with prefactor equal to its exponent (``A = beta``)."""
    beta = short_time_exponent(tau, params)
    return GaussianKernel(complex(beta), complex(beta))


def compose_slices(kernels_, measure=1.0):
    """Fold ``star_compose`` over ``kernels_``, multiplying by ``measure`` per integral."""
    it = iter(kernels_)
    acc = next(it)
    for k in it:
        acc = star_compose(acc, k).scaled(measure)
    return acc


def closed_form_propagator(z_f, z_0, T, params):
    """``(c/theta) beta(T) exp(-beta(T) |z_f - z_0|^2)``."""
    c = momentum_scale(params)
    beta = short_time_exponent(T, params)
    return complex(c / params.theta * beta * np.exp(-beta * abs(complex(z_f) - complex(z_0)) ** 2))


@dataclass(frozen=True)
class PropagatorResult:
    value: complex
    kernel: GaussianKernel
    literal_value: complex
    literal_factor: complex


def full_propagator(z_f, z_0, T, n_slices, params, detail=False):
    """Path-integral propagator from ``n_slices`` intermediate integrations.

    ``n_slices + 1`` slices of length ``tau = T / (n_slices + 1)`` are composed
    with unit-normalized kernels (``A = beta``) and a ``1/pi`` measure per
    integral; the overall constant ``c/theta`` is applied once. Composing the
    slice prefactors ``A = c beta`` with the ``(1/pi^2)^n / theta`` measure
    instead differs by ``(c/pi)^n``, reported as ``literal_factor``.
    """
    if int(n_slices) != n_slices or n_slices < 1:
        raise ParameterError(f"n_slices must be a positive integer, got {n_slices!r}")
    if not T > 0:
        raise ParameterError(f"T must be positive, got {T!r}")
    c = momentum_scale(params)
    tau = T / (n_slices + 1)
    k = normalized_kernel(tau, params)
    composed = compose_slices([k] * (n_slices + 1), measure=1.0 / math.pi)
    total = composed.scaled(c / params.theta)
    value = complex(total(z_f, z_0))
    raw = compose_slices([short_time_kernel(tau, params)] * (n_slices + 1))
    literal = raw.scaled((1.0 / math.pi ** 2) ** n_slices / params.theta)
    literal_value = complex(literal(z_f, z_0))
    result = PropagatorResult(value, total, literal_value, literal.prefactor / total.prefactor)
    return result if detail else value


def proof_normalized_kernel(tau, params):
    """Kernel with prefactor ``sqrt(c) beta``, the normalization fed into the two-slice composition."""
    beta = short_time_exponent(tau, params)
    return GaussianKernel(complex(math.sqrt(momentum_scale(params)) * beta), complex(beta))


def two_slice_closed_form(tau, params):
    """``pi M theta / (2 e M B theta/(1 - eB theta) + 2 i tau)`` and exponent ``beta`` at ``2 tau``."""
    m, th = params.mass, params.theta
    pref = math.pi * m * th / (2 * params.eb * m * th / params.gap + 2j * tau)
    return GaussianKernel(complex(pref), complex(short_time_exponent(2 * tau, params)))
