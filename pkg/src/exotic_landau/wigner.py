"""Weyl operators, the Wigner transform and the Hermite relabeling maps.

``U(x, y)`` acts on ``L^2(R)`` as ``phi(s) -> exp(-i x (s - y/2)) phi(s - y)``.
Operators on ``L^2(R)`` are truncated to the span of the Hermite functions
``psi_0 .. psi_kmax`` and stored as coefficient matrices ``X[k, l]`` of
``|psi_k><psi_l|``.
"""
from dataclasses import dataclass
from functools import cached_property
import itertools
import math

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from . import kernels
from .exceptions import ParameterError
from .numerics import gauss_laguerre, gauss_legendre


@dataclass(frozen=True)
class HermiteBasis:
    """First ``k_max + 1`` orthonormal Hermite functions on a uniform grid."""

    k_max: int = 12
    half_width: float = 12.0
    step: float = 0.05

    def __post_init__(self):
        if int(self.k_max) != self.k_max or self.k_max < 0:
            raise ParameterError(f"k_max must be a non-negative integer, got {self.k_max!r}")

    @cached_property
    def nodes(self):
        n = int(round(2 * self.half_width / self.step))
        return np.linspace(-self.half_width, self.half_width, n + 1)

    @cached_property
    def weights(self):
        # trapezoid; the end points carry negligible mass
        w = np.full(self.nodes.size, self.step)
        w[0] = w[-1] = 0.5 * self.step
        return w

    @cached_property
    def values(self):
        return kernels.hermite_table(self.k_max, self.nodes)

    def gram(self):
        v = self.values
        return (v * self.weights) @ v.T


def weyl_matrix_element(k, l, x, y, basis=None):
    """``<psi_k | U(x, y) psi_l>`` by quadrature on the basis grid."""
    basis = basis or HermiteBasis(max(k, l))
    if max(k, l) > basis.k_max:
        raise ParameterError(f"indices ({k}, {l}) exceed k_max = {basis.k_max}")
    s = basis.nodes
    shifted = kernels.hermite_table(max(k, l), s - y)[l]
    integrand = basis.values[k] * np.exp(-1j * x * (s - 0.5 * y)) * shifted
    return complex(np.sum(basis.weights * integrand))


def weyl_matrix_closed(k, l, x, y):
    """Displacement-operator form ``<k|D(a)|l>`` with ``a = (y - i x)/sqrt 2``."""
    a = (y - 1j * x) / math.sqrt(2.0)
    a2 = abs(a) ** 2
    if k >= l:
        pref = math.exp(0.5 * (gammaln(l + 1) - gammaln(k + 1)))
        return complex(pref * a ** (k - l) * math.exp(-0.5 * a2) * eval_genlaguerre(l, k - l, a2))
    pref = math.exp(0.5 * (gammaln(k + 1) - gammaln(l + 1)))
    return complex(pref * (-np.conj(a)) ** (l - k) * math.exp(-0.5 * a2) * eval_genlaguerre(k, l - k, a2))


def weyl_grid(basis, xs, ys):
    """All ``<psi_k | U(x, y) psi_l>``; shape ``(len(ys), len(xs), K, K)``."""
    return kernels.weyl_grid(basis.k_max, basis.nodes, basis.weights, np.asarray(xs, float), np.asarray(ys, float))


@dataclass(frozen=True)
class PhaseGrid:
    half_width: float = 14.0
    step: float = 0.2

    @cached_property
    def axis(self):
        n = int(round(2 * self.half_width / self.step))
        return np.linspace(-self.half_width, self.half_width, n + 1)

    @property
    def cell(self):
        return self.step * self.step


class WignerTransform:
    """The Wigner transform as a matrix from Hermite coefficients to grid samples."""

    def __init__(self, basis=None, grid=None):
        self.basis = basis or HermiteBasis()
        self.grid = grid or PhaseGrid()
        self._elements = None

    @property
    def elements(self):
        if self._elements is None:
            ax = self.grid.axis
            self._elements = weyl_grid(self.basis, ax, ax)
        return self._elements

    def __call__(self, x):
        """Grid values ``(2 pi)^{-1/2} Tr[U(x, y)^* X]``, indexed ``[y, x]``."""
        coeffs = x.coeffs if isinstance(x, B2Element) else np.asarray(x)
        return np.einsum("yxkl,kl->yx", np.conj(self.elements), coeffs) / math.sqrt(2 * math.pi)

    def matrix(self):
        """Transform matrix of shape ``(grid points, K*K)`` including the cell weight."""
        k = self.basis.k_max + 1
        m = np.conj(self.elements).reshape(-1, k * k) / math.sqrt(2 * math.pi)
        return m * self.grid.step

    def gram(self):
        """``W^dag W``; the identity when the transform is unitary."""
        m = self.matrix()
        return m.conj().T @ m

    def unitarity_deficit(self):
        g = self.gram()
        return float(np.max(np.abs(g - np.eye(g.shape[0]))))

    def inner(self, a, b):
        """``<W a, W b>`` on the phase-space grid."""
        wa, wb = self(a), self(b)
        return complex(np.sum(np.conj(wa) * wb) * self.grid.cell)

    def inverse(self, samples):
        """Adjoint of the truncated transform applied to grid samples."""
        k = self.basis.k_max + 1
        vec = self.matrix().conj().T @ (np.asarray(samples).reshape(-1) * self.grid.step)
        return B2Element(vec.reshape(k, k))


@dataclass(frozen=True)
class B2Element:
    """Hilbert-Schmidt operator ``sum X[k, l] |psi_k><psi_l|``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ParameterError(f"coefficients must be square, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def rank_one(cls, k, l, k_max):
        c = np.zeros((k_max + 1, k_max + 1), dtype=complex)
        c[k, l] = 1.0
        return cls(c)

    def inner(self, other):
        return complex(np.vdot(self.coeffs, other.coeffs))


def map_J(x):
    """Antiunitary ``|phi><psi| -> |psi><phi|``: the coefficient adjoint."""
    return B2Element(x.coeffs.conj().T)


def map_I(x):
    """``phi(s) conj(psi(t)) -> phi(s) psi(t)`` in the real Hermite basis.

    Returns the coefficient array of the product function on ``H (x) H``.
    """
    # Hermite functions are real, so conj(psi_l) = psi_l and only the labels change
    return np.array(x.coeffs, dtype=complex)


class HermiteRelabel:
    """``V``: ``|n, m, n~, m~)`` -> Hermite tensor ``Psi_{n, m, n~, m~}``, and its inverse."""

    def __init__(self, k_max):
        if int(k_max) != k_max or k_max < 0:
            raise ParameterError(f"k_max must be a non-negative integer, got {k_max!r}")
        self.k_max = int(k_max)
        self.dim = (self.k_max + 1) ** 4

    def forward(self, labels):
        """Flat index of the Hermite tensor ``Psi_{n, m, n~, m~}``."""
        n, m, nt, mt = labels
        k = self.k_max + 1
        for v in labels:
            if not 0 <= v <= self.k_max:
                raise ParameterError(f"label {labels} outside 0..{self.k_max}")
        return ((n * k + m) * k + nt) * k + mt

    def backward(self, index):
        if not 0 <= index < self.dim:
            raise ParameterError(f"index {index} outside 0..{self.dim - 1}")
        k = self.k_max + 1
        index, mt = divmod(index, k)
        index, nt = divmod(index, k)
        n, m = divmod(index, k)
        return (n, m, nt, mt)

    def matrix(self):
        """Matrix of ``V`` from the ket-bra ordering ``(n~, m~, m, n)`` to Hermite tensors."""
        v = np.zeros((self.dim, self.dim))
        k = self.k_max + 1
        for n, m, nt, mt in itertools.product(range(k), repeat=4):
            src = ((nt * k + mt) * k + m) * k + n
            v[self.forward((n, m, nt, mt)), src] = 1.0
        return v


def mapped_qvcs(label, k_max, params=None):
    """Coefficients of ``V`` applied to a QVCS: array ``[2, n, m, n~, m~]``.

    Rows ``n~, m~`` other than the label's own are zero; this is the state of
    one ``(j, n~, m~)`` sector written in the Hermite tensor basis.
    """
    from .fock import FockConfig, required_nmax
    from .vcs import TAIL_BOUND, build_qvcs

    # build at a truncation the tail guard accepts, then keep the first k_max + 1 levels
    need = required_nmax(2 * max(label.q.r, label.q_prime.r) ** 2, TAIL_BOUND)
    cfg = FockConfig(max(2, k_max, need, label.n_tilde, label.m_tilde))
    state = build_qvcs(label, cfg, params)
    k = k_max + 1
    out = np.zeros((2, k, k, k, k), dtype=complex)
    if label.n_tilde <= k_max and label.m_tilde <= k_max:
        block = state.coeffs[:k, :k, :]                 # [m, n, 2]
        out[:, :, :, label.n_tilde, label.m_tilde] = np.transpose(block, (2, 1, 0))
    return out


def _axis_integral(delta, sign, orders):
    """``int sin(phi) exp(sign * i delta t sigma(phi, eta)) dphi deta dt`` (2x2)."""
    n_phi, n_eta, n_t = orders
    phi, wphi = gauss_legendre(n_phi, 0.0, math.pi)
    eta = 2 * math.pi * np.arange(n_eta) / n_eta
    t = 2 * math.pi * np.arange(n_t) / n_t
    w_eta, w_t = 2 * math.pi / n_eta, 2 * math.pi / n_t
    cos_part = np.sum(np.cos(delta * t)) * w_t
    sin_part = np.sum(np.sin(delta * t)) * w_t
    # sigma averaged over the sphere with weight sin(phi)
    c = np.cos(phi)
    s = np.sin(phi)
    e = np.exp(1j * eta)
    sig = np.zeros((2, 2), dtype=complex)
    sig[0, 0] = np.sum(wphi * s * c) * n_eta * w_eta
    sig[1, 1] = -sig[0, 0]
    sig[0, 1] = np.sum(wphi * s * s) * np.sum(e) * w_eta
    sig[1, 0] = np.sum(wphi * s * s) * np.sum(np.conj(e)) * w_eta
    area = np.sum(wphi * s) * n_eta * w_eta
    return cos_part * area * np.eye(2) + sign * 1j * sin_part * sig


def angular_orthogonality(delta1, delta2, orders=(32, 16, 32)):
    """Six-fold angular integral of ``sin(phi) sin(phi') e^{-i d1 t sigma} e^{i d2 g sigma'}``.

    The integrand separates into two three-dimensional factors, each
    evaluated with Gauss-Legendre in the polar angle and trapezoid rules in
    the two periodic angles. Expected: ``64 pi^4 I`` at ``(0, 0)``, else 0.
    """
    if abs(delta1) > 10 or abs(delta2) > 10:
        raise ParameterError("|delta| must be <= 10")
    n_t = max(orders[2], 2 * max(abs(delta1), abs(delta2)) + 2)
    o = (orders[0], orders[1], n_t)
    return _axis_integral(delta1, -1, o) @ _axis_integral(delta2, +1, o)


def angular_orthogonality_brute(delta1, delta2, orders=(16, 8, 24)):
    """Same integral summed on the full tensor grid for each factor (no reduction)."""
    n_phi, n_eta, n_t = orders
    phi, wphi = gauss_legendre(n_phi, 0.0, math.pi)
    eta = 2 * math.pi * np.arange(n_eta) / n_eta
    t = 2 * math.pi * np.arange(n_t) / n_t
    w = wphi[:, None, None] * np.sin(phi)[:, None, None] * (2 * math.pi / n_eta) * (2 * math.pi / n_t)

    def factor(delta, sign):
        total = np.zeros((2, 2), dtype=complex)
        from .quaternion import exp_i_sigma

        for i, p in enumerate(phi):
            for a, e in enumerate(eta):
                for b, tt in enumerate(t):
                    total += w[i, 0, 0] * exp_i_sigma(sign * delta * tt, p, e)
        return total

    return factor(delta1, -1) @ factor(delta2, +1)


def angular_orthogonality_closed(delta1, delta2):
    return 64 * math.pi ** 4 * np.eye(2) if delta1 == 0 and delta2 == 0 else np.zeros((2, 2))


def appendix_moment(k, p, rule):
    """``4 int int exp(-(r^2 + rho^2)) r^(2k)/k! rho^(2p)/p! r dr rho drho``."""
    from .vcs import appendix_moment_value

    return appendix_moment_value(k, p, rule)


def _radial_pair(a, b, rule):
    """``2 int exp(-r^2) r^(a+b) / sqrt(a! b!) r dr`` (unity when ``a == b``)."""
    half = 0.5 * (a + b)
    return float(np.sum(rule.weights * np.exp(half * np.log(rule.nodes))) * math.exp(-0.5 * (gammaln(a + 1) + gammaln(b + 1))))


def mapped_resolution_check(k_max=4, radial_order=32, orders=(32, 16, 32)):
    """Deviation from the identity of the reconstructed resolution on a truncated block.

    For each pair of basis labels ``(n, m, n~, m~)`` and ``(n', m', n~', m~')``
    the reconstructed 2x2 block is the product over the two label pairs of the
    normalized angular integral and the radial moment factors, summed over
    ``j`` through the C^2 identity. Returns ``(max deviation, block matrix)``.
    """
    if k_max > 4:
        raise ParameterError("mapped resolution check is limited to k_max <= 4")
    rule = gauss_laguerre(radial_order)
    k = k_max + 1
    norm = 64 * math.pi ** 4
    ang = {}
    for d1 in range(-k_max, k_max + 1):
        for d2 in range(-k_max, k_max + 1):
            ang[d1, d2] = angular_orthogonality(d1, d2, orders) / norm
    rad = np.array([[_radial_pair(a, b, rule) for b in range(k)] for a in range(k)])
    labels = list(itertools.product(range(k), repeat=4))
    size = len(labels)
    full = np.zeros((2 * size, 2 * size), dtype=complex)
    for i, (n, m, nt, mt) in enumerate(labels):
        for j, (n2, m2, nt2, mt2) in enumerate(labels):
            block = ang[n - n2, m - m2] @ ang[nt - nt2, mt - mt2]
            radial = rad[n, n2] * rad[m, m2] * rad[nt, nt2] * rad[mt, mt2]
            full[2 * i: 2 * i + 2, 2 * j: 2 * j + 2] = block * radial
    dev = float(np.max(np.abs(full - np.eye(2 * size))))
    return dev, full
