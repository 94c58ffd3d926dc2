"""Scalar coherent states ``|z, conj(z'); m)`` on the truncated ket-bra space.

The state with labels ``(z, z', m, eta)`` has a single non-zero row ``m``:

    c[m, n] = exp(-(|z|^2 + |z'|^2)/2) conj(z')^m z^n exp(-i eta n) / sqrt(m! n!)

so summing the family over ``m`` gives a rank-one coefficient matrix.
"""
from dataclasses import dataclass, replace
import math

import numpy as np

from .exceptions import ParameterError, TruncationError
from .fock import (
    FockConfig,
    HSOperator,
    apply_hamiltonian,
    hs_inner,
    poisson_tail,
    required_nmax,
)
from .model import derive
from .numerics import DEFAULT_ANGULAR_ORDER, DEFAULT_RADIAL_ORDER, plane_nodes

TAIL_BOUND = 1e-12


@dataclass(frozen=True)
class CSLabel:
    z: complex
    z_prime: complex = 0.0
    m: int = 0
    eta: float = 0.0

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise ParameterError(f"m must be a non-negative integer, got {self.m!r}")


def poisson_weight(lam_sqrt_abs, k):
    """``exp(-x^2) x^(2k) / k!`` for ``x = lam_sqrt_abs`` (scalar or array ``k``)."""
    x2 = float(lam_sqrt_abs) ** 2
    k = np.asarray(k)
    if x2 == 0.0:
        return np.where(k == 0, 1.0, 0.0)
    from scipy.special import gammaln

    return np.exp(-x2 + k * math.log(x2) - gammaln(k + 1))


def coherent_vector(z, dim, eta=0.0):
    """``exp(-|z|^2/2) (z e^{-i eta})^n / sqrt(n!)`` for ``n < dim``, by recurrence."""
    z = complex(z) * np.exp(-1j * eta)
    v = np.empty(dim, dtype=complex)
    v[0] = math.exp(-0.5 * abs(z) ** 2)
    for n in range(1, dim):
        v[n] = v[n - 1] * z / math.sqrt(n)
    return v


def _coherent_vectors(z, dim):
    """Vectorized ``coherent_vector`` for an array of labels; shape ``z.shape + (dim,)``."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape + (dim,), dtype=complex)
    out[..., 0] = np.exp(-0.5 * np.abs(z) ** 2)
    for n in range(1, dim):
        out[..., n] = out[..., n - 1] * z / math.sqrt(n)
    return out


def check_tail(lam, cfg, what="|z|^2"):
    tail = poisson_tail(lam, cfg.n_max)
    if tail >= TAIL_BOUND:
        need = required_nmax(lam, TAIL_BOUND)
        raise TruncationError(
            f"{what} = {lam:.6g} loses Poisson mass {tail:.3g} at n_max = {cfg.n_max}; need n_max >= {need}",
            tail=tail,
            required_nmax=need,
        )
    return tail


def build_cs(label, cfg):
    """Coefficient matrix of the single state ``|z, conj(z'); m)`` with eta dressing."""
    check_tail(abs(label.z) ** 2, cfg, "|z|^2")
    if label.m > cfg.n_max:
        raise TruncationError(f"m = {label.m} exceeds n_max = {cfg.n_max}", required_nmax=label.m)
    row = coherent_vector(label.z, cfg.dim, label.eta)
    zp = complex(label.z_prime)
    amp = math.exp(-0.5 * abs(zp) ** 2) * np.conj(zp) ** label.m / math.sqrt(math.factorial(label.m))
    c = np.zeros((cfg.dim, cfg.dim), dtype=complex)
    c[label.m] = amp * row
    return HSOperator(c)


def build_family(z, z_prime, cfg, eta=0.0):
    """``sum_m |z, conj(z'); m)``: all rows ``m <= n_max`` filled."""
    check_tail(abs(z) ** 2, cfg, "|z|^2")
    check_tail(abs(z_prime) ** 2, cfg, "|z'|^2")
    rows = coherent_vector(np.conj(z_prime), cfg.dim)
    cols = coherent_vector(z, cfg.dim, eta)
    return HSOperator(np.outer(rows, cols))


def normalization(z, z_prime, cfg):
    """``sum_m (z, conj(z'); m | z, conj(z'); m)``; the rows are orthogonal."""
    total = 0.0
    for m in range(cfg.dim):
        s = build_cs(CSLabel(z, z_prime, m), cfg)
        total += hs_inner(s, s).real
    return total


def overlap(a, b, cfg):
    """Numeric ``(a | b)`` of two built states."""
    return hs_inner(build_cs(a, cfg), build_cs(b, cfg))


def overlap_closed_form(a, b):
    """Closed form of ``(a | b)`` for untruncated states.

    Reduces to ``exp(-|z'|^2) |z'|^(2m)/m! exp(-(|z|^2+|z0|^2)/2) exp(z0 conj(z))``
    when both labels share ``m``, ``z'`` and ``eta``.
    """
    if a.m != b.m:
        return 0.0j
    za, zb = complex(a.z), complex(b.z)
    pa, pb = complex(a.z_prime), complex(b.z_prime)
    m_part = math.exp(-0.5 * (abs(pa) ** 2 + abs(pb) ** 2)) * (pa * np.conj(pb)) ** a.m / math.factorial(a.m)
    phase = np.exp(1j * (a.eta - b.eta))
    n_part = np.exp(-0.5 * (abs(za) ** 2 + abs(zb) ** 2) + np.conj(za) * zb * phase)
    return complex(m_part * n_part)


@dataclass(frozen=True)
class ContinuityResult:
    numeric: float
    closed_form: float
    state_distance: float


def _projector(v):
    return HSOperator(np.outer(v, np.conj(v)))


def continuity_distance(z, z1, z2, m, cfg):
    """Distance between the labels ``(z, z1)`` and ``(z1, z2)`` at fixed ``m``.

    ``numeric`` is the squared Hilbert-Schmidt distance between the rank-one
    products ``|z><z| (x) |conj z1><conj z1|`` and ``|z1><z1| (x) |conj z2><conj z2|``,
    built from ``hs_inner`` on the truncated space; it equals
    ``2 (1 - exp(-|z - z1|^2) exp(-|z1 - z2|^2))``.
    ``state_distance`` is the plain squared distance of the two states at row ``m``.
    """
    for w in (z, z1, z2):
        check_tail(abs(w) ** 2, cfg, "|label|^2")
    dim = cfg.dim
    pz, pz1 = _projector(coherent_vector(z, dim)), _projector(coherent_vector(z1, dim))
    qz1 = _projector(coherent_vector(np.conj(z1), dim))
    qz2 = _projector(coherent_vector(np.conj(z2), dim))
    # ||p (x) q - r (x) s||^2 expands into products of single-factor traces
    norm_a = hs_inner(pz, pz).real * hs_inner(qz1, qz1).real
    norm_b = hs_inner(pz1, pz1).real * hs_inner(qz2, qz2).real
    cross = (hs_inner(pz, pz1) * hs_inner(qz1, qz2)).real
    numeric = norm_a + norm_b - 2.0 * cross
    closed = 2.0 * (1.0 - math.exp(-abs(z - z1) ** 2) * math.exp(-abs(np.conj(z1) - np.conj(z2)) ** 2))
    sa = build_cs(CSLabel(z, z1, m), cfg)
    sb = build_cs(CSLabel(z1, z2, m), cfg)
    diff = sa - sb
    return ContinuityResult(float(numeric), float(closed), diff.norm2())


@dataclass(frozen=True)
class ResolutionResult:
    max_deviation: float
    m_weights: np.ndarray
    n_block: np.ndarray
    checked_up_to: int

    def entry(self, m1, n1, m2, n2):
        """Matrix element ``[(m1, n1), (m2, n2)]`` of the reconstructed operator."""
        if m1 != m2:
            return 0.0j
        return complex(self.m_weights[m1] * self.n_block[n1, n2])


def resolution_check(cfg, radial_order=DEFAULT_RADIAL_ORDER, angular_order=DEFAULT_ANGULAR_ORDER, eta=0.0):
    """Rebuild ``(1/pi^2) sum_m int int |z, conj z'; m)(z, conj z'; m| d^2z d^2z'``.

    Each family member occupies a single row ``m``, so the operator is block
    diagonal in ``m`` with block ``a_m * b[n1, n2]``; ``a`` and ``b`` are
    separate plane quadratures over ``z'`` and ``z``.
    Returns the max deviation from the identity over indices ``<= n_max // 2``.
    """
    nodes, weights = plane_nodes(radial_order, angular_order)
    z = nodes.ravel()
    w = weights.ravel()
    vz = _coherent_vectors(z * np.exp(-1j * eta), cfg.dim)
    b = (vz * w[:, None]).T @ np.conj(vz)
    vzp = _coherent_vectors(np.conj(z), cfg.dim)
    a = np.real(np.sum(w[:, None] * np.abs(vzp) ** 2, axis=0))
    k = cfg.n_max // 2
    dev_m = np.max(np.abs(a[: k + 1] - 1.0))
    dev_n = np.abs(b[: k + 1, : k + 1] - np.eye(k + 1))
    # block entries a_m * b[n1, n2] - delta; product form bounds the error
    full = np.abs(a[: k + 1, None, None] * b[None, : k + 1, : k + 1] - np.eye(k + 1)[None])
    dev = float(max(full.max(), dev_m, dev_n.max()))
    return ResolutionResult(dev, a, b, k)


def evolve(label, t, params=None):
    """Shift ``eta`` by ``w* t`` (physical time) or by ``t`` when ``params`` is None."""
    shift = t if params is None else derive(params).effective_frequency * t
    return replace(label, eta=label.eta + shift)


@dataclass(frozen=True)
class ActionResult:
    brute_force: float
    expected: float
    printed: float
    m_tail: float


def action_expectation(label, params, cfg):
    """``sum_m (..| H - hbar w*/2 |..)`` by brute force over the truncated basis.

    ``expected`` is ``hbar w* |z|^2`` (the value of the sum); ``printed`` is
    ``hbar w* |z|``, which only coincides at ``|z| in {0, 1}``.
    """
    d = derive(params)
    m_tail = check_tail(abs(label.z_prime) ** 2, cfg, "|z'|^2")
    total = 0.0
    for m in range(cfg.dim):
        s = build_cs(replace(label, m=m), cfg)
        total += hs_inner(s, apply_hamiltonian(s, params, shifted=True)).real
    scale = params.hbar * d.effective_frequency
    return ActionResult(total, scale * abs(label.z) ** 2, scale * abs(label.z), m_tail)


def meijer_g_1001(w):
    """``G^{1,0}_{0,1}(w | 0)`` from its residue series ``sum_k (-w)^k / k!``.

    The series is summed with exact rounding (``math.fsum``) on real and
    imaginary parts; analytically it equals ``exp(-w)``.
    """
    w = complex(w)
    if w == 0:
        return 1.0 + 0.0j
    re, im = [1.0], [0.0]
    term = 1.0 + 0.0j
    k = 0
    while True:
        k += 1
        term *= -w / k
        re.append(term.real)
        im.append(term.imag)
        if abs(term) < 1e-18 * max(1.0, abs(sum(re))) and k > abs(w):
            break
    return complex(math.fsum(re), math.fsum(im))


def _density_prefactor(z_prime, m):
    return poisson_weight(abs(z_prime), m) ** 2


def density(z0, z, z_prime, m, t, params):
    """Probability density ``|(z, conj z'; m| exp(-i H t) |z0, conj z'; m)|^2``.

    ``H`` is the shifted Hamiltonian with spectrum ``w* n``; ``z0(t) = z0 exp(-i w* t)``.
    Vectorized over ``z`` and ``t``.
    """
    w = derive(params).effective_frequency
    z = np.asarray(z, dtype=complex)
    z0t = complex(z0) * np.exp(-1j * w * np.asarray(t, dtype=float))
    expo = 2.0 * np.real(z0t * np.conj(z)) - np.abs(z) ** 2 - np.abs(z0t) ** 2
    out = _density_prefactor(z_prime, m) * np.exp(expo)
    return float(out) if np.ndim(out) == 0 else out


def density_meijer(z0, z, z_prime, m, t, params):
    """Same density evaluated as a ratio of three Meijer G^{1,0}_{0,1} factors (scalar)."""
    w = derive(params).effective_frequency
    z = complex(z)
    z0t = complex(z0) * np.exp(-1j * w * t)
    num = meijer_g_1001(-np.conj(z0t) * z) * meijer_g_1001(-z0t * np.conj(z))
    den = meijer_g_1001(-(abs(z) ** 2 + abs(z0t) ** 2))
    return float((_density_prefactor(z_prime, m) * num / den).real)


def rotated_label(z0, t, params):
    """``z0(t) = z0 exp(-i w* t)``."""
    return complex(z0) * np.exp(-1j * derive(params).effective_frequency * t)


@dataclass(frozen=True)
class PhotonStatistics:
    table: np.ndarray
    mean: float
    variance: float
    mandel_q: float
    total: float


def pnd_and_mandel(z, z_prime, m_range, n_range):
    """Photon-number table ``P(m, n)`` and the Mandel parameter of the ``n`` marginal.

    ``mandel_q`` is NaN when the mean vanishes (vacuum).
    """
    m = np.asarray(list(m_range))
    n = np.asarray(list(n_range))
    table = np.outer(poisson_weight(abs(z_prime), m), poisson_weight(abs(z), n))
    marginal = table.sum(axis=0) / table.sum()
    mean = float(np.dot(n, marginal))
    var = float(np.dot(n * n, marginal) - mean * mean)
    q = (var - mean) / mean if mean > 0 else float("nan")
    return PhotonStatistics(table, mean, var, q, float(table.sum()))


def default_config():
    return FockConfig(64)
