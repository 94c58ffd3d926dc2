"""Vector and quaternionic vector coherent states on C^2 (x) H_q (x) H_q.

A state is labelled by ``(Q, Q', j, n~, m~, eta)``; its component on
``chi^j (x) |n~><m~| (x) |m><n|`` is the 2-vector

    N^{-1/2} Q^n conj(Q')^m conj(Q)^{n~} Q'^{m~} / sqrt(n! m! n~! m~!) e^{-i eta E_n} chi^j

with ``N(r, rho) = 2 exp(2 (r^2 + rho^2))``. Sums over ``(j, n~, m~)`` are
carried out by the checking routines.
"""
from dataclasses import dataclass, replace
import math

import numpy as np
from scipy.special import gammaln

from .exceptions import ParameterError, TruncationError
from .fock import FockConfig, poisson_tail, required_nmax
from .model import derive
from .numerics import gauss_laguerre
from .quaternion import I2, Quaternion, make, power_table

TAIL_BOUND = 1e-12
CHI = (np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex))


def _inv_sqrt_factorials(n_max):
    return np.exp(-0.5 * gammaln(np.arange(n_max + 1) + 1.0))


def _check_tail(lam, cfg, what):
    # sums of the form sum_n x^(2n)/n! exp(-2 x^2)-weighted: the tail relative to exp(x^2)
    tail = poisson_tail(lam, cfg.n_max)
    if tail >= TAIL_BOUND:
        need = required_nmax(lam, TAIL_BOUND)
        raise TruncationError(
            f"{what} = {lam:.6g} needs n_max >= {need} (have {cfg.n_max})", tail=tail, required_nmax=need
        )


@dataclass(frozen=True)
class VCSLabel:
    """Diagonal labels ``Z = diag(z1, z2)`` and ``conj(Z') = diag(zb1', zb2')``.

    ``z_j = r_j e^{-i theta_j}`` and ``zb_j' = rho_j e^{i phi_j}``.
    """

    z: tuple
    zbar_prime: tuple
    j: int = 1
    n_tilde: int = 0
    m_tilde: int = 0
    eta: float = 0.0

    @classmethod
    def polar(cls, r, theta, rho, phi, **kw):
        z = tuple(complex(rr * np.exp(-1j * t)) for rr, t in zip(r, theta))
        zb = tuple(complex(p * np.exp(1j * a)) for p, a in zip(rho, phi))
        return cls(z, zb, **kw)


def vcs_normalization(label):
    """``exp(2 (r1^2 + rho1^2)) + exp(2 (r2^2 + rho2^2))``."""
    return sum(math.exp(2.0 * (abs(z) ** 2 + abs(zb) ** 2)) for z, zb in zip(label.z, label.zbar_prime))


def vcs_normalization_bruteforce(label, cfg):
    """Sum of squared components over ``j``, ``n~``, ``m~``, ``m``, ``n`` on the truncated basis."""
    for z, zb in zip(label.z, label.zbar_prime):
        _check_tail(2 * abs(z) ** 2, cfg, "2|z|^2")
        _check_tail(2 * abs(zb) ** 2, cfg, "2|z'|^2")
    f = _inv_sqrt_factorials(cfg.n_max)
    k = np.arange(cfg.dim)
    total = []
    for z, zb in zip(label.z, label.zbar_prime):
        zn = z ** k * f                    # Z^n / sqrt(n!)
        zbm = zb ** k * f                  # conj(Z')^m / sqrt(m!)
        zbnt = np.conj(z) ** k * f         # conj(Z)^n~ / sqrt(n~!)
        zpmt = np.conj(zb) ** k * f        # Z'^m~ / sqrt(m~!)
        inner = np.outer(zbm, zn)          # (m, n) block for fixed (n~, m~)
        block = np.sum(np.abs(inner) ** 2)
        for nt in range(cfg.dim):
            total.append(block * np.sum(np.abs(zbnt[nt] * zpmt) ** 2))
    return math.fsum(total)


@dataclass(frozen=True)
class QVCSLabel:
    q: Quaternion
    q_prime: Quaternion
    j: int = 1
    n_tilde: int = 0
    m_tilde: int = 0
    eta: float = 0.0

    def __post_init__(self):
        if self.j not in (1, 2):
            raise ParameterError(f"j must be 1 or 2, got {self.j!r}")
        for name in ("n_tilde", "m_tilde"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ParameterError(f"{name} must be a non-negative integer, got {v!r}")


def qvcs_normalization(r, rho):
    """``N(r, rho) = 2 exp(2 (r^2 + rho^2))``."""
    return 2.0 * math.exp(2.0 * (r * r + rho * rho))


@dataclass(frozen=True)
class QVCSState:
    """Components ``coeffs[m, n]`` (2-vectors) of one ``(j, n~, m~)`` sector."""

    coeffs: np.ndarray
    label: QVCSLabel

    @property
    def n_max(self):
        return self.coeffs.shape[0] - 1

    def norm2(self):
        return float(np.sum(np.abs(self.coeffs) ** 2))


def _energies(n_max, params):
    w = 1.0 if params is None else derive(params).effective_frequency
    return w * np.arange(n_max + 1)


def _sector_matrices(label, cfg, params=None):
    """``M[m, n] = N^{-1/2} Q^n conj(Q')^m / sqrt(n! m!) e^{-i eta E_n}`` and the right factor."""
    r, rho = label.q.r, label.q_prime.r
    _check_tail(2 * r * r, cfg, "2 r^2")
    _check_tail(2 * rho * rho, cfg, "2 rho^2")
    f = _inv_sqrt_factorials(cfg.n_max)
    qn = power_table(label.q, cfg.n_max) * f[:, None, None]
    qpb = power_table(label.q_prime.bar, cfg.n_max) * f[:, None, None]
    phase = np.exp(-1j * label.eta * _energies(cfg.n_max, params))
    left = np.einsum("nab,mbc,n->mnac", qn, qpb, phase)
    return left / math.sqrt(qvcs_normalization(r, rho)), f


def _right_factor(label, f):
    qb = np.linalg.matrix_power(label.q.bar.mat, label.n_tilde)
    qp = np.linalg.matrix_power(label.q_prime.mat, label.m_tilde)
    return qb @ qp * f[label.n_tilde] * f[label.m_tilde] if label.n_tilde < f.size and label.m_tilde < f.size else None


def build_qvcs(label, cfg, params=None):
    """Components of the state in the sector ``(j, n~, m~)`` of ``label``.

    ``E_n = w* n`` when ``params`` is given and ``n`` otherwise (dimensionless time).
    """
    if label.n_tilde > cfg.n_max or label.m_tilde > cfg.n_max:
        raise TruncationError("n~ or m~ exceeds n_max", required_nmax=max(label.n_tilde, label.m_tilde))
    left, f = _sector_matrices(label, cfg, params)
    right = _right_factor(label, f)
    coeffs = np.einsum("mnab,bc,c->mna", left, right, CHI[label.j - 1])
    return QVCSState(coeffs, label)


def _all_sector_vectors(label, cfg, params=None, j=None):
    """Components for every ``(n~, m~)``: array ``[n~, m~, m, n, 2]`` for one ``j``."""
    left, f = _sector_matrices(label, cfg, params)
    qb = power_table(label.q.bar, cfg.n_max) * f[:, None, None]
    qp = power_table(label.q_prime, cfg.n_max) * f[:, None, None]
    right = np.einsum("sab,tbc->stac", qb, qp)
    chi = CHI[(label.j if j is None else j) - 1]
    right_chi = right @ chi                       # [n~, m~, 2]
    return left, right_chi


def qvcs_norm_bruteforce(label, cfg, params=None):
    """``sum_j sum_{n~, m~} (state | state)`` on the truncated basis."""
    total = []
    for j in (1, 2):
        left, right_chi = _all_sector_vectors(label, cfg, params, j)
        for nt in range(cfg.dim):
            vec = np.einsum("mnab,tb->tmna", left, right_chi[nt])
            total.append(float(np.sum(np.abs(vec) ** 2)))
    return math.fsum(total)


def moment_integrand_log(u, v, n, m):
    """Log of ``(4 pi^2 W / N) (r^2n / n!) (rho^2m / m!)`` at ``u = r^2``, ``v = rho^2``.

    ``W = N exp(-(r^2 + rho^2)) / pi^2``; ``N`` enters and cancels in log space.
    """
    log_n = math.log(2.0) + 2.0 * (u + v)
    log_w = log_n - (u + v) - 2.0 * math.log(math.pi)
    return (
        math.log(4.0 * math.pi ** 2) + log_w - log_n
        + n * np.log(u) - gammaln(n + 1) + m * np.log(v) - gammaln(m + 1)
    )


def moment_problem_value(n, m, rule):
    """``int_0^inf int_0^inf (4 pi^2 W/N)(r^2n/n!)(rho^2m/m!) r dr rho drho`` by Gauss-Laguerre.

    With ``u = r^2``: ``r dr = du/2``, so the double integral is
    ``(1/4) sum_i sum_k w_i w_k exp(u_i + u_k) f``; all factors are combined in logs.
    """
    u = rule.nodes[:, None]
    v = rule.nodes[None, :]
    log_terms = (
        moment_integrand_log(u, v, n, m) + u + v
        + rule.log_weights[:, None] + rule.log_weights[None, :] - math.log(4.0)
    )
    return float(np.sum(np.exp(log_terms)))


def appendix_moment_value(k, p, rule):
    """``4 int int exp(-(r^2 + rho^2)) (r^2k / k!)(rho^2p / p!) r dr rho drho``."""
    a = np.sum(rule.weights * np.exp(k * np.log(rule.nodes) - gammaln(k + 1)))
    b = np.sum(rule.weights * np.exp(p * np.log(rule.nodes) - gammaln(p + 1)))
    return float(4.0 * 0.25 * a * b)


def moment_problem_check(radial_order=32, n_max=10):
    """Max deviation from 1 of both moment problems for ``n, m <= n_max``."""
    if radial_order < 32:
        raise ParameterError("moment problems need radial order >= 32")
    rule = gauss_laguerre(radial_order)
    dev = 0.0
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            dev = max(dev, abs(moment_problem_value(n, m, rule) - 1.0), abs(appendix_moment_value(n, m, rule) - 1.0))
    return dev


# quadrature operators acting on the bra index n of |m><n|
def _apply_right(op, vec):
    """Apply ``A`` / ``A_dag`` to the ``n`` axis of components ``[..., m, n, 2]``."""
    n_max = vec.shape[-2] - 1
    root = np.sqrt(np.arange(1, n_max + 1, dtype=float))
    out = np.zeros_like(vec)
    if op == "A":
        out[..., :-1, :] = root[:, None] * vec[..., 1:, :]
    elif op == "A_dag":
        out[..., 1:, :] = root[:, None] * vec[..., :-1, :]
    else:
        raise ParameterError(f"unknown operator {op!r}")
    return out


@dataclass(frozen=True)
class Expectations:
    px: float
    px2: float
    py: float
    py2: float
    x: float
    x2: float
    y: float
    y2: float

    def as_dict(self):
        return dict(self.__dict__)


def expectations_closed_form(r, theta, phi, params):
    """Closed forms at ``eta = 0``.

    ``<P_X> = hbar/sqrt(2 Theta) r cos(phi) sin(theta)``,
    ``<P_X^2> = hbar^2/Theta (r^2 sin^2 theta + 1/4)``,
    ``<P_Y> = -hbar/sqrt(2 Theta) r cos(theta)``,
    ``<P_Y^2> = hbar^2/Theta (r^2 cos^2 theta + 1/4)``; position quadratures by
    the same algebra.
    """
    big = derive(params).big_theta
    hb = params.hbar
    s2, c2 = math.sin(theta) ** 2, math.cos(theta) ** 2
    return Expectations(
        px=hb / math.sqrt(2 * big) * r * math.cos(phi) * math.sin(theta),
        px2=hb * hb / big * (r * r * s2 + 0.25),
        py=-hb / math.sqrt(2 * big) * r * math.cos(theta),
        py2=hb * hb / big * (r * r * c2 + 0.25),
        x=math.sqrt(big / 2) * r * math.cos(theta),
        x2=big * (r * r * c2 + 0.25),
        y=math.sqrt(big / 2) * r * math.cos(phi) * math.sin(theta),
        y2=big * (r * r * s2 + 0.25),
    )


def quadrature_expectations(label, params, cfg):
    """Brute-force ``sum_{n~, m~} (state| O |state)`` for the quadrature operators.

    The sector ``j`` of ``label`` is held fixed and the states keep the
    ``N^{-1/2}`` normalization that includes the sum over ``j``. Operators
    act on the bra index ``n`` of ``|m><n|``:
    ``P_X = -i hbar/sqrt(2 Theta) (A - A_dag)``, ``P_Y = -hbar/sqrt(2 Theta) (A + A_dag)``,
    ``X = sqrt(Theta/2) (A + A_dag)``, ``Y = i sqrt(Theta/2) (A_dag - A)``.
    """
    big = derive(params).big_theta
    if not math.isfinite(big):
        raise ParameterError("quadrature operators need e*B != 0")
    hb = params.hbar
    left, right_chi = _all_sector_vectors(label, cfg, params)
    sums = {"A": 0j, "AA": 0j, "N": 0.0, "one": 0.0}
    for nt in range(cfg.dim):
        vec = np.einsum("mnab,tb->tmna", left, right_chi[nt])
        a1 = _apply_right("A", vec)
        a2 = _apply_right("A", a1)
        sums["A"] += np.vdot(vec, a1)
        sums["AA"] += np.vdot(vec, a2)
        sums["N"] += float(np.vdot(a1, a1).real)
        sums["one"] += float(np.vdot(vec, vec).real)
    ea, eaa, en, one = sums["A"], sums["AA"], sums["N"], sums["one"]
    # <A_dag> = conj<A>; <A A_dag> = <A_dag A> + <1>
    sym = 2 * en + one                       # <A A_dag + A_dag A>
    kp = hb / math.sqrt(2 * big)
    kx = math.sqrt(big / 2)
    return Expectations(
        px=float((-1j * kp * (ea - np.conj(ea))).real),
        px2=float((-(kp ** 2) * (2 * eaa.real - sym))),
        py=float((-kp * (ea + np.conj(ea))).real),
        py2=float(kp ** 2 * (2 * eaa.real + sym)),
        x=float((kx * (ea + np.conj(ea))).real),
        x2=float(kx ** 2 * (2 * eaa.real + sym)),
        y=float((1j * kx * (np.conj(ea) - ea)).real),
        y2=float(-(kx ** 2) * (2 * eaa.real - sym)),
    )


def uncertainty_function(r, theta, phi):
    """``F = (2 r^2 cos^2 t + 1)(4 r^2 sin^2 t - 2 r^2 cos^2 phi sin^2 t + 1)``."""
    r = np.asarray(r, dtype=float)
    c2 = np.cos(theta) ** 2
    s2 = np.sin(theta) ** 2
    return (2 * r * r * c2 + 1) * (4 * r * r * s2 - 2 * r * r * np.cos(phi) ** 2 * s2 + 1)


@dataclass(frozen=True)
class UncertaintyReport:
    dpx2: float
    dpy2: float
    product: float
    scaled_f: float
    f: float
    identity_residual: float


def uncertainty_report(r, theta, phi, params):
    """Momentum dispersions, their product and ``F``; checks ``product = hbar^4 F / (16 Theta^2)``."""
    big = derive(params).big_theta
    if not math.isfinite(big):
        raise ParameterError("Theta is infinite for e*B = 0")
    hb = params.hbar
    s2, c2 = math.sin(theta) ** 2, math.cos(theta) ** 2
    dpx2 = hb * hb / (4 * big) * (4 * r * r * s2 - 2 * r * r * math.cos(phi) ** 2 * s2 + 1)
    dpy2 = hb * hb / (2 * big) * (r * r * c2 + 0.5)
    f = float(uncertainty_function(r, theta, phi))
    product = dpx2 * dpy2
    scaled = hb ** 4 / (16 * big * big) * f
    return UncertaintyReport(dpx2, dpy2, product, scaled, f, abs(product - scaled) / max(abs(scaled), 1e-300))


def evolve_qvcs(label, t, params):
    """Rotate the label quaternion: ``Q -> make(r, theta - w* t mod 2 pi, phi, eta_q)``."""
    if label.q.params is None:
        raise ParameterError("evolve_qvcs needs a canonically built quaternion")
    r, th, phi, eta = label.q.params
    w = derive(params).effective_frequency
    return replace(label, q=make(r, (th - w * t) % (2 * np.pi), phi, eta))


def evolve_qvcs_phase(label, t, params):
    """Exact ``U(t)`` action: shift the phase label ``eta`` by ``t`` (``E_n = w* n``)."""
    return replace(label, eta=label.eta + t)


def apply_evolution(state, t, params):
    """``U(t) = exp(-i t H)`` on a built state, ``H`` with spectrum ``w* n``."""
    energies = _energies(state.n_max, params)
    return QVCSState(state.coeffs * np.exp(-1j * t * energies)[None, :, None], state.label)


def quaterntransf_matrix(r, theta, phi, eta, wt):
    """Explicit entries of ``r (cos(t - wt) I + i sigma sin(t - wt))``."""
    a = theta - wt
    c, s = math.cos(a), math.sin(a)
    return np.array(
        [
            [r * (c + 1j * math.cos(phi) * s), 1j * r * np.exp(1j * eta) * math.sin(phi) * s],
            [1j * r * np.exp(-1j * eta) * math.sin(phi) * s, r * (c - 1j * math.cos(phi) * s)],
        ]
    )


def plus_projector(q):
    """Projector onto the ``+1`` eigenspace of the axis matrix of ``q``."""
    from .quaternion import sigma

    return 0.5 * (I2 + sigma(q.params[2], q.params[3]))


def temporal_density(r0, theta0, r, theta, t, params, m, rho):
    """Density of the rotated reference state ``Q0(t)`` seen from ``Q``.

    ``(2/sqrt N(rho, rho)) (rho^2m/m!)^2 4 exp(2 r0 r cos(t0 - w t) cos t)
    cos(2 r0 r sin(t0 - w t) sin t) / sqrt N(r, r0)``. Vectorized in every
    angle and time argument.
    """
    w = derive(params).effective_frequency
    a0 = np.asarray(theta0) - w * np.asarray(t)
    pref = 2.0 / math.sqrt(qvcs_normalization(rho, rho)) * (rho ** (2 * m) / math.factorial(m)) ** 2
    trace = 4.0 * np.exp(2 * r0 * r * np.cos(a0) * np.cos(theta)) * np.cos(2 * r0 * r * np.sin(a0) * np.sin(theta))
    return pref * trace / math.sqrt(qvcs_normalization(r, r0))


def temporal_density_trace(q0, q, t, params, m, rho):
    """Same density with the trace evaluated by 2x2 matrix exponentials of ``Q0(t)`` and ``Q``."""
    from .quaternion import trace_exp_sum

    r0, th0, phi0, eta0 = q0.params
    w = derive(params).effective_frequency
    q0t = make(r0, th0 - w * t, phi0, eta0)
    pref = 2.0 / math.sqrt(qvcs_normalization(rho, rho)) * (rho ** (2 * m) / math.factorial(m)) ** 2
    return float((pref * trace_exp_sum(q, q0t) / math.sqrt(qvcs_normalization(q.r, r0))).real)


def default_cfg():
    return FockConfig(64)
