"""Quaternions as 2x2 complex matrices ``r (I cos t + i sigma(phi, eta) sin t)``."""
from dataclasses import dataclass
import math

import numpy as np

from .exceptions import ParameterError

I2 = np.eye(2, dtype=complex)
TWO_PI = 2.0 * np.pi
DEGENERACY_TOL = 1e-12


def sigma(phi, eta):
    """Unit axis matrix ``((cos phi, e^{i eta} sin phi), (e^{-i eta} sin phi, -cos phi))``."""
    c, s = math.cos(phi), math.sin(phi)
    e = complex(math.cos(eta), math.sin(eta))
    return np.array([[c, e * s], [np.conj(e) * s, -c]], dtype=complex)


def axis_vector(phi, eta):
    """Unit 3-vector ``n`` with ``sigma(phi, eta) = n . (sx, sy, sz)``."""
    return np.array([math.sin(phi) * math.cos(eta), -math.sin(phi) * math.sin(eta), math.cos(phi)])


@dataclass(frozen=True)
class Quaternion:
    """A quaternion matrix with the canonical parameters it was built from.

    ``params`` is ``(r, theta, phi, eta)`` or None for matrices that were not
    built canonically.
    """

    mat: np.ndarray
    params: tuple = None

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.shape != (2, 2):
            raise ParameterError(f"quaternion matrix must be 2x2, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def r(self):
        return self.params[0] if self.params else math.sqrt(abs(np.linalg.det(self.mat)))

    @property
    def bar(self):
        """Quaternion conjugate, which is the matrix adjoint."""
        p = self.params
        conj_params = None if p is None else (p[0], (-p[1]) % TWO_PI, p[2], p[3])
        return Quaternion(self.mat.conj().T, conj_params)

    def __matmul__(self, other):
        return Quaternion(self.mat @ other.mat)

    def power(self, n):
        return power(self, n)


def make(r, theta, phi, eta):
    """``r (I cos theta + i sigma(phi, eta) sin theta)``."""
    if r < 0:
        raise ParameterError(f"quaternion modulus must be non-negative, got {r!r}")
    mat = r * (math.cos(theta) * I2 + 1j * math.sin(theta) * sigma(phi, eta))
    return Quaternion(mat, (float(r), float(theta), float(phi), float(eta)))


def power(q, n):
    """``q**n``; de Moivre for canonical quaternions, repeated products otherwise."""
    if int(n) != n or n < 0:
        raise ParameterError(f"power must be a non-negative integer, got {n!r}")
    n = int(n)
    if q.params is not None:
        r, t, phi, eta = q.params
        return make(r ** n, n * t, phi, eta)
    return Quaternion(np.linalg.matrix_power(q.mat, n))


def power_table(q, n_max):
    """Array of shape ``(n_max + 1, 2, 2)`` holding ``q**0 .. q**n_max``."""
    out = np.empty((n_max + 1, 2, 2), dtype=complex)
    if q.params is not None:
        r, t, phi, eta = q.params
        s = sigma(phi, eta)
        n = np.arange(n_max + 1)
        with np.errstate(divide="ignore"):
            rn = np.where(n == 0, 1.0, float(r) ** n)
        out[:] = rn[:, None, None] * (np.cos(n * t)[:, None, None] * I2 + 1j * np.sin(n * t)[:, None, None] * s)
        return out
    out[0] = I2
    for k in range(1, n_max + 1):
        out[k] = out[k - 1] @ q.mat
    return out


def su2_factor(xi1, phi1, xi2):
    """``u = diag(e^{i xi1/2}, e^{-i xi1/2}) u_phi diag(e^{i xi2/2}, e^{-i xi2/2})``,
    with ``u_phi = ((cos(phi1/2), i sin(phi1/2)), (i sin(phi1/2), cos(phi1/2)))``."""

    def diag(a):
        return np.diag([np.exp(0.5j * a), np.exp(-0.5j * a)])

    c, s = math.cos(0.5 * phi1), math.sin(0.5 * phi1)
    u_phi = np.array([[c, 1j * s], [1j * s, c]])
    return diag(xi1) @ u_phi @ diag(xi2)


def su2_identification(r, theta, phi1, xi):
    """Conjugate ``diag(z, conj z)`` with ``z = r e^{-i theta}`` by ``u(xi, phi1, xi)``.

    Returns ``(matrix, canonical_params)``. The result equals
    ``make(r, -theta, phi1, xi - pi/2)``: the rotated ``sigma_z`` axis is
    ``sigma(phi1, xi - pi/2)`` and the label phase enters with opposite sign.
    """
    u = su2_factor(xi, phi1, xi)
    z = r * np.exp(-1j * theta)
    mat = u @ np.diag([z, np.conj(z)]) @ u.conj().T
    return mat, (r, (-theta) % TWO_PI, phi1, (xi - 0.5 * np.pi) % TWO_PI)


@dataclass(frozen=True)
class Extraction:
    r: float
    theta: float
    phi: float
    eta: float
    degenerate: bool


def extract(mat, tol=DEGENERACY_TOL):
    """Canonical parameters of a quaternion matrix, with ``theta`` in ``[0, pi]``.

    At ``theta`` in ``{0, pi}`` the axis is undetermined; ``phi = eta = 0`` is
    returned with ``degenerate=True``.
    """
    m = np.asarray(mat, dtype=complex)
    det = np.linalg.det(m)
    r = math.sqrt(abs(det))
    if r == 0.0:
        return Extraction(0.0, 0.0, 0.0, 0.0, True)
    q = m / r
    c = float(np.real(np.trace(q)) / 2.0)
    hermitian = -1j * (q - c * I2)  # sin(theta) * sigma
    s = float(math.sqrt(max(0.0, np.real(hermitian[0, 0]) ** 2 + abs(hermitian[0, 1]) ** 2)))
    theta = math.atan2(s, c)
    if s < tol:
        return Extraction(r, theta, 0.0, 0.0, True)
    axis = hermitian / s
    phi = math.acos(max(-1.0, min(1.0, float(np.real(axis[0, 0])))))
    eta = float(np.angle(axis[0, 1])) % TWO_PI if abs(axis[0, 1]) > tol else 0.0
    return Extraction(r, theta, phi, eta, False)


def canonical(r, theta, phi, eta):
    """Representative of ``(r, theta, phi, eta)`` with ``theta`` folded into ``[0, pi]``."""
    theta = theta % TWO_PI
    if theta > np.pi:
        return r, TWO_PI - theta, np.pi - phi, (eta + np.pi) % TWO_PI
    return r, theta, phi, eta % TWO_PI


def expm2(m):
    """Exact exponential of a 2x2 matrix via the trace / traceless split."""
    m = np.asarray(m, dtype=complex)
    half_tr = 0.5 * (m[0, 0] + m[1, 1])
    n = m - half_tr * I2
    delta = n[0, 0] * n[0, 0] + n[0, 1] * n[1, 0]  # n @ n = delta * I
    root = np.sqrt(complex(delta))
    if abs(root) < 1e-8:
        d = complex(delta)
        ch = 1 + d / 2 + d * d / 24
        shc = 1 + d / 6 + d * d / 120
    else:
        ch = np.cosh(root)
        shc = np.sinh(root) / root
    return np.exp(half_tr) * (ch * I2 + shc * n)


def expm_series(m, terms=60):
    """Taylor-series exponential with scaling and squaring (reference implementation)."""
    m = np.asarray(m, dtype=complex)
    norm = np.linalg.norm(m, 1)
    k = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0.5 else 0
    a = m / 2 ** k
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for j in range(1, terms):
        term = term @ a / j
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


def exp_i_sigma(theta, phi, eta):
    """Closed form ``exp(i theta sigma) = I cos theta + i sigma sin theta``."""
    return math.cos(theta) * I2 + 1j * math.sin(theta) * sigma(phi, eta)


def trace_exp_sum(q1, q2, blocks=2):
    """``Tr exp(conj(q2) q1 + q2 conj(q1))`` over ``blocks`` copies of C^2.

    The quaternions act block-diagonally on C^2 (x) C^2, so the default
    trace is over two identical blocks.
    """
    m = q2.mat.conj().T @ q1.mat + q2.mat @ q1.mat.conj().T
    return complex(blocks * np.trace(expm2(m)))


def trace_exp_closed(r, theta, r0, theta0, axis_angle=0.5 * np.pi, blocks=2):
    """Closed form of ``trace_exp_sum`` when the two axes meet at ``axis_angle``.

    ``2 blocks exp(2 r r0 (cos t cos t0 + sin t sin t0 cos a)) cos(2 r r0 sin t sin t0 sin a)``.
    At ``a = pi/2`` this is ``4 exp(2 r0 r cos t0 cos t) cos(2 r0 r sin t0 sin t)``.
    """
    rr = 2.0 * r * r0
    c = math.cos(theta) * math.cos(theta0)
    s = math.sin(theta) * math.sin(theta0)
    return 2.0 * blocks * math.exp(rr * (c + s * math.cos(axis_angle))) * math.cos(rr * s * math.sin(axis_angle))


def trace_exp_printed(r, theta, r0, theta0):
    """``4 exp(2 r0 r cos t0 cos t) cos(2 r0 r sin t0 sin t)``."""
    return trace_exp_closed(r, theta, r0, theta0, 0.5 * np.pi)


def axis_angle(q1, q2):
    """Angle between the rotation axes of two canonical quaternions."""
    a = axis_vector(q1.params[2], q1.params[3])
    b = axis_vector(q2.params[2], q2.params[3])
    return math.acos(max(-1.0, min(1.0, float(a @ b))))


def orthogonal_axis(phi, eta):
    """Some ``(phi', eta')`` whose axis is perpendicular to ``sigma(phi, eta)``'s."""
    n = axis_vector(phi, eta)
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 0.0, 1.0])
    m = np.cross(n, helper)
    m /= np.linalg.norm(m)
    phi2 = math.acos(max(-1.0, min(1.0, m[2])))
    eta2 = math.atan2(-m[1], m[0]) % TWO_PI
    return phi2, eta2
