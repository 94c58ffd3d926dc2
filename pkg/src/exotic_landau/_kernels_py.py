"""Pure-numpy implementations of the hot loops.

These mirror the compiled versions in ``_kernels.pyx`` one for one and are
used whenever the extension is missing or ``EXOTIC_LANDAU_BACKEND=python``.
"""
import numpy as np

_RESCALE_AT = 1e100
_RESCALE_BY = 1e-200
_LOG_RESCALE = np.log(1e200)


def laguerre_newton(x, n):
    """Newton step and log Christoffel sum for the degree-``n`` Laguerre polynomial.

    Returns ``(step, log_christoffel)`` where ``step = L_n(x) / L_n'(x)`` and
    ``log_christoffel = log(sum_{k<n} L_k(x)^2)``. The three-term recurrence
    is rescaled on the fly so that large nodes do not overflow.
    """
    x = np.asarray(x, dtype=float)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    acc = np.zeros_like(x)
    log_scale = np.zeros_like(x)
    for k in range(n):
        acc += p * p
        p_next = ((2 * k + 1 - x) * p - k * p_prev) / (k + 1)
        p_prev, p = p, p_next
        big = np.abs(p) > _RESCALE_AT
        if big.any():
            p[big] *= _RESCALE_BY
            p_prev[big] *= _RESCALE_BY
            acc[big] *= _RESCALE_BY * _RESCALE_BY
            log_scale[big] += _LOG_RESCALE
    step = x * p / (n * (p - p_prev))
    return step, np.log(acc) + 2.0 * log_scale


def rk4_affine(a, b, y0, dt, steps):
    """Fixed-step RK4 for the affine system y' = a @ y + b; returns all states."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    y = np.array(y0, dtype=float)
    out = np.empty((steps + 1, y.size))
    out[0] = y
    half = 0.5 * dt
    for i in range(steps):
        k1 = a @ y + b
        k2 = a @ (y + half * k1) + b
        k3 = a @ (y + half * k2) + b
        k4 = a @ (y + dt * k3) + b
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = y
    return out


def hermite_table(kmax, x):
    """Orthonormal Hermite functions psi_0..psi_kmax evaluated at ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1, x.size))
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if kmax >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, kmax):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * x * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def weyl_grid(kmax, xi, w, xs, ys):
    """Matrix elements <psi_k | U(x, y) psi_l> on the grid ``ys`` x ``xs``.

    ``U(x, y)`` acts as ``phi(s) -> exp(-i x (s - y/2)) phi(s - y)``; the
    integral over ``s`` uses the nodes ``xi`` with weights ``w``.
    Returns an array of shape ``(len(ys), len(xs), kmax+1, kmax+1)``.
    """
    xi = np.asarray(xi, dtype=float)
    w = np.asarray(w, dtype=float)
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    left = hermite_table(kmax, xi) * w
    out = np.empty((ys.size, xs.size, kmax + 1, kmax + 1), dtype=complex)
    for j, y in enumerate(ys):
        right = hermite_table(kmax, xi - y)
        phase = np.exp(-1j * np.outer(xs, xi - 0.5 * y))
        out[j] = np.einsum("kq,xq,lq->xkl", left, phase, right, optimize=True)
    return out
