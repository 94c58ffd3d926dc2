# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the loops in ``_kernels_py``; same signatures."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sqrt, fabs, cos, sin, M_PI

cnp.import_array()

cdef double _RESCALE_AT = 1e100
cdef double _RESCALE_BY = 1e-200


def laguerre_newton(x, int n):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xa = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t m = xa.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] step = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] logc = np.empty(m)
    cdef double log_rescale = log(1e200)
    cdef double xv, p, p_prev, p_next, acc, ls
    cdef Py_ssize_t i
    cdef int k
    for i in range(m):
        xv = xa[i]
        p_prev = 0.0
        p = 1.0
        acc = 0.0
        ls = 0.0
        for k in range(n):
            acc += p * p
            p_next = ((2 * k + 1 - xv) * p - k * p_prev) / (k + 1)
            p_prev = p
            p = p_next
            if fabs(p) > _RESCALE_AT:
                p *= _RESCALE_BY
                p_prev *= _RESCALE_BY
                acc *= _RESCALE_BY * _RESCALE_BY
                ls += log_rescale
        step[i] = xv * p / (n * (p - p_prev))
        logc[i] = log(acc) + 2.0 * ls
    return step, logc


def rk4_affine(a, b, y0, double dt, int steps):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] B = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t d = A.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((steps + 1, d))
    cdef double[::1] y = np.array(y0, dtype=np.float64)
    cdef double[::1] k1 = np.empty(d)
    cdef double[::1] k2 = np.empty(d)
    cdef double[::1] k3 = np.empty(d)
    cdef double[::1] k4 = np.empty(d)
    cdef double[::1] tmp = np.empty(d)
    cdef double half = 0.5 * dt, sixth = dt / 6.0, s
    cdef Py_ssize_t i, r, c
    cdef int it
    for r in range(d):
        out[0, r] = y[r]
    for it in range(steps):
        for r in range(d):
            s = B[r]
            for c in range(d):
                s += A[r, c] * y[c]
            k1[r] = s
        for r in range(d):
            tmp[r] = y[r] + half * k1[r]
        for r in range(d):
            s = B[r]
            for c in range(d):
                s += A[r, c] * tmp[c]
            k2[r] = s
        for r in range(d):
            tmp[r] = y[r] + half * k2[r]
        for r in range(d):
            s = B[r]
            for c in range(d):
                s += A[r, c] * tmp[c]
            k3[r] = s
        for r in range(d):
            tmp[r] = y[r] + dt * k3[r]
        for r in range(d):
            s = B[r]
            for c in range(d):
                s += A[r, c] * tmp[c]
            k4[r] = s
        for r in range(d):
            y[r] = y[r] + sixth * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r])
            out[it + 1, r] = y[r]
    return out


cdef void _hermite_into(int kmax, double[::1] x, double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t q, m = x.shape[0]
    cdef int k
    cdef double c0 = M_PI ** -0.25, sq2 = sqrt(2.0)
    for q in range(m):
        out[0, q] = c0 * exp(-0.5 * x[q] * x[q])
        if kmax >= 1:
            out[1, q] = sq2 * x[q] * out[0, q]
    for k in range(1, kmax):
        for q in range(m):
            out[k + 1, q] = sqrt(2.0 / (k + 1)) * x[q] * out[k, q] - sqrt(<double>k / (k + 1)) * out[k - 1, q]


def hermite_table(int kmax, x):
    cdef double[::1] xa = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out = np.empty((kmax + 1, xa.shape[0]))
    cdef double[:, ::1] ov = out
    _hermite_into(kmax, xa, ov)
    return out


def weyl_grid(int kmax, xi, w, xs, ys):
    cdef double[::1] xiv = np.ascontiguousarray(xi, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef double[::1] xsv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] ysv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t nq = xiv.shape[0], nx = xsv.shape[0], ny = ysv.shape[0]
    cdef int K = kmax + 1
    out = np.zeros((ny, nx, K, K), dtype=np.complex128)
    cdef double[:, :, :, :, ::1] ov = out.view(np.float64).reshape(ny, nx, K, K, 2)
    cdef double[:, ::1] left = np.empty((K, nq))
    cdef double[:, ::1] right = np.empty((K, nq))
    cdef double[::1] shifted = np.empty(nq)
    cdef Py_ssize_t j, ix, q
    cdef int k, l
    cdef double y, arg, cr, ci, ar, ai, rl
    _hermite_into(kmax, xiv, left)
    for q in range(nq):
        for k in range(K):
            left[k, q] *= wv[q]
    for j in range(ny):
        y = ysv[j]
        for q in range(nq):
            shifted[q] = xiv[q] - y
        _hermite_into(kmax, shifted, right)
        with nogil:
            for ix in range(nx):
                for q in range(nq):
                    arg = -xsv[ix] * (xiv[q] - 0.5 * y)
                    cr = cos(arg)
                    ci = sin(arg)
                    for k in range(K):
                        ar = cr * left[k, q]
                        ai = ci * left[k, q]
                        for l in range(K):
                            rl = right[l, q]
                            ov[j, ix, k, l, 0] += ar * rl
                            ov[j, ix, k, l, 1] += ai * rl
    return out
