"""Truncated space of Hilbert-Schmidt operators ``sum c[m, n] |m><n|``.

Left ladder operators (``B``, ``B^dag``) move the ket index ``m``; right
ladder operators (``A``, ``A^dag``) move the bra index ``n``. Coefficients
pushed past ``n_max`` are dropped.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from .exceptions import ParameterError
from .model import check_noncritical, derive


@dataclass(frozen=True)
class FockConfig:
    n_max: int = 64

    def __post_init__(self):
        if isinstance(self.n_max, bool) or int(self.n_max) != self.n_max or self.n_max < 2:
            raise ParameterError(f"n_max must be an integer >= 2, got {self.n_max!r}")

    @property
    def dim(self):
        return self.n_max + 1


@lru_cache(maxsize=None)
def annihilation(n_max):
    """``a[k, k+1] = sqrt(k+1)`` on ``n_max + 1`` levels (read-only)."""
    a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)
    a.setflags(write=False)
    return a


class HSOperator:
    """Immutable coefficient matrix over the ket-bra basis ``|m, n)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] < 3:
            raise ParameterError(f"coefficients must be a square matrix of size >= 3, got shape {c.shape}")
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self):
        return self._c

    @property
    def n_max(self):
        return self._c.shape[0] - 1

    @property
    def config(self):
        return FockConfig(self.n_max)

    @classmethod
    def basis(cls, m, n, cfg):
        c = np.zeros((cfg.dim, cfg.dim), dtype=complex)
        c[m, n] = 1.0
        return cls(c)

    @classmethod
    def zeros(cls, cfg):
        return cls(np.zeros((cfg.dim, cfg.dim), dtype=complex))

    def norm2(self):
        return float(np.vdot(self._c, self._c).real)

    def __add__(self, other):
        _check_same(self, other)
        return HSOperator(self._c + other._c)

    def __sub__(self, other):
        _check_same(self, other)
        return HSOperator(self._c - other._c)

    def __mul__(self, scalar):
        return HSOperator(self._c * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"HSOperator(n_max={self.n_max}, norm2={self.norm2():.6g})"


def _check_same(a, b):
    if a.coeffs.shape != b.coeffs.shape:
        raise ParameterError(f"shape mismatch: {a.coeffs.shape} vs {b.coeffs.shape}")


LADDERS = ("A", "A_dag", "B", "B_dag")
_ALIASES = {"A": "A", "A‡": "A_dag", "A_dag": "A_dag", "Adag": "A_dag",
            "B": "B", "B‡": "B_dag", "B_dag": "B_dag", "Bdag": "B_dag"}


def apply_ladder(which, state):
    """Apply one of ``A, A_dag, B, B_dag`` (``A‡``/``B‡`` accepted) to ``state``."""
    try:
        key = _ALIASES[which]
    except KeyError:
        raise ParameterError(f"unknown ladder operator {which!r}; expected one of {LADDERS}") from None
    a = annihilation(state.n_max)
    c = state.coeffs
    if key == "A":
        out = c @ a.T
    elif key == "A_dag":
        out = c @ a
    elif key == "B":
        out = a @ c
    else:
        out = a.T @ c
    return HSOperator(out)


def ladder_sequence(ops, state):
    """Apply ``ops`` right to left, as in operator notation ``ops[0] ops[1] ... |state)``."""
    for op in reversed(ops):
        state = apply_ladder(op, state)
    return state


def hs_inner(a, b):
    """``tr(a^dag b)``: conjugate-linear in ``a``."""
    _check_same(a, b)
    return complex(np.vdot(a.coeffs, b.coeffs))


def tail_mass(state):
    """Squared norm carried by the outermost shell ``max(m, n) == n_max``."""
    c = state.coeffs
    return float(np.sum(np.abs(c[-1, :]) ** 2) + np.sum(np.abs(c[:-1, -1]) ** 2))


def poisson_tail(lam, n_max):
    """``sum_{k > n_max} exp(-lam) lam**k / k!`` (mass lost by truncating a Poisson law)."""
    from scipy.special import gammainc

    if lam <= 0:
        return 0.0
    # P(K > n) = P(n + 1, lam): regularized lower incomplete gamma
    return float(gammainc(n_max + 1, lam))


def hamiltonian_eigenvalue(n, params):
    """``hbar w* (n + 1/2)``, independent of the left index ``m``."""
    if n < 0:
        raise ParameterError(f"level must be non-negative, got {n}")
    d = derive(params)
    return params.hbar * d.effective_frequency * (n + 0.5)


def hamiltonian_prefactor(params):
    """Coefficient of ``A^dag A`` written in the bare parameters; equals ``hbar w*``."""
    check_noncritical(params)
    gap = params.gap
    omega = params.eb / params.mass
    return 2 * params.hbar * gap * params.mass * omega / (2 * params.mass * gap * gap)


def apply_hamiltonian(state, params, shifted=False):
    """``H |psi)`` with ``H = hbar w* A^dag A + hbar w*/2``; ``shifted`` drops the constant."""
    d = derive(params)
    n = np.arange(state.n_max + 1)
    diag = hamiltonian_prefactor(params) * n
    if not shifted:
        diag = diag + 0.5 * params.hbar * d.effective_frequency
    return HSOperator(state.coeffs * diag[None, :])


def evolve_state(state, t, params, shifted=True):
    """``exp(-i H t / hbar) |psi)`` (diagonal in ``n``)."""
    d = derive(params)
    energies = params.hbar * d.effective_frequency * np.arange(state.n_max + 1)
    if not shifted:
        energies = energies + 0.5 * params.hbar * d.effective_frequency
    return HSOperator(state.coeffs * np.exp(-1j * energies * t / params.hbar)[None, :])


def number_expectation(state):
    """``(psi| A^dag A |psi) / (psi|psi)``."""
    n = np.arange(state.n_max + 1)
    w = np.sum(np.abs(state.coeffs) ** 2, axis=0)
    return float(np.dot(n, w) / w.sum())


def required_nmax(lam, tail=1e-12):
    """Smallest ``n_max`` with Poisson tail below ``tail`` at mean ``lam``."""
    n = max(2, int(math.ceil(lam)))
    while poisson_tail(lam, n) >= tail:
        n += 1
    return n
