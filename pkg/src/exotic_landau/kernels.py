"""Backend selection for the numerical kernels.

The compiled extension is used when importable. Setting the environment
variable ``EXOTIC_LANDAU_BACKEND=python`` forces the numpy fallback, which is
also what gets used when the extension was not built.
"""
import os

from . import _kernels_py

BACKENDS = {"python": _kernels_py}
try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["compiled"] = _compiled

_requested = os.environ.get("EXOTIC_LANDAU_BACKEND", "").strip().lower()
if _requested == "python" or _compiled is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"


def get_backend(name=None):
    """Return the kernel module for ``name`` (default: the active backend)."""
    name = BACKEND if name is None else name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available; have {sorted(BACKENDS)}") from None


def laguerre_newton(x, n):
    return get_backend().laguerre_newton(x, n)


def rk4_affine(a, b, y0, dt, steps):
    return get_backend().rk4_affine(a, b, y0, dt, steps)


def hermite_table(kmax, x):
    return get_backend().hermite_table(kmax, x)


def weyl_grid(kmax, xi, w, xs, ys):
    return get_backend().weyl_grid(kmax, xi, w, xs, ys)
