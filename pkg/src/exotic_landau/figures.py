"""Grid generators behind the CSV emitters.

Each generator returns a list of :class:`Table` objects; writing them is the
CLI's job. Tables are pure functions of their arguments, so repeated runs
produce identical files.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import classical, coherent, propagator, vcs
from .exceptions import ParameterError
from .model import derive

FIGURE_KEYS = ("density1", "pnd2", "fsurface3", "qvcsdensity4", "classical", "propagator")
DENSITY_LEVELS = (2, 5, 7)
PND_PAIRS = ((2, 2), (2, 10), (10, 2))
QVCS_DENSITY_LEVELS = (2, 5, 7)
QVCS_DENSITY_OMEGA = 2.5e-3


@dataclass
class Table:
    name: str
    columns: tuple
    rows: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def max_value(self):
        return float(np.max(self.rows[:, -1]))


def _params_meta(params):
    return {"mass": params.mass, "charge": params.charge, "b_field": params.b_field,
            "theta": params.theta, "hbar": params.hbar}


def _mesh(a, b):
    aa, bb = np.meshgrid(a, b, indexing="ij")
    return aa.ravel(), bb.ravel()


def density_tables(params, z_abs=1.0, z_prime_abs=1.0, z0_abs=None, ms=DENSITY_LEVELS,
                   n_arg=61, n_t=51, t_max=5.0):
    """Density over ``arg z in [0, pi]`` and ``t in [0, t_max]`` for each ``m``.

    ``z0`` defaults to the real number ``|z|`` so that the self-point
    ``arg z = 0, t = 0`` is on the grid.
    """
    z0 = z_abs if z0_abs is None else z0_abs
    args, ts = _mesh(np.linspace(0.0, math.pi, n_arg), np.linspace(0.0, t_max, n_t))
    z = z_abs * np.exp(1j * args)
    out = []
    for m in ms:
        rho = coherent.density(z0, z, z_prime_abs, m, ts, params)
        meta = dict(_params_meta(params), z_abs=z_abs, z_prime_abs=z_prime_abs, z0=z0, m=m)
        out.append(Table(f"density1_m{m}", ("arg_z", "t", "density"), np.column_stack([args, ts, rho]), meta))
    return out


def pnd_tables(pairs=PND_PAIRS, x_max=4.0, n_grid=41):
    """``P(m, n)`` over ``x = |z|`` and ``y = |z'|``."""
    xs, ys = _mesh(np.linspace(0.0, x_max, n_grid), np.linspace(0.0, x_max, n_grid))
    out = []
    for m, n in pairs:
        pz = np.array([coherent.poisson_weight(x, n) for x in xs], dtype=float)
        pzp = np.array([coherent.poisson_weight(y, m) for y in ys], dtype=float)
        out.append(Table(f"pnd2_m{m}_n{n}", ("z_abs", "z_prime_abs", "probability"),
                         np.column_stack([xs, ys, pz * pzp]), {"m": m, "n": n}))
    return out


def fsurface_table(r=math.sqrt(2.0), n_theta=73, n_phi=37):
    """``F(r, theta, phi)`` for ``theta in [0, 2 pi)`` and ``phi in [0, pi]``."""
    th, ph = _mesh(np.linspace(0.0, 2 * math.pi, n_theta, endpoint=False), np.linspace(0.0, math.pi, n_phi))
    f = vcs.uncertainty_function(r, th, ph)
    return [Table("fsurface3", ("theta", "phi", "F"), np.column_stack([th, ph, f]), {"r": r})]


def params_with_frequency(params, omega):
    """Copy of ``params`` whose mass is rescaled so that ``w* = omega``."""
    if not omega > 0:
        raise ParameterError(f"omega must be positive, got {omega!r}")
    derive(params)
    return params.with_(mass=params.eb / (params.gap * omega))


def qvcs_density_tables(params, omega=QVCS_DENSITY_OMEGA, fixed_angle=math.pi / 6, r=1.0, r0=1.0, rho=1.0,
                        ms=QVCS_DENSITY_LEVELS, n_angle=73, n_t=73, t_max=None):
    """Temporal QVCS density surfaces over ``(angle, t)``.

    Family ``theta`` keeps ``theta = fixed_angle`` and sweeps ``theta0``;
    family ``theta0`` keeps ``theta0 = fixed_angle`` and sweeps ``theta``.
    ``t`` spans one period ``2 pi / omega`` unless ``t_max`` is given.
    """
    p = params_with_frequency(params, omega)
    t_max = 2 * math.pi / omega if t_max is None else t_max
    ang, ts = _mesh(np.linspace(0.0, 2 * math.pi, n_angle, endpoint=False), np.linspace(0.0, t_max, n_t))
    out = []
    for family in ("theta", "theta0"):
        for m in ms:
            if family == "theta":
                rho_v = vcs.temporal_density(r0, ang, r, fixed_angle, ts, p, m, rho)
                cols = ("theta0", "t", "density")
            else:
                rho_v = vcs.temporal_density(r0, fixed_angle, r, ang, ts, p, m, rho)
                cols = ("theta", "t", "density")
            meta = {"omega": omega, "fixed": family, "fixed_angle": fixed_angle, "r": r, "r0": r0, "rho": rho, "m": m}
            out.append(Table(f"qvcsdensity4_{family}_m{m}", cols, np.column_stack([ang, ts, rho_v]), meta))
    return out


def classical_table(params, x0=(1.0, 0.0, 0.0, 1.0), periods=5, steps_per_period=200):
    """RK4 trajectory with conserved charges and energy."""
    d = derive(params)
    period = 2 * math.pi / d.effective_frequency
    dt = period / steps_per_period
    traj = classical.integrate(classical.PhaseSpacePoint(*x0), params, dt=dt, steps=periods * steps_per_period)
    charges = classical.conserved_arrays(traj.t, traj.states, params)
    energy = np.array([classical.energy(y, params) for y in traj.states])
    rows = np.column_stack([traj.t, traj.states, charges, energy])
    cols = ("t", "x1", "x2", "p1", "p2", "P1", "P2", "K1", "K2", "H")
    return [Table("classical_trajectory", cols, rows, dict(_params_meta(params), dt=dt))]


def propagator_tables(params, z_f=0.5 + 0.3j, z_0=0.0, T=1.0, slices=(1, 2, 4, 8, 16, 32, 64),
                      half_width=2.0, n_grid=41):
    """Slice-convergence table and ``|K(z_f, z_0; T)|`` over a square of final points."""
    if params.theta == 0:
        raise ParameterError("the propagator needs theta != 0")
    exact = propagator.closed_form_propagator(z_f, z_0, T, params)
    conv = []
    for n in slices:
        v = propagator.full_propagator(z_f, z_0, T, n, params)
        conv.append((n, v.real, v.imag, abs(v - exact)))
    xs, ys = _mesh(np.linspace(-half_width, half_width, n_grid), np.linspace(-half_width, half_width, n_grid))
    kernel = propagator.full_propagator(0.0, 0.0, T, slices[-1], params, detail=True).kernel
    mod = np.abs(kernel(xs + 1j * ys, complex(z_0)))
    meta = dict(_params_meta(params), T=T, z_0=complex(z_0))
    return [
        Table("propagator_convergence", ("n_slices", "re", "im", "abs_error"), np.array(conv, dtype=float),
              dict(meta, z_f=complex(z_f))),
        Table("propagator_grid", ("re_zf", "im_zf", "abs_kernel"), np.column_stack([xs, ys, mod]),
              dict(meta, n_slices=slices[-1])),
    ]
