"""Command-line driver: verification suite, figure grids and reports.

Exit status is 0 on success, 1 when a check fails and 2 for usage or
parameter errors (including the critical point ``e B theta = 1``).
"""
import argparse
from dataclasses import dataclass, field
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import figures, verification, wigner
from .exceptions import ParameterError, TruncationError
from .model import CONFIG_KEYS, ModelParams, derive, params_from_mapping, parse_config_text
from .numerics import DEFAULT_ANGULAR_ORDER, DEFAULT_RADIAL_ORDER

CLI_DEFAULT_THETA = 0.3
RUN_KEYS = ("n_max", "radial_order", "angular_order", "seed")
SWEEP_KEYS = ("z_abs", "z_prime_abs", "z0_abs", "t_max", "r", "r0", "rho", "omega", "fixed_angle")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams = field(default_factory=lambda: ModelParams(theta=CLI_DEFAULT_THETA))
    n_max: int = 64
    radial_order: int = DEFAULT_RADIAL_ORDER
    angular_order: int = DEFAULT_ANGULAR_ORDER
    out_dir: str = None
    seed: int = 0
    sweep: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, lo in (("n_max", 2), ("radial_order", 1), ("angular_order", 1), ("seed", 0)):
            v = getattr(self, name)
            if int(v) != v or v < lo:
                raise ParameterError(f"{name} must be an integer >= {lo}, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.radial_order > 128:
            raise ParameterError(f"radial_order must be <= 128, got {self.radial_order}")
        unknown = sorted(set(self.sweep) - set(SWEEP_KEYS))
        if unknown:
            raise ParameterError(f"unknown configuration keys: {', '.join(unknown)}")
        derive(self.params)

    def get(self, key, default):
        return self.sweep.get(key, default)


def build_config(args):
    """Merge the config file with command-line flags (flags win)."""
    values = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                values = parse_config_text(fh.read())
        except OSError as exc:
            raise ParameterError(f"cannot read config file: {exc}") from None
    model = {"theta": CLI_DEFAULT_THETA}
    model.update({k: v for k, v in values.items() if k in CONFIG_KEYS})
    run = {k: values[k] for k in RUN_KEYS if k in values}
    sweep = {k: v for k, v in values.items() if k not in CONFIG_KEYS and k not in RUN_KEYS}
    for key, flag in (("n_max", "nmax"), ("radial_order", "radial_order"),
                      ("angular_order", "angular_order"), ("seed", "seed")):
        if getattr(args, flag) is not None:
            run[key] = getattr(args, flag)
    for key in SWEEP_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            sweep[key] = v
    return RunConfig(params=params_from_mapping(model), out_dir=args.out, sweep=sweep, **run)


# --- output -----------------------------------------------------------------

def _fmt(v):
    if isinstance(v, complex):
        return repr(complex(v))
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def table_text(table):
    lines = [f"# {k}={_fmt(table.meta[k])}" for k in sorted(table.meta)]
    lines.append(",".join(table.columns))
    for row in np.asarray(table.rows, dtype=float):
        lines.append(",".join(repr(x) for x in row.tolist()))
    return "\n".join(lines) + "\n"


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_tables(tables, out_dir):
    paths = []
    for t in tables:
        path = os.path.join(out_dir, f"{t.name}.csv")
        atomic_write(path, table_text(t))
        paths.append(path)
    return paths


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def _emit_json(report, cfg, filename):
    text = json.dumps(_json_safe(report), indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if cfg.out_dir:
        atomic_write(os.path.join(cfg.out_dir, filename), text)


# --- figures ----------------------------------------------------------------

def emit_figure(which, cfg):
    """Build the tables for one figure key (see ``figures.FIGURE_KEYS``)."""
    p = cfg.params
    if which == "density1":
        return figures.density_tables(p, z_abs=cfg.get("z_abs", 1.0), z_prime_abs=cfg.get("z_prime_abs", 1.0),
                                      z0_abs=cfg.get("z0_abs", None), t_max=cfg.get("t_max", 5.0))
    if which == "pnd2":
        return figures.pnd_tables()
    if which == "fsurface3":
        return figures.fsurface_table(r=cfg.get("r", math.sqrt(2.0)))
    if which == "qvcsdensity4":
        return figures.qvcs_density_tables(p, omega=cfg.get("omega", figures.QVCS_DENSITY_OMEGA),
                                           fixed_angle=cfg.get("fixed_angle", math.pi / 6),
                                           r=cfg.get("r", 1.0), r0=cfg.get("r0", 1.0), rho=cfg.get("rho", 1.0),
                                           t_max=cfg.get("t_max", None))
    if which == "classical":
        return figures.classical_table(p)
    if which == "propagator":
        return figures.propagator_tables(p)
    raise ParameterError(f"unknown figure {which!r}; expected one of {', '.join(figures.FIGURE_KEYS)}")


FIGURE_COMMANDS = {
    "density": "density1",
    "pnd": "pnd2",
    "uncertainty": "fsurface3",
    "qvcs-density": "qvcsdensity4",
    "propagator": "propagator",
    "classical": "classical",
}


def cmd_figure(cfg, key):
    paths = write_tables(emit_figure(key, cfg), cfg.out_dir or ".")
    for p in paths:
        print(p)
    return EXIT_OK


def cmd_verify(cfg):
    checks = verification.run_checks(cfg.params, cfg.n_max, cfg.radial_order, cfg.angular_order, cfg.seed)
    ok = verification.all_passed(checks)
    report = {"checks": [c.as_dict() for c in checks], "summary": verification.summary(checks), "passed": ok}
    _emit_json(report, cfg, "verify_report.json")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_wigner(cfg):
    k_max = 12
    w = wigner.WignerTransform(wigner.HermiteBasis(k_max))
    deficit = w.unitarity_deficit()
    angular = {}
    for d1, d2 in ((0, 0), (1, 0), (0, 3)):
        m = wigner.angular_orthogonality(d1, d2)
        angular[f"{d1},{d2}"] = {
            "re": np.real(m).tolist(),
            "im": np.imag(m).tolist(),
            "deviation": float(np.abs(m - wigner.angular_orthogonality_closed(d1, d2)).max() / (64 * math.pi ** 4)),
        }
    resolution, _ = wigner.mapped_resolution_check(4)
    ok = deficit <= 1e-4 and resolution <= 1e-6 and all(a["deviation"] <= 1e-8 for a in angular.values())
    report = {
        "k_max": k_max,
        "unitarity_deficit": deficit,
        "angular_orthogonality": angular,
        "mapped_resolution_deviation": resolution,
        "passed": ok,
    }
    _emit_json(report, cfg, "wigner_report.json")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value file (mass, charge, b_field, theta, hbar, "
                        "n_max, radial_order, angular_order, seed and sweep keys); flags override it")
    common.add_argument("--out", metavar="DIR", help="output directory (default: current directory)")
    common.add_argument("--nmax", type=int, help="Fock truncation n_max (default 64)")
    common.add_argument("--radial-order", type=int, dest="radial_order",
                        help=f"Gauss-Laguerre order (default {DEFAULT_RADIAL_ORDER})")
    common.add_argument("--angular-order", type=int, dest="angular_order",
                        help=f"trapezoid order (default {DEFAULT_ANGULAR_ORDER})")
    common.add_argument("--seed", type=int, help="seed for randomized invariant sampling (default 0)")

    parser = argparse.ArgumentParser(
        prog="exotic-landau",
        description="Exotic Landau model on the noncommutative plane. Model defaults: "
                    f"M = e = B = hbar = 1, theta = {CLI_DEFAULT_THETA}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run every check and print a JSON report")
    d = sub.add_parser("density", parents=[common],
                       help="temporal density over arg z in [0, pi] and t in [0, 5] for m = 2, 5, 7")
    d.add_argument("--z-abs", type=float, dest="z_abs", help="|z| (default 1)")
    d.add_argument("--z-prime-abs", type=float, dest="z_prime_abs", help="|z'| (default 1)")
    d.add_argument("--z0-abs", type=float, dest="z0_abs", help="real z0 (default |z|)")
    d.add_argument("--t-max", type=float, dest="t_max", help="end of the time axis (default 5)")
    sub.add_parser("pnd", parents=[common],
                   help="photon-number distribution over (|z|, |z'|) for (m, n) = (2,2), (2,10), (10,2)")
    u = sub.add_parser("uncertainty", parents=[common], help="F(r, theta, phi) surface")
    u.add_argument("--r", type=float, help="quaternion modulus (default sqrt 2)")
    q = sub.add_parser("qvcs-density", parents=[common],
                       help="temporal QVCS density surfaces for m = 2, 5, 7; defaults r = r0 = rho = 1, "
                            "w* = 2.5e-3, fixed angle pi/6")
    q.add_argument("--omega", type=float, help="effective frequency w* (default 2.5e-3)")
    q.add_argument("--fixed-angle", type=float, dest="fixed_angle", help="fixed theta or theta0 (default pi/6)")
    q.add_argument("--r", type=float, help="modulus of Q (default 1)")
    q.add_argument("--r0", type=float, help="modulus of Q0 (default 1)")
    q.add_argument("--rho", type=float, help="modulus of Q' (default 1)")
    q.add_argument("--t-max", type=float, dest="t_max", help="end of the time axis (default one period)")
    sub.add_parser("propagator", parents=[common], help="slice convergence table and |K| grid")
    sub.add_parser("classical", parents=[common], help="RK4 trajectory with conserved charges")
    sub.add_parser("wigner", parents=[common], help="Wigner unitarity and resolution report (JSON)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "wigner":
            return cmd_wigner(cfg)
        return cmd_figure(cfg, FIGURE_COMMANDS[args.command])
    except (ParameterError, TruncationError) as exc:
        print(f"exotic-landau: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
