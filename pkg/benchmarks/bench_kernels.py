"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best-of-N wall time for each backend and
the speed-up. Backends that are not importable are reported as missing.
"""
import argparse
import time

import numpy as np

from exotic_landau import kernels
from exotic_landau.classical import PhaseSpacePoint, _affine_flow
from exotic_landau.model import ModelParams


def _cases():
    params = ModelParams(theta=0.3)
    a, b = _affine_flow(params, (0.0, 0.0))
    y0 = PhaseSpacePoint(0.7, -0.2, 0.3, 1.1).as_array()
    x = np.linspace(0.01, 300.0, 128)
    xi = np.linspace(-12.0, 12.0, 481)
    w = np.full(xi.size, xi[1] - xi[0])
    axis = np.linspace(-14.0, 14.0, 41)
    return {
        "laguerre_newton(n=128)": lambda k: k.laguerre_newton(x, 128),
        "rk4_affine(10000 steps)": lambda k: k.rk4_affine(a, b, y0, 1e-3, 10_000),
        "hermite_table(k=40, 4001 pts)": lambda k: k.hermite_table(40, np.linspace(-15, 15, 4001)),
        "weyl_grid(k=12, 41x41)": lambda k: k.weyl_grid(12, xi, w, axis, axis),
    }


def best_time(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    names = ("python", "compiled")
    print(f"{'kernel':32s} {'python [s]':>12s} {'compiled [s]':>13s} {'speed-up':>9s}")
    for label, fn in _cases().items():
        times = {}
        for name in names:
            if name in kernels.BACKENDS:
                times[name] = best_time(lambda: fn(kernels.get_backend(name)), args.repeat)
        py = times.get("python")
        co = times.get("compiled")
        co_s = f"{co:13.5f}" if co is not None else f"{'missing':>13s}"
        ratio = f"{py / co:8.1f}x" if co else f"{'-':>9s}"
        print(f"{label:32s} {py:12.5f} {co_s} {ratio}")


if __name__ == "__main__":
    main()
