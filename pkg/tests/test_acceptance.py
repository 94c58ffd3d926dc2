"""Acceptance criteria 1-16, one printed line per criterion.

Each criterion is a function returning named sub-checks ``(ok, detail)``.
Tests are parametrized per sub-check so a failing part does not hide the
others. Run as a script for the summary lines alone:

    python3 tests/test_acceptance.py
"""
import cmath
import math
import time
from functools import lru_cache

import numpy as np
import pytest
from scipy.linalg import expm
from scipy.special import gammaln

from exotic_landau import classical, coherent, figures, fock, propagator, quaternion, vcs, wigner
from exotic_landau.model import ModelParams, derive

PARAMS = ModelParams(theta=0.3)
SEED = 20240611

# reference surface maxima for m = 2, 5, 7 quoted with the model's figures
QVCS_REFERENCE_MAXIMA = (0.2, 0.01, 1e-4)
DENSITY_REFERENCE_MAXIMA = (0.04, 6e-4, 6e-6)
REFERENCE_FACTOR = 5.0

TITLES = {
    1: "classical conservation and cyclotron frequency",
    2: "charge bracket algebra",
    3: "coherent state normalization",
    4: "label continuity",
    5: "resolution of the identity",
    6: "temporal stability",
    7: "action identity",
    8: "photon-number statistics and Mandel Q",
    9: "propagator",
    10: "quaternion exponential and trace formula",
    11: "quaternionic coherent state normalization",
    12: "moment problems",
    13: "uncertainty function",
    14: "quaternionic state evolution and density maxima",
    15: "Wigner transform",
    16: "scalar temporal density",
}

RESULTS = {}


def _sub(ok, detail):
    return (bool(ok), detail)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# --- criteria ----------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    d = derive(PARAMS)
    period = 2 * math.pi / d.effective_frequency
    pt0 = classical.PhaseSpacePoint(0.7, -0.2, 0.3, 1.1)
    traj = classical.integrate(pt0, PARAMS, dt=period / 1000, steps=10_000)
    q = classical.conserved_arrays(traj.t, traj.states, PARAMS)
    drifts = np.max(np.abs(q - q[0]), axis=0) / np.abs(q[0])
    w = classical.measure_frequency(traj.t, traj.states[:, 2])
    elapsed = time.perf_counter() - start
    # oracle: w* = eB / (M (1 - eB theta))
    w_exact = PARAMS.eb / (PARAMS.mass * (1 - PARAMS.eb * PARAMS.theta))
    return {
        "charge drift": _sub(drifts.max() < 1e-6, f"max relative drift {drifts.max():.2e} (< 1e-6)"),
        "cyclotron frequency": _sub(_rel(w, w_exact) < 1e-4, f"relative error {_rel(w, w_exact):.2e} (< 1e-4)"),
        "runtime": _sub(elapsed < 1.0, f"{elapsed:.3f} s (< 1 s)"),
    }


def _structure_matrix(params):
    # {x1,x2} = theta, {xi,pj} = delta_ij, {p1,p2} = eB, all over (1 - eB theta)
    s = np.zeros((4, 4))
    s[0, 1], s[0, 2], s[1, 3], s[2, 3] = params.theta, 1.0, 1.0, params.eb
    return (s - s.T) / (1 - params.eb * params.theta)


def criterion_2():
    rng = np.random.default_rng(SEED)
    d = derive(PARAMS)
    mw = d.effective_mass * d.effective_frequency
    omega = _structure_matrix(PARAMS)
    # independent route: gradients of the linear charges by unit-vector probes
    dev_pp = dev_kk = dev_pk = 0.0
    dev_lib = 0.0
    pts = []
    for _ in range(100):
        y, t = rng.uniform(-2, 2, 4), rng.uniform(0, 5)
        pts.append(classical.PhaseSpacePoint(*y, t=t))
        base = classical.conserved_arrays(t, y[None], PARAMS)[0]
        grads = np.array([classical.conserved_arrays(t, (y + e)[None], PARAMS)[0] - base for e in np.eye(4)]).T
        br = grads @ omega @ grads.T
        dev_pp = max(dev_pp, abs(br[0, 1] + mw))
        dev_kk = max(dev_kk, abs(br[2, 3] - (1 - PARAMS.eb * PARAMS.theta) * mw), abs(br[3, 2] + br[2, 3]))
        dev_pk = max(dev_pk, np.abs(br[:2, 2:]).max())
    dev_lib = classical.verify_charge_algebra(PARAMS, pts).max_deviation
    return {
        "{P1,P2} = -M* w*": _sub(dev_pp < 1e-8, f"max deviation {dev_pp:.1e} (< 1e-8)"),
        "{K1,K2} = (1 - eB theta) M* w*": _sub(dev_kk < 1e-8, f"max deviation {dev_kk:.1e} (< 1e-8)"),
        "{Pi,Kj} = 0": _sub(dev_pk < 1e-8, f"max deviation {dev_pk:.1e} (< 1e-8)"),
        "library bracket agrees": _sub(dev_lib < 1e-8, f"max deviation {dev_lib:.1e} (< 1e-8)"),
    }


def criterion_3():
    cfg = fock.FockConfig(64)
    rng = np.random.default_rng(SEED)
    dev = 0.0
    radii = [0.0, 0.5, 1.0, 1.5, 2.0]
    for a in radii:
        for b in radii:
            z = a * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            zp = b * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            dev = max(dev, abs(coherent.normalization(z, zp, cfg) - 1.0))
    return {"sum over m equals 1": _sub(dev < 1e-10, f"max deviation {dev:.1e} (< 1e-10)")}


def _coherent_column(alpha, dim):
    n = np.arange(dim)
    mag = np.exp(n * np.log(max(abs(alpha), 1e-300)) - 0.5 * gammaln(n + 1) - 0.5 * abs(alpha) ** 2)
    return mag * np.exp(1j * n * cmath.phase(alpha)) if alpha != 0 else (n == 0).astype(complex)


def criterion_4():
    cfg = fock.FockConfig(64)
    rng = np.random.default_rng(SEED)
    dev = 0.0
    for _ in range(100):
        z, z1, z2 = (complex(*rng.uniform(-1.4, 1.4, 2)) for _ in range(3))
        m = int(rng.integers(0, 4))
        # oracle: projector distance of the two-sector product vectors built from scratch
        u = np.kron(_coherent_column(np.conj(z1), cfg.dim), _coherent_column(z, cfg.dim))
        v = np.kron(_coherent_column(np.conj(z2), cfg.dim), _coherent_column(z1, cfg.dim))
        oracle = 2 * (1 - abs(np.vdot(u, v)) ** 2)
        closed = 2 * (1 - math.exp(-abs(z - z1) ** 2) * math.exp(-abs(np.conj(z1) - np.conj(z2)) ** 2))
        res = coherent.continuity_distance(z, z1, z2, m, cfg)
        dev = max(dev, abs(oracle - closed), abs(res.numeric - closed), abs(res.closed_form - closed))
    return {"numeric vs closed form": _sub(dev < 1e-8, f"max deviation {dev:.1e} over 100 triples (< 1e-8)")}


def criterion_5():
    start = time.perf_counter()
    res = coherent.resolution_check(fock.FockConfig(64), 64, 128)
    elapsed = time.perf_counter() - start
    return {
        "interior block deviation": _sub(res.max_deviation < 1e-6, f"{res.max_deviation:.1e} (< 1e-6)"),
        "runtime": _sub(elapsed < 30.0, f"{elapsed:.2f} s (< 30 s)"),
    }


def criterion_6():
    cfg = fock.FockConfig(64)
    dev = 0.0
    for z, zp, m, eta, t in ((0.8 - 0.4j, 0.6 + 0.2j, 2, 0.1, 0.37), (1.5j, 1.0, 0, 0.0, 4.2), (-1.2, 0.3j, 5, 2.0, 11.0)):
        label = coherent.CSLabel(z, zp, m, eta)
        lhs = fock.evolve_state(coherent.build_cs(label, cfg), t, PARAMS)
        rhs = coherent.build_cs(coherent.evolve(label, t, PARAMS), cfg)
        dev = max(dev, np.abs(lhs.coeffs - rhs.coeffs).max())
    return {"U(t) vs label evolution": _sub(dev < 1e-14, f"max entry deviation {dev:.1e} (< 1e-14)")}


def criterion_7():
    cfg = fock.FockConfig(64)
    w = derive(PARAMS).effective_frequency
    dev = 0.0
    printed_gap = math.inf
    for za in (0.0, 0.5, 1.5, 2.0):
        res = coherent.action_expectation(coherent.CSLabel(za * cmath.exp(0.4j), 0.7), PARAMS, cfg)
        dev = max(dev, abs(res.brute_force - w * za * za))
        if za not in (0.0, 1.0):
            printed_gap = min(printed_gap, abs(res.brute_force - w * za))
    at_one = coherent.action_expectation(coherent.CSLabel(cmath.exp(0.4j), 0.7), PARAMS, cfg)
    one_gap = abs(at_one.brute_force - w * 1.0)
    return {
        "brute force equals w*|z|^2": _sub(dev < 1e-10, f"max deviation {dev:.1e} (< 1e-10)"),
        "printed w*|z| differs for |z| != 1": _sub(printed_gap > 1e-10,
                                                   f"smallest gap {printed_gap:.3f} (documented mismatch)"),
        "printed w*|z| agrees at |z| = 1": _sub(one_gap < 1e-10, f"deviation {one_gap:.1e} (< 1e-10)"),
    }


def criterion_8():
    cfg = fock.FockConfig(64)
    dev = 0.0
    n = np.arange(cfg.dim)
    for za in (0.5, 1.0, 1.5):
        # marginal over m taken from the built states themselves
        p = sum(np.abs(coherent.build_cs(coherent.CSLabel(za, 0.8, m), cfg).coeffs[m]) ** 2 for m in range(cfg.dim))
        mean = float(n @ p)
        var = float(n * n @ p - mean * mean)
        stats = coherent.pnd_and_mandel(za, 0.8, range(cfg.dim), range(cfg.dim))
        dev = max(dev, abs(mean - za ** 2), abs(var - za ** 2), abs((var - mean) / mean),
                  abs(stats.mean - za ** 2), abs(stats.variance - za ** 2), abs(stats.mandel_q))
    return {"mean = variance = |z|^2, Q = 0": _sub(dev < 1e-10, f"max deviation {dev:.1e} (< 1e-10)")}


def criterion_9():
    zs = [(0.3 + 0.1j, -0.2 + 0.5j), (1.0, 1.0j), (-0.4 - 0.4j, 0.2)]
    dev_a = 0.0
    for tau in (0.01, 0.1, 1.0):
        k = propagator.short_time_kernel(tau, PARAMS)
        for zf, z0 in zs:
            dev_a = max(dev_a, _rel(propagator.short_time_kernel_quadrature(zf, z0, tau, PARAMS), k(zf, z0)))
    dev_b = 0.0
    for n in range(1, 65):
        for zf, z0 in zs[:2]:
            dev_b = max(dev_b, _rel(propagator.full_propagator(zf, z0, 1.0, n, PARAMS),
                                    propagator.closed_form_propagator(zf, z0, 1.0, PARAMS)))
    dev_c = 0.0
    eb_theta = PARAMS.eb * PARAMS.theta
    for zf, z0 in zs:
        target = (1 - eb_theta) / (2 * eb_theta) * math.exp(-abs(zf - z0) ** 2)
        dev_c = max(dev_c, _rel(abs(propagator.full_propagator(zf, z0, 1e-6, 8, PARAMS)), target))
    return {
        "(a) short-time quadrature": _sub(dev_a < 1e-8, f"max relative deviation {dev_a:.1e} (< 1e-8)"),
        "(b) slice composition n <= 64": _sub(dev_b < 1e-10, f"max relative deviation {dev_b:.1e} (< 1e-10)"),
        "(c) T -> 0 Gaussian amplitude": _sub(dev_c < 1e-4, f"max relative deviation {dev_c:.1e} (< 1e-4)"),
    }


def _printed_trace(r, th, r0, th0):
    return 4 * math.exp(2 * r0 * r * math.cos(th0) * math.cos(th)) * math.cos(2 * r0 * r * math.sin(th0) * math.sin(th))


def _trace_oracle(q, q0):
    m = q0.mat.conj().T @ q.mat + q0.mat @ q.mat.conj().T
    # two identical C^2 blocks
    return 2 * np.trace(expm(m)).real


def criterion_10():
    rng = np.random.default_rng(SEED)
    dev_exp = 0.0
    for _ in range(50):
        th, ph, et = rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        oracle = expm(1j * th * quaternion.sigma(ph, et))
        dev_exp = max(dev_exp, np.abs(quaternion.exp_i_sigma(th, ph, et) - oracle).max())
    dev_same = dev_orth = dev_lib = 0.0
    for _ in range(50):
        r, r0 = rng.uniform(0.1, 1.5, 2)
        th, th0 = rng.uniform(0, 2 * math.pi, 2)
        ph, et = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        q = quaternion.make(r, th, ph, et)
        printed = _printed_trace(r, th, r0, th0)
        scale = max(abs(printed), 1.0)
        same = _trace_oracle(q, quaternion.make(r0, th0, ph, et))
        dev_same = max(dev_same, abs(same - printed) / scale)
        q_orth = quaternion.make(r0, th0, *quaternion.orthogonal_axis(ph, et))
        dev_orth = max(dev_orth, abs(_trace_oracle(q, q_orth) - printed) / scale)
        dev_lib = max(dev_lib, abs(quaternion.trace_exp_sum(q, q_orth) - _trace_oracle(q, q_orth)) / scale)
    return {
        "exp(i theta sigma) closed form": _sub(dev_exp < 1e-12, f"max deviation {dev_exp:.1e} (< 1e-12)"),
        "trace formula, same-axis pairs": _sub(dev_same < 1e-10,
                                               f"max relative deviation {dev_same:.2e} (< 1e-10)"),
        "trace formula, orthogonal axes (supplementary)": _sub(dev_orth < 1e-10,
                                                               f"max relative deviation {dev_orth:.1e} (< 1e-10)"),
        "library trace vs expm": _sub(dev_lib < 1e-10, f"max relative deviation {dev_lib:.1e} (< 1e-10)"),
    }


def criterion_11():
    cfg = fock.FockConfig(64)
    dev = 0.0
    for r, rho in ((0.3, 0.5), (1.0, 1.0), (1.5, 0.7), (1.5, 1.5)):
        lab = vcs.QVCSLabel(quaternion.make(r, 0.4, 0.7, 1.2), quaternion.make(rho, 2.1, 1.9, 0.2))
        big_n = 2 * math.exp(2 * (r * r + rho * rho))
        # the built states carry 1/sqrt(N); undo it to get the raw sum
        raw = vcs.qvcs_norm_bruteforce(lab, cfg) * big_n
        dev = max(dev, _rel(raw, big_n))
    return {"sum = 2 exp(2 (r^2 + rho^2))": _sub(dev < 1e-10, f"max relative deviation {dev:.1e} (< 1e-10)")}


def criterion_12():
    start = time.perf_counter()
    dev = vcs.moment_problem_check(32, 10)
    elapsed = time.perf_counter() - start
    return {
        "moments equal 1 for n, m <= 10": _sub(dev < 1e-10, f"max deviation {dev:.1e} (< 1e-10)"),
        "runtime": _sub(elapsed < 1.0, f"{elapsed:.3f} s (< 1 s)"),
    }


def criterion_13():
    grid = np.linspace(0, 2 * math.pi, 50)
    f0 = vcs.uncertainty_function(0.0, grid[:, None], grid[None, :])
    rr, tt, pp = np.meshgrid(np.linspace(0, 3, 50), grid, grid, indexing="ij")
    fmin = float(vcs.uncertainty_function(rr, tt, pp).min())
    resid = 0.0
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        r, th, ph = rng.uniform(0, 3), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        rep = vcs.uncertainty_report(r, th, ph, PARAMS)
        big = 1 / (PARAMS.eb * (1 - PARAMS.eb * PARAMS.theta))
        target = PARAMS.hbar ** 4 / (16 * big * big) * vcs.uncertainty_function(r, th, ph)
        resid = max(resid, _rel(rep.dpx2 * rep.dpy2, float(target)))
    thetas = np.linspace(0.0, 1.0 - 1e-6, 20)
    spread = [math.sqrt(vcs.uncertainty_report(1.0, 0.6, 1.0, PARAMS.with_(theta=th)).product) for th in thetas]
    monotone = all(b < a for a, b in zip(spread, spread[1:]))
    return {
        "F(0, theta, phi) = 1": _sub(np.all(f0 == 1.0), f"max |F - 1| = {np.abs(f0 - 1).max():.1e} (exact)"),
        "F >= 1 on 50^3 grid": _sub(fmin >= 1.0, f"min F = {fmin!r}"),
        "dispersion product identity": _sub(resid < 1e-12, f"max relative residual {resid:.1e} (< 1e-12)"),
        "collapse toward the critical point": _sub(monotone and spread[-1] < 1e-5 * spread[0],
                                                   f"monotone={monotone}, last/first = {spread[-1] / spread[0]:.1e}"),
    }


def criterion_14():
    w = derive(PARAMS).effective_frequency
    dev_m = 0.0
    for r, th, ph, et, wt in ((1.0, math.pi / 6, math.pi / 4, 0.3, 0.7), (0.6, 2.0, 1.1, 5.0, 3.3)):
        lab = vcs.QVCSLabel(quaternion.make(r, th, ph, et), quaternion.make(1.0, 0.2, ph, et))
        got = vcs.evolve_qvcs(lab, wt / w, PARAMS).q.mat
        a = th - wt
        sig = quaternion.sigma(ph, et)
        dev_m = max(dev_m, np.abs(got - vcs.quaterntransf_matrix(r, th, ph, et, wt)).max(),
                    np.abs(got - r * (math.cos(a) * np.eye(2) + 1j * math.sin(a) * sig)).max())
    rng = np.random.default_rng(SEED)
    dev_d = 0.0
    for _ in range(20):
        th0, th, t = rng.uniform(0, 2 * math.pi, 3)
        ph, et = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        q0 = quaternion.make(1.0, th0, ph, et)
        q = quaternion.make(0.9, th, *quaternion.orthogonal_axis(ph, et))
        a = vcs.temporal_density(1.0, th0, 0.9, th, t, PARAMS, 2, 1.0)
        b = vcs.temporal_density_trace(q0, q, t, PARAMS, 2, 1.0)
        dev_d = max(dev_d, _rel(b, a))
    tables = figures.qvcs_density_tables(PARAMS)
    maxima = [t.max_value for t in tables[:3]]
    other = [t.max_value for t in tables[3:]]
    steps = min(maxima[0] / maxima[1], maxima[1] / maxima[2], other[0] / other[1], other[1] / other[2])
    worst = max(max(a / b, b / a) for a, b in zip(maxima, QVCS_REFERENCE_MAXIMA))
    shown = ", ".join(f"{v:.2e}" for v in maxima)
    return {
        "rotated quaternion matrix": _sub(dev_m < 1e-14, f"max entry deviation {dev_m:.1e} (< 1e-14)"),
        "density closed form vs trace route": _sub(dev_d < 1e-10, f"max relative deviation {dev_d:.1e} (< 1e-10)"),
        "maxima drop >= 10x per step": _sub(steps >= 10.0, f"smallest ratio {steps:.3g} (>= 10)"),
        "maxima within 5x of reference": _sub(worst <= REFERENCE_FACTOR,
                                              f"maxima {shown} vs 0.2, 0.01, 1e-4; worst factor {worst:.3g} (<= 5)"),
    }


def criterion_15():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    tr = wigner.WignerTransform(wigner.HermiteBasis(12))
    dev_u = 0.0
    for _ in range(20):
        a = wigner.B2Element(rng.normal(size=(13, 13)) + 1j * rng.normal(size=(13, 13)))
        b = wigner.B2Element(rng.normal(size=(13, 13)) + 1j * rng.normal(size=(13, 13)))
        dev_u = max(dev_u, abs(tr.inner(a, b) - a.inner(b)) / max(abs(a.inner(b)), 1.0))
    norm = 64 * math.pi ** 4
    dev_a = 0.0
    for d1, d2 in ((0, 0), (1, 0), (0, 1), (0, 3), (2, -1), (-4, 4)):
        got = wigner.angular_orthogonality(d1, d2)
        expected = norm * np.eye(2) if d1 == 0 and d2 == 0 else np.zeros((2, 2))
        dev_a = max(dev_a, np.abs(got - expected).max() / norm)
    dev_r, _ = wigner.mapped_resolution_check(4)
    elapsed = time.perf_counter() - start
    return {
        "unitarity on 20 random pairs": _sub(dev_u < 1e-4, f"max relative deviation {dev_u:.1e} (< 1e-4)"),
        "angular integral branches": _sub(dev_a < 1e-8, f"max relative deviation {dev_a:.1e} (< 1e-8)"),
        "mapped resolution at k_max = 4": _sub(dev_r < 1e-6, f"deviation {dev_r:.1e} (< 1e-6)"),
        "runtime": _sub(elapsed < 60.0, f"{elapsed:.2f} s (< 60 s)"),
    }


def criterion_16():
    w = derive(PARAMS).effective_frequency
    period = 2 * math.pi / w
    z0 = 0.9 * cmath.exp(0.3j)
    ts = np.linspace(0, 3 * period, 37)
    mods = np.abs([coherent.rotated_label(z0, t, PARAMS) for t in ts])
    dev_mod = float(np.max(np.abs(mods - abs(z0))))
    zs = np.array([0.3, 1.0j, -0.7 + 0.2j])
    dev_per = 0.0
    for t in ts:
        a = coherent.density(z0, zs, 1.0, 2, t, PARAMS)
        b = coherent.density(z0, zs, 1.0, 2, t + period, PARAMS)
        dev_per = max(dev_per, float(np.max(np.abs(a - b))))
    tables = figures.density_tables(PARAMS)
    maxima = [t.max_value for t in tables]
    ms = figures.DENSITY_LEVELS
    pref = [(1.0 ** (2 * m) / math.factorial(m)) ** 2 for m in ms]
    dev_ratio = max(_rel(maxima[i] / maxima[i + 1], pref[i] / pref[i + 1]) for i in range(len(ms) - 1))
    worst = max(max(a / b, b / a) for a, b in zip(maxima, DENSITY_REFERENCE_MAXIMA))
    shown = ", ".join(f"{v:.2e}" for v in maxima)
    return {
        "|z0(t)| constant": _sub(dev_mod < 1e-12, f"max deviation {dev_mod:.1e} (< 1e-12)"),
        "2 pi / w* periodicity": _sub(dev_per < 1e-12, f"max deviation {dev_per:.1e} (< 1e-12)"),
        "maxima ratios follow (|z'|^2m / m!)^2": _sub(dev_ratio < 1e-10,
                                                      f"max relative deviation {dev_ratio:.1e} (< 1e-10)"),
        "maxima within 5x of reference": _sub(worst <= REFERENCE_FACTOR,
                                              f"maxima {shown} vs 0.04, 6e-4, 6e-6; worst factor {worst:.3g} (<= 5)"),
    }


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 17)}


@lru_cache(maxsize=None)
def evaluate(key):
    subs = CRITERIA[key]()
    RESULTS[key] = subs
    return subs


def format_line(key):
    subs = RESULTS[key]
    failed = [name for name, (ok, _) in subs.items() if not ok]
    status = "FAIL" if failed else "PASS"
    details = "; ".join(f"{name}: {detail}" for name, (_, detail) in subs.items())
    return f"[{status}] criterion {key:2d} {TITLES[key]} | {details}"


def _sub_ids():
    # names are fixed per criterion; list them without evaluating anything
    return [
        (1, "charge drift"), (1, "cyclotron frequency"), (1, "runtime"),
        (2, "{P1,P2} = -M* w*"), (2, "{K1,K2} = (1 - eB theta) M* w*"), (2, "{Pi,Kj} = 0"),
        (2, "library bracket agrees"),
        (3, "sum over m equals 1"),
        (4, "numeric vs closed form"),
        (5, "interior block deviation"), (5, "runtime"),
        (6, "U(t) vs label evolution"),
        (7, "brute force equals w*|z|^2"), (7, "printed w*|z| differs for |z| != 1"),
        (7, "printed w*|z| agrees at |z| = 1"),
        (8, "mean = variance = |z|^2, Q = 0"),
        (9, "(a) short-time quadrature"), (9, "(b) slice composition n <= 64"), (9, "(c) T -> 0 Gaussian amplitude"),
        (10, "exp(i theta sigma) closed form"), (10, "trace formula, same-axis pairs"),
        (10, "trace formula, orthogonal axes (supplementary)"), (10, "library trace vs expm"),
        (11, "sum = 2 exp(2 (r^2 + rho^2))"),
        (12, "moments equal 1 for n, m <= 10"), (12, "runtime"),
        (13, "F(0, theta, phi) = 1"), (13, "F >= 1 on 50^3 grid"), (13, "dispersion product identity"),
        (13, "collapse toward the critical point"),
        (14, "rotated quaternion matrix"), (14, "density closed form vs trace route"),
        (14, "maxima drop >= 10x per step"), (14, "maxima within 5x of reference"),
        (15, "unitarity on 20 random pairs"), (15, "angular integral branches"),
        (15, "mapped resolution at k_max = 4"), (15, "runtime"),
        (16, "|z0(t)| constant"), (16, "2 pi / w* periodicity"), (16, "maxima ratios follow (|z'|^2m / m!)^2"),
        (16, "maxima within 5x of reference"),
    ]


@pytest.mark.parametrize("key,name", _sub_ids(), ids=[f"c{k:02d}-{n}" for k, n in _sub_ids()])
def test_criterion(key, name):
    subs = evaluate(key)
    ok, detail = subs[name]
    assert ok, f"criterion {key} / {name}: {detail}"


def test_sub_check_names_are_complete():
    listed = {}
    for k, n in _sub_ids():
        listed.setdefault(k, set()).add(n)
    for key in CRITERIA:
        assert set(evaluate(key)) == listed[key]


if __name__ == "__main__":
    for key in CRITERIA:
        evaluate(key)
        print(format_line(key))
