"""The ``verify`` suite: named numeric checks with measured deviations.

Every check reports ``value`` (a deviation, smaller is better) against a
``tolerance``. Known disagreements between a printed closed form and the
computed one are reported with status ``documented-mismatch``; they never
fail the suite.
"""
from dataclasses import asdict, dataclass, replace
import math

import numpy as np

from . import classical, coherent, fock, numerics, propagator, quaternion, vcs, wigner
from .model import derive

PASS, FAIL, MISMATCH, SKIPPED = "pass", "fail", "documented-mismatch", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    paper_anchor: str
    value: float
    tolerance: float
    status: str

    def as_dict(self):
        return asdict(self)


def _graded(name, anchor, value, tol):
    value = float(value)
    ok = math.isfinite(value) and value <= tol
    return Check(name, anchor, value, tol, PASS if ok else FAIL)


def _mismatch(name, anchor, value, tol):
    """A printed closed form that the computation does not reproduce."""
    value = float(value)
    return Check(name, anchor, value, tol, PASS if value <= tol else MISMATCH)


# --- individual suites; each yields Check records ---------------------------

def _model_checks(params, ctx):
    d = derive(params)
    dev = abs(d.effective_frequency * d.effective_mass - params.eb)
    if math.isfinite(d.big_theta):
        dev = max(dev, abs(d.big_theta * params.eb * params.gap - 1.0))
    yield _graded("model.derived_identities", "effective mass and frequency", dev, 1e-12)


def _numerics_checks(params, ctx):
    rule = numerics.gauss_laguerre(ctx["radial_order"])
    ks = np.arange(2 * min(rule.order, 60))
    from scipy.special import gammaln

    moments = [rule.integrate(lambda u, k=k: np.exp(k * np.log(u) - gammaln(k + 1))) for k in ks]
    yield _graded("numerics.laguerre_moments", "radial substitution u = r^2", max(abs(m - 1) for m in moments), 1e-10)
    fourier = abs(numerics.trapezoid_periodic(lambda x: np.exp(3j * x), 16))
    yield _graded("numerics.trapezoid_fourier", "angular trapezoid rule", fourier, 1e-12)


def _classical_checks(params, ctx):
    d = derive(params)
    period = 2 * math.pi / d.effective_frequency
    pt0 = classical.PhaseSpacePoint(0.7, -0.2, 0.3, 1.1)
    traj = classical.integrate(pt0, params, dt=period / 1000, steps=10_000)
    q = classical.conserved_arrays(traj.t, traj.states, params)
    scale = np.maximum(np.abs(q[0]), 1e-300)
    drift = np.max(np.abs(q - q[0]) / np.max(scale))
    yield _graded("classical.conserved_drift", "conserved charges P and K", drift, 1e-6)
    w = classical.measure_frequency(traj.t, traj.states[:, 2])
    yield _graded("classical.cyclotron_frequency", "modified cyclotron frequency",
                  abs(w - d.effective_frequency) / d.effective_frequency, 1e-4)
    rng = ctx["rng"]
    pts = [classical.PhaseSpacePoint(*rng.uniform(-2, 2, 4), t=rng.uniform(0, 5)) for _ in range(100)]
    rep = classical.verify_charge_algebra(params, pts)
    yield _graded("classical.bracket_algebra", "Poisson bracket algebra of the charges", rep.max_deviation, 1e-8)


def _fock_checks(params, ctx):
    cfg = fock.FockConfig(ctx["n_max"])
    rng = ctx["rng"]
    c = np.zeros((cfg.dim, cfg.dim), dtype=complex)
    k = cfg.n_max // 2
    c[:k, :k] = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    s = fock.HSOperator(c)
    # [A, A_dag] = 1 and [B, B_dag] = 1 away from the truncation edge
    ca = fock.ladder_sequence(["A", "A_dag"], s) - fock.ladder_sequence(["A_dag", "A"], s) - s
    cb = fock.ladder_sequence(["B", "B_dag"], s) - fock.ladder_sequence(["B_dag", "B"], s) - s
    mixed = fock.ladder_sequence(["A", "B"], s) - fock.ladder_sequence(["B", "A"], s)
    dev = max(np.abs(ca.coeffs).max(), np.abs(cb.coeffs).max(), np.abs(mixed.coeffs).max())
    yield _graded("fock.ladder_commutators", "ladder operators on Hilbert-Schmidt states", dev, 1e-12)


def _coherent_checks(params, ctx):
    cfg = fock.FockConfig(ctx["n_max"])
    rng = ctx["rng"]
    dev = 0.0
    for za in (0.0, 0.5, 1.0, 1.5, 2.0):
        for zp in (0.0, 0.5, 1.0, 1.5, 2.0):
            dev = max(dev, abs(coherent.normalization(za * np.exp(0.3j), zp * np.exp(-1.1j), cfg) - 1.0))
    yield _graded("coherent.normalization", "coherent state normalization", dev, 1e-10)
    dev = 0.0
    for _ in range(20):
        z, z1, z2 = (complex(*rng.uniform(-1.5, 1.5, 2)) for _ in range(3))
        res = coherent.continuity_distance(z, z1, z2, 0, cfg)
        dev = max(dev, abs(res.numeric - res.closed_form))
    yield _graded("coherent.continuity", "continuity in the labels", dev, 1e-8)
    res = coherent.resolution_check(cfg, ctx["radial_order"], ctx["angular_order"])
    yield _graded("coherent.resolution", "resolution of the identity", res.max_deviation, 1e-6)
    label = coherent.CSLabel(0.8 - 0.4j, 0.6 + 0.2j, 2, 0.1)
    t = 0.37
    lhs = fock.evolve_state(coherent.build_cs(label, cfg), t, params)
    rhs = coherent.build_cs(coherent.evolve(label, t, params), cfg)
    yield _graded("coherent.temporal_stability", "temporal stability", np.abs(lhs.coeffs - rhs.coeffs).max(), 1e-14)
    act = coherent.action_expectation(coherent.CSLabel(1.5, 0.7), params, cfg)
    yield _graded("coherent.action_identity", "action identity (computed value w*|z|^2)",
                  abs(act.brute_force - act.expected), 1e-10)
    yield _mismatch("coherent.action_identity_printed", "action identity as printed (w*|z|)",
                    abs(act.brute_force - act.printed), 1e-10)
    dev = 0.0
    for za in (0.5, 1.0, 1.5):
        st = coherent.pnd_and_mandel(za, 0.8, range(cfg.dim), range(cfg.dim))
        dev = max(dev, abs(st.mean - za ** 2), abs(st.variance - za ** 2), abs(st.mandel_q))
    yield _graded("coherent.mandel_parameter", "Poissonian photon statistics", dev, 1e-10)
    dev = 0.0
    for _ in range(10):
        z0, z = (complex(*rng.uniform(-1.5, 1.5, 2)) for _ in range(2))
        tt = rng.uniform(0, 5)
        a = coherent.density(z0, z, 1.0, 2, tt, params)
        b = coherent.density_meijer(z0, z, 1.0, 2, tt, params)
        dev = max(dev, abs(a - b) / max(a, 1e-300))
    yield _graded("coherent.density_meijer", "temporal density via Meijer G", dev, 1e-10)


def _propagator_checks(params, ctx):
    names = ("propagator.short_time_quadrature", "propagator.slice_composition",
             "propagator.short_time_limit", "propagator.measure_bookkeeping")
    if params.theta == 0:
        for n in names:
            yield Check(n, "propagator", float("nan"), 0.0, SKIPPED)
        return
    dev = 0.0
    zs = (0.3 + 0.1j, -0.2 + 0.5j)
    for tau in (0.01, 0.1, 1.0):
        k = propagator.short_time_kernel(tau, params)
        num = propagator.short_time_kernel_quadrature(zs[0], zs[1], tau, params)
        dev = max(dev, abs(num - k(*zs)) / abs(k(*zs)))
    yield _graded(names[0], "short-time kernel", dev, 1e-8)
    dev = 0.0
    for n in (1, 2, 4, 8, 16, 32, 64):
        v = propagator.full_propagator(zs[0], zs[1], 1.0, n, params)
        e = propagator.closed_form_propagator(zs[0], zs[1], 1.0, params)
        dev = max(dev, abs(v - e) / abs(e))
    yield _graded(names[1], "composed propagator closed form", dev, 1e-10)
    c = propagator.momentum_scale(params)
    small = propagator.full_propagator(zs[0], zs[1], 1e-6, 4, params)
    target = c / params.theta * math.exp(-abs(zs[0] - zs[1]) ** 2)
    yield _graded(names[2], "short-time Gaussian transition amplitude", abs(abs(small) - target) / target, 1e-4)
    res = propagator.full_propagator(zs[0], zs[1], 1.0, 4, params, detail=True)
    yield _mismatch(names[3], "slice measure normalization", abs(res.literal_factor - 1.0), 1e-10)


def _quaternion_checks(params, ctx):
    rng = ctx["rng"]
    dev = 0.0
    for _ in range(50):
        th, ph, et = rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        oracle = quaternion.expm_series(1j * th * quaternion.sigma(ph, et))
        dev = max(dev, np.abs(quaternion.exp_i_sigma(th, ph, et) - oracle).max())
    yield _graded("quaternion.exp_closed_form", "exponential of i theta sigma", dev, 1e-12)
    dev_orth = dev_same = 0.0
    for _ in range(50):
        r, r0 = rng.uniform(0.1, 1.5, 2)
        th, th0 = rng.uniform(0, 2 * math.pi, 2)
        ph, et = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        q = quaternion.make(r, th, ph, et)
        printed = quaternion.trace_exp_printed(r, th, r0, th0)
        q0 = quaternion.make(r0, th0, *quaternion.orthogonal_axis(ph, et))
        dev_orth = max(dev_orth, abs(quaternion.trace_exp_sum(q, q0) - printed) / max(abs(printed), 1.0))
        q0s = quaternion.make(r0, th0, ph, et)
        dev_same = max(dev_same, abs(quaternion.trace_exp_sum(q, q0s) - printed) / max(abs(printed), 1.0))
    yield _graded("quaternion.trace_formula_orthogonal_axes", "trace of the exponential sum", dev_orth, 1e-10)
    yield _mismatch("quaternion.trace_formula_same_axis", "trace of the exponential sum, shared axis", dev_same, 1e-10)


def _vcs_checks(params, ctx):
    cfg = fock.FockConfig(ctx["n_max"])
    dev = 0.0
    for r, rho in ((0.5, 0.5), (1.0, 1.5), (1.5, 1.5)):
        lab = vcs.QVCSLabel(quaternion.make(r, 0.4, 0.7, 1.2), quaternion.make(rho, 2.1, 0.7, 1.2))
        # built states carry N^{-1/2}: a unit sum means the unnormalized sum equals N
        dev = max(dev, abs(vcs.qvcs_norm_bruteforce(lab, cfg) - 1.0))
    yield _graded("vcs.qvcs_normalization", "quaternionic coherent state normalization", dev, 1e-10)
    yield _graded("vcs.moment_problems", "moment problems", vcs.moment_problem_check(32, 10), 1e-10)
    d = derive(params)
    if math.isfinite(d.big_theta):
        r, th, ph = 0.8, 0.6, 1.0
        lab = vcs.QVCSLabel(quaternion.make(r, th, ph, 0.3), quaternion.make(0.5, 1.3, ph, 0.3))
        num = vcs.quadrature_expectations(lab, params, fock.FockConfig(40)).as_dict()
        ref = vcs.expectations_closed_form(r, th, ph, params).as_dict()
        dev = max(abs(num[k] - ref[k]) for k in ref)
        yield _graded("vcs.momentum_expectations", "momentum quadrature expectations", dev, 1e-10)
        grid = np.linspace(0, 2 * math.pi, 50)
        rr, tt, pp = np.meshgrid(np.linspace(0, 3, 50), grid, grid, indexing="ij")
        f = vcs.uncertainty_function(rr, tt, pp)
        yield _graded("vcs.uncertainty_floor", "uncertainty function F >= 1", max(0.0, 1.0 - f.min()), 0.0)
        resid = max(vcs.uncertainty_report(r, t, p, params).identity_residual
                    for r, t, p in ((0.0, 0.1, 0.2), (1.0, 0.6, 1.0), (math.sqrt(2), 2.0, 2.5)))
        yield _graded("vcs.uncertainty_identity", "dispersion product and F", resid, 1e-12)
        rep = vcs.uncertainty_report(1.0, 0.6, 1.0, params)
        printed = d.big_theta ** 2 / 64 * rep.f
        yield _mismatch("vcs.uncertainty_printed_prefactor", "position uncertainty prefactor as printed",
                        abs(rep.product - printed) / printed, 1e-12)
    wt = 0.7
    q = vcs.evolve_qvcs(vcs.QVCSLabel(quaternion.make(1.0, math.pi / 6, math.pi / 4, 0.3),
                                      quaternion.make(1.0, 0.2, math.pi / 4, 0.3)),
                        wt / d.effective_frequency, params).q
    dev = np.abs(q.mat - vcs.quaterntransf_matrix(1.0, math.pi / 6, math.pi / 4, 0.3, wt)).max()
    yield _graded("vcs.evolved_quaternion_matrix", "rotated quaternion matrix", dev, 1e-14)
    dev = 0.0
    rng = ctx["rng"]
    for _ in range(10):
        th0, th, t = rng.uniform(0, 2 * math.pi, 3)
        ph, et = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        q0 = quaternion.make(1.0, th0, ph, et)
        qq = quaternion.make(0.9, th, *quaternion.orthogonal_axis(ph, et))
        a = vcs.temporal_density(1.0, th0, 0.9, th, t, params, 2, 1.0)
        b = vcs.temporal_density_trace(q0, qq, t, params, 2, 1.0)
        dev = max(dev, abs(a - b) / max(abs(a), 1e-300))
    yield _graded("vcs.temporal_density_trace", "temporal density two routes", dev, 1e-10)


def _wigner_checks(params, ctx):
    basis = wigner.HermiteBasis(12)
    w = wigner.WignerTransform(basis)
    yield _graded("wigner.unitarity", "unitarity of the Wigner transform", w.unitarity_deficit(), 1e-4)
    norm = 64 * math.pi ** 4
    dev = max(np.abs(wigner.angular_orthogonality(d1, d2) - wigner.angular_orthogonality_closed(d1, d2)).max() / norm
              for d1, d2 in ((0, 0), (1, 0), (0, 3), (2, -1)))
    yield _graded("wigner.angular_orthogonality", "angular orthogonality integrals", dev, 1e-8)
    dev, _ = wigner.mapped_resolution_check(4)
    yield _graded("wigner.mapped_resolution", "mapped resolutions of the identity", dev, 1e-6)
    rng = ctx["rng"]
    x = wigner.B2Element(rng.normal(size=(13, 13)) + 1j * rng.normal(size=(13, 13)))
    y = wigner.B2Element(rng.normal(size=(13, 13)) + 1j * rng.normal(size=(13, 13)))
    dev = max(np.abs(wigner.map_J(wigner.map_J(x)).coeffs - x.coeffs).max(),
              abs(wigner.map_J(x).inner(wigner.map_J(y)) - np.conj(x.inner(y))))
    yield _graded("wigner.antiunitary_map", "antiunitary map J", dev, 1e-12)


def _figure_checks(params, ctx):
    from . import figures

    d4 = [t.max_value for t in figures.qvcs_density_tables(params, n_angle=13, n_t=13)[:3]]
    printed = (0.2, 0.01, 1e-4)
    decrease = min(d4[i] / d4[i + 1] for i in range(2))
    yield _graded("figures.qvcs_density_decrease", "temporal QVCS density maxima", 10.0 / decrease, 1.0)
    yield _mismatch("figures.qvcs_density_magnitudes", "printed temporal QVCS density maxima",
                    max(abs(math.log(a / b)) for a, b in zip(d4, printed)), math.log(5.0))
    d1 = [t.max_value for t in figures.density_tables(params, n_arg=7, n_t=6)]
    printed = (0.04, 6e-4, 6e-6)
    yield _mismatch("figures.density_magnitudes", "printed temporal density maxima",
                    max(abs(math.log(a / b)) for a, b in zip(d1, printed)), math.log(5.0))


SUITES = (_model_checks, _numerics_checks, _classical_checks, _fock_checks, _coherent_checks,
          _propagator_checks, _quaternion_checks, _vcs_checks, _wigner_checks, _figure_checks)


def run_checks(params, n_max=64, radial_order=numerics.DEFAULT_RADIAL_ORDER,
               angular_order=numerics.DEFAULT_ANGULAR_ORDER, seed=0):
    """Run every suite; returns the list of :class:`Check` records."""
    derive(params)
    ctx = {"n_max": n_max, "radial_order": radial_order, "angular_order": angular_order,
           "rng": np.random.default_rng(seed)}
    out = []
    for suite in SUITES:
        out.extend(suite(params, ctx))
    return out


def summary(checks):
    counts = {}
    for c in checks:
        counts[c.status] = counts.get(c.status, 0) + 1
    return counts


def all_passed(checks):
    return not any(c.status == FAIL for c in checks)
