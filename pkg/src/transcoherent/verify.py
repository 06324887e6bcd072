"""
Self-check suite behind ``transcoherent verify``.

Each check returns the error it measured and the threshold it was held to.
Precision checks are held to the run tolerance; asymptotic checks carry their
own fixed relative tolerances.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import analysis, catalysis, fock, jcm, oracle, pulses
from .fock import FieldState
from .jcm import JcmParams, JointState

DEFAULT_TOL = 1e-10


@dataclass
class CheckResult:
    name: str
    error: float
    threshold: float

    @property
    def passed(self):
        return bool(np.isfinite(self.error) and self.error <= self.threshold)

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _weyl(count, offset):
    """Deterministic equidistributed numbers in [0, 1)."""
    j = np.arange(1, count + 1)
    return np.mod(j * 0.6180339887498949 + offset * 0.4142135623730951, 1.0)


def sample_joint(n_cut, offset, params=None):
    """A fixed, generic joint state for invariant checks."""
    u = _weyl(4 * (n_cut + 1), offset)
    amp = u[0::4] + 0.1
    ph = 2 * math.pi * u[1::4]
    g = amp * np.exp(1j * ph)
    e = (u[2::4] + 0.1) * np.exp(2j * math.pi * u[3::4])
    norm = math.sqrt(np.sum(np.abs(g) ** 2) + np.sum(np.abs(e) ** 2))
    return JointState(g / norm, e / norm, params or JcmParams())


def sample_field(n_cut, offset):
    u = _weyl(2 * (n_cut + 1), offset)
    return FieldState.from_amplitudes((u[0::2] + 0.05) * np.exp(2j * math.pi * u[1::2]))


def _max_diff(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def check_fock_norms(tol):
    states = [fock.make_fock(3, 6), fock.make_coherent(3.0), fock.make_gaussian(20, 7)]
    return max(abs(np.sum(s.probs) - 1.0) for s in states)


def check_renormalize_idempotent(tol):
    s = sample_field(12, 1)
    once = s.renormalized()
    return _max_diff(once.amps, once.renormalized().amps)


def check_overlap_bound(tol):
    worst = 0.0
    for k in range(20):
        a, b = sample_field(9, k), sample_field(9, k + 50)
        worst = max(worst, abs(fock.overlap(a, b)) - 1.0)
    return max(worst, 0.0)


def check_coherent_moments(tol):
    s = fock.make_coherent(3.0)
    return max(abs(fock.mean_photon(s) - 9.0), abs(fock.variance_photon(s) - 9.0))


def check_norm_conservation(tol):
    worst = 0.0
    for k, t in enumerate(np.linspace(0.0, 20.0, 9)):
        s = sample_joint(10, k)
        worst = max(worst, abs(jcm.evolve(s, t).norm() - 1.0))
    return worst


def check_composition(tol):
    s = sample_joint(8, 3, JcmParams(1.0, 2.0))
    a = jcm.evolve(jcm.evolve(s, 0.7), 1.9)
    b = jcm.evolve(s, 2.6)
    return max(_max_diff(a.g_amps, b.g_amps), _max_diff(a.e_amps, b.e_amps))


def check_reversibility(tol):
    s = sample_joint(8, 4, JcmParams(1.0, 1.5))
    back = jcm.evolve(jcm.evolve(s, 3.3), -3.3)
    n = s.g_amps.size
    return max(_max_diff(back.g_amps[:n], s.g_amps), _max_diff(back.e_amps[:n], s.e_amps))


def check_manifold_conservation(tol):
    s = sample_joint(8, 5, JcmParams(1.0, 0.5))
    out = jcm.evolve(s, 4.1)
    before = s.manifold_populations()
    after = out.manifold_populations()
    return _max_diff(before, after[: before.size])


def check_omega_independence(tol):
    field = sample_field(10, 6)
    worst = 0.0
    for start in (JointState.ground, JointState.excited):
        vals = []
        for ratio in (0.0, 5.0):
            p = JcmParams.from_ratio(ratio)
            out = jcm.evolve(start(field, p), 1.3)
            rho = jcm.reduce_atom(out)
            vals.append((jcm.coherence_C(rho), jcm.success_P(rho, jcm.optimal_phase(rho))))
        worst = max(worst, _max_diff(vals[0], vals[1]))
    return worst


def check_oracle(tol):
    worst = 0.0
    for k, (ratio, t) in enumerate([(0.0, 1.1), (1.0, 2.0)]):
        p = JcmParams.from_ratio(ratio)
        s = sample_joint(6, 10 + k, p)
        g_ref, e_ref = oracle.rk4_evolve(s.g_amps, s.e_amps, t, p.omega0, p.omega, dt=1e-4)
        out = jcm.evolve(s, t)
        n = out.g_amps.size
        worst = max(worst, _max_diff(out.g_amps, g_ref[:n]), _max_diff(out.e_amps, e_ref[:n]))
    return worst


def check_c_equals_2p_minus_1(tol):
    worst = 0.0
    for k in range(10):
        rho = jcm.reduce_atom(jcm.evolve(sample_joint(7, 20 + k), 0.3 * k))
        p = jcm.success_P(rho, jcm.optimal_phase(rho))
        worst = max(worst, abs(jcm.coherence_C(rho) - (2 * p - 1)))
    return worst


def check_density_matrix(tol):
    rho = jcm.reduce_atom(jcm.evolve(sample_joint(9, 30), 2.2))
    ev = rho.eigenvalues()
    return max(
        _max_diff(rho.rho, rho.rho.conj().T),
        abs(np.trace(rho.rho) - 1.0),
        max(0.0, -ev.min(), ev.max() - 1.0),
    )


def check_pair_coherence(tol):
    worst = 0.0
    for n in range(0, 6):
        f = fock.FieldState.from_amplitudes(np.r_[np.zeros(n), 1.0, 1.0])
        for t in (0.4, 1.0, 2.5):
            c = jcm.coherence_C(jcm.reduce_atom(jcm.evolve(JointState.ground(f), t)))
            worst = max(worst, abs(c - jcm.pair_coherence(n, t)))
    return worst


def _ground_outcome(n_max, params=None):
    spec = pulses.PulseSpec.ground(n_max, params=params)
    f = pulses.build_ground(spec)
    return spec, f, jcm.evolve(JointState.ground(f, spec.params), spec.t)


def check_perfect_ground(tol):
    worst = 0.0
    for n_max in range(1, 41):
        _, _, out = _ground_outcome(n_max)
        rho = jcm.reduce_atom(out)
        worst = max(worst, jcm.coherence_gap(out), 1.0 - rho.purity())
    return worst


def check_separability(tol):
    return max(1.0 - jcm.schmidt_coefficients(_ground_outcome(n, JcmParams(1, 0.8))[2])[0]
               for n in (1, 5, 17, 40))


def check_post_field(tol):
    worst = 0.0
    p = JcmParams(1.0, 0.7)
    for n_max in (3, 12, 30):
        spec, f, out = _ground_outcome(n_max, p)
        n = np.arange(f.amps.size)
        cos_prev = np.cos(0.5 * p.omega0 * np.sqrt(n) * spec.t)
        want = f.amps * np.exp(-1j * n * p.omega * spec.t) * cos_prev
        _, got = jcm.project_atom(out, 0.0)
        want = want / np.linalg.norm(want)
        phase = np.vdot(want, got.amps[: want.size])
        worst = max(worst, _max_diff(got.amps[: want.size], want * phase / abs(phase)))
    return worst


def check_perfect_excited(tol):
    worst = 0.0
    for n_min in (0, 3, 8, 24):
        spec = pulses.PulseSpec.excited(n_min)
        out = jcm.evolve(JointState.excited(pulses.build_excited(spec)), spec.t)
        worst = max(worst, jcm.coherence_gap(out))
    return worst


def check_perfect_higher_order(tol):
    worst = 0.0
    for spec in (pulses.PulseSpec.ground(k=1, n_min=4), pulses.PulseSpec.ground(k=2, n_min=16),
                 pulses.PulseSpec.excited(8, k=1)):
        f = pulses.build(spec)
        start = JointState.ground if spec.start == pulses.GROUND else JointState.excited
        worst = max(worst, jcm.coherence_gap(jcm.evolve(start(f), spec.t)))
    return worst


def check_concatenated(tol):
    blocks = [pulses.PulseSpec.ground(1), pulses.PulseSpec.ground(k=1, n_min=4),
              pulses.PulseSpec.ground(k=2, n_min=16)]
    f = pulses.build_concatenated(blocks, [1.0, 0.5j, -0.3])
    return jcm.coherence_gap(jcm.evolve(JointState.ground(f), blocks[0].t))


def check_truncated_bounds(tol):
    # Returns the worst excess over the 0.997 / 0.9999 floors (0 when they hold).
    excess = 0.0
    for t in np.linspace(math.pi / math.sqrt(2) + 1e-9, math.pi * (1 - 1e-9), 40):
        excess = max(excess, analysis.coherence_gap_at(t, "truncated") - 3e-3)
    for t in np.geomspace(0.05, math.pi / math.sqrt(2), 120):
        if pulses.truncation_n_max(t) >= 3:
            excess = max(excess, analysis.coherence_gap_at(t, "truncated") - 1e-4)
    return excess


def check_peak_inverse(tol):
    return max(abs(pulses.peak_photon(pulses.stationary_time(n)) - n) / n for n in (1, 5, 50))


def check_stationary_peak(tol):
    bad = 0
    for nbar in (2.4, 5.3, 11.0, 20.7, 50.5):
        a = np.abs(pulses.build_truncated(pulses.stationary_time(nbar)).amps)
        top = max(a[math.floor(nbar)], a[math.ceil(nbar)])
        bad += top < a.max() * (1 - 1e-12)
    return float(bad)


def check_quarter_rule(tol):
    return max(abs(fock.mean_photon(pulses.build_ground(pulses.PulseSpec.ground(n))) / n - 0.25) / 0.25
               for n in (25, 50, 100))


def check_gaussian_limit(tol):
    f = pulses.build_ground(pulses.PulseSpec.ground(100))
    m, v = analysis.fit_gaussian(f.probs)
    return abs(v / (2 * m / math.pi) - 1.0)


def check_order_squeezing(tol):
    cases = [(pulses.PulseSpec.ground(100), math.pi / 2),
             (pulses.PulseSpec.ground(k=1, n_min=16), 5 * math.pi / 2),
             (pulses.PulseSpec.excited(15), 3 * math.pi / 2)]
    worst = 0.0
    for spec, want in cases:
        m, v = analysis.fit_gaussian(pulses.build(spec).probs)
        worst = max(worst, abs(m / v / want - 1.0))
    return worst


def check_trig_expansion(tol):
    r = [pulses.trig_expansion_residual(n) for n in (50, 100, 200)]
    return max(abs(r[0] / r[1] / 4 - 1), abs(r[1] / r[2] / 4 - 1))


def check_reverse_pulse(tol):
    worst = 0.0
    p = JcmParams(1.0, 1.0)
    for n_max in (4, 16):
        spec = pulses.PulseSpec.ground(n_max, params=p)
        tau = (math.pi - p.omega * spec.t) % (2 * math.pi) / p.omega
        out = pulses.reverse_pulse(pulses.build_ground(spec), spec.t, tau, spec.t, p)
        worst = max(worst, out.excited_population())
    return worst


def check_catalysis_first_event(tol):
    spec = pulses.PulseSpec.ground(9)
    tr = catalysis.run_catalysis(pulses.build_ground(spec), 1)
    return 1.0 - tr.events[0].p_event


def check_optimal_time(tol):
    worst = 0.0
    for n_max in (2, 9, 30):
        spec = pulses.PulseSpec.ground(n_max)
        worst = max(worst, abs(catalysis.optimize_time(pulses.build_ground(spec)).t - spec.t))
    return worst


def check_cumulative_product(tol):
    tr = catalysis.run_catalysis(pulses.build_ground(pulses.PulseSpec.ground(16)), 6)
    return abs(tr.cumulative[-1] - float(np.prod(tr.p_event))) / tr.cumulative[-1]


def check_event2_monotone(tol):
    fails = [catalysis.run_catalysis(pulses.build_ground(pulses.PulseSpec.ground(n)), 2).failure[1]
             for n in (4, 9, 16, 25, 49, 100)]
    return float(np.sum(np.diff(fails) >= 0))


def check_energy_bookkeeping(tol):
    n_max, f = pulses.ground_state_for_mean(10)
    tr = catalysis.run_catalysis(f, 10)
    drop = tr.field_means[0] - tr.field_means[-1]
    return abs(drop / 5.0 - 1.0)


def check_fit_translation(tol):
    p = pulses.build_ground(pulses.PulseSpec.ground(60)).probs
    m0, v0 = analysis.fit_gaussian(p)
    m1, v1 = analysis.fit_gaussian(np.r_[np.zeros(7), p])
    return max(abs(m1 - m0 - 7), abs(v1 - v0))


def check_squeezing_db(tol):
    worst = 0.0
    for s in (1.0, math.pi / 2, 3 * math.pi / 2):
        db = analysis.squeezing_db(fock.make_gaussian(100, 100 / s))
        worst = max(worst, abs(db - 10 * math.log10(s)))
    return worst


def check_power_law_self(tol):
    x = np.linspace(0.5, 3.0, 12)
    amp, exp = analysis.power_law_fit(analysis.SweepTable(x, 2 * x**3))
    return max(abs(amp - 2), abs(exp - 3))


# name -> (function, fixed threshold or None for "use the run tolerance")
CHECKS = {
    "fock.norms": (check_fock_norms, None),
    "fock.renormalize_idempotent": (check_renormalize_idempotent, None),
    "fock.overlap_cauchy_schwarz": (check_overlap_bound, None),
    "fock.coherent_moments": (check_coherent_moments, 1e-6),
    "jcm.norm_conservation": (check_norm_conservation, None),
    "jcm.composition": (check_composition, None),
    "jcm.reversibility": (check_reversibility, None),
    "jcm.manifold_conservation": (check_manifold_conservation, None),
    "jcm.omega_independence": (check_omega_independence, None),
    "jcm.rk4_oracle": (check_oracle, None),
    "jcm.c_equals_2p_minus_1": (check_c_equals_2p_minus_1, None),
    "jcm.density_matrix_valid": (check_density_matrix, None),
    "jcm.pair_coherence": (check_pair_coherence, None),
    "pulses.perfect_ground": (check_perfect_ground, None),
    "pulses.separable_after_pulse": (check_separability, None),
    "pulses.post_pulse_field": (check_post_field, None),
    "pulses.perfect_excited": (check_perfect_excited, None),
    "pulses.perfect_higher_order": (check_perfect_higher_order, None),
    "pulses.concatenated": (check_concatenated, None),
    "pulses.truncated_bounds": (check_truncated_bounds, 0.0),
    "pulses.peak_inverse": (check_peak_inverse, None),
    "pulses.stationary_peak": (check_stationary_peak, 0.0),
    "pulses.quarter_rule": (check_quarter_rule, 0.10),
    "pulses.gaussian_limit": (check_gaussian_limit, 0.10),
    "pulses.order_squeezing": (check_order_squeezing, 0.10),
    "pulses.trig_expansion": (check_trig_expansion, 0.25),
    "pulses.reverse_pulse": (check_reverse_pulse, None),
    "catalysis.first_event_perfect": (check_catalysis_first_event, None),
    "catalysis.optimal_time": (check_optimal_time, 1e-8),
    "catalysis.cumulative_product": (check_cumulative_product, None),
    "catalysis.event2_monotone": (check_event2_monotone, 0.0),
    "catalysis.energy_bookkeeping": (check_energy_bookkeeping, 0.10),
    "analysis.fit_translation": (check_fit_translation, None),
    "analysis.squeezing_db": (check_squeezing_db, 0.1),
    "analysis.power_law_self": (check_power_law_self, None),
}


def run_checks(tol=DEFAULT_TOL):
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    results = []
    for name, (fn, fixed) in CHECKS.items():
        err = float(fn(tol))
        results.append(CheckResult(name, err, tol if fixed is None else fixed))
    return results
