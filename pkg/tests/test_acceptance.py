"""
Acceptance criteria, one test each, held to their stated tolerances.

Every test prints a single PASS/FAIL line with the measured value and the
runtime. Run directly for the summary alone:

    python3 tests/test_acceptance.py
"""

import math
import sys
import time

import numpy as np
import pytest

from transcoherent.analysis import coherence_gap_at, fit_gaussian, power_law_fit, squeezing_db
from transcoherent.catalysis import compare_catalysts
from transcoherent.figures import catalyst_pair, event2_failure_table
from transcoherent.fock import mean_photon
from transcoherent.jcm import (
    JcmParams,
    JointState,
    coherence_C,
    coherence_gap,
    evolve,
    optimal_phase,
    reduce_atom,
    success_P,
)
from transcoherent.oracle import rk4_evolve
from transcoherent.pulses import (
    PulseSpec,
    build,
    build_ground,
    peak_photon,
    reverse_pulse,
    stationary_time,
    trig_expansion_residual,
    truncation_n_max,
)
from transcoherent.verify import run_checks


def after_pulse(spec, field=None):
    field = build(spec) if field is None else field
    start = JointState.ground if spec.start == "ground" else JointState.excited
    return evolve(start(field, spec.params), spec.t)


def criterion_1():
    worst_gap, worst_purity = 0.0, 0.0
    for n_max in range(1, 41):
        out = after_pulse(PulseSpec.ground(n_max))
        worst_gap = max(worst_gap, coherence_gap(out))
        worst_purity = max(worst_purity, 1 - reduce_atom(out).purity())
    ok = worst_gap <= 1e-10 and worst_purity <= 1e-10
    return ok, f"max 1-C={worst_gap:.2e}, max 1-purity={worst_purity:.2e}", 1.0


def criterion_2():
    gaps = {}
    for n_min, n_max in [(0, 3), (3, 15)]:
        spec = PulseSpec.excited(n_min, n_max)
        gaps[(n_min, n_max)] = coherence_gap(after_pulse(spec))
    ok = all(g <= 1e-10 for g in gaps.values())
    return ok, ", ".join(f"{k}: 1-C={v:.2e}" for k, v in gaps.items()), 1.0


def criterion_3():
    t13 = math.pi / math.sqrt(13)
    gap13 = coherence_gap_at(t13, "truncated")
    worst2, worst3 = 0.0, 0.0
    for wt in np.linspace(0.05, math.pi, 1500):
        n_max = truncation_n_max(wt)
        gap = coherence_gap_at(wt, "truncated")
        if n_max == 2:
            worst2 = max(worst2, gap)
        elif n_max >= 3:
            worst3 = max(worst3, gap)
    ok = 1 - worst2 >= 0.997 and 1 - worst3 >= 0.9999 and gap13 <= 1e-12
    return ok, f"min C (n_max=2)={1 - worst2:.5f}, min C (n_max>=3)={1 - worst3:.6f}, 1-C at pi/sqrt13={gap13:.1e}", 1.0


def criterion_4():
    gaps = []
    for alpha in (4, 8, 16):
        gaps.append(coherence_gap_at(math.pi / (2 * alpha), "coherent"))
    ratios = [gaps[0] / gaps[1], gaps[1] / gaps[2]]
    ok = all(abs(r - 4) <= 0.25 * 4 for r in ratios)
    return ok, f"ratios {ratios[0]:.4f}, {ratios[1]:.4f}", 5.0


def criterion_5():
    results = {}
    cases = [
        ("ground k=0", PulseSpec.ground(100), math.pi / 2),
        ("ground k=1", PulseSpec.ground(k=1, n_min=16), 5 * math.pi / 2),
        ("excited k=0", PulseSpec.excited(24), 3 * math.pi / 2),
    ]
    ok = True
    for name, spec, target in cases:
        field = build(spec)
        mean, var = fit_gaussian(field.probs)
        ok &= mean_photon(field) >= 25
        rel = (mean / var) / target
        results[name] = rel
        ok &= abs(rel - 1) <= 0.10
    db = squeezing_db(build_ground(PulseSpec.ground(100)))
    ok &= abs(db - 1.96) <= 0.3
    detail = ", ".join(f"{k}: {v:.3f} of target" for k, v in results.items())
    return bool(ok), f"{detail}; ground squeezing {db:.3f} dB", 10.0


def criterion_6():
    params = JcmParams.from_ratio(0.5)
    worst = 0.0
    for n_max in (4, 16):
        spec = PulseSpec.ground(n_max, params=params)
        for turns in (0, 1):
            tau = (math.pi + 2 * math.pi * turns) / params.omega - spec.t
            out = reverse_pulse(build(spec), spec.t, tau, spec.t, params)
            worst = max(worst, out.excited_population())
    return worst <= 1e-10, f"max excited population {worst:.2e}", 1.0


def _catalysis_pair(nbar, n_events):
    trans, coh = catalyst_pair(nbar)
    return compare_catalysts(trans, coh, n_events)


def criterion_7a():
    trans, _ = _catalysis_pair(25, 50)
    final = trans.cumulative[-1]
    return final >= 0.9, f"n_bar={trans.initial_mean:.3f}, cumulative after 50 events {final:.4f}", 300.0


def criterion_7b():
    trans, coh = _catalysis_pair(25, 50)
    ok = bool(np.all(coh.cumulative < trans.cumulative))
    gap = np.min(trans.cumulative - coh.cumulative)
    return ok, f"smallest cumulative lead {gap:.3e} over 50 events", 300.0


def criterion_7c():
    trans, coh = _catalysis_pair(100, 200)
    ratio = (1 - trans.cumulative[-1]) / (1 - coh.cumulative[-1])
    return ratio <= 0.1, (
        f"n_bar={trans.initial_mean:.3f}, cumulative failure ratio after 200 events {ratio:.3f}"
        f" (transcoherent {1 - trans.cumulative[-1]:.4f}, coherent {1 - coh.cumulative[-1]:.4f})"
    ), 300.0


def criterion_8():
    table = event2_failure_table()
    lo, hi = table.x.min(), table.x.max()
    assert lo >= math.pi / 10 - 1e-12 and hi <= math.pi / 2 + 1e-12
    _, exponent = power_law_fit(table)
    return 4.5 <= exponent <= 6.5, f"fitted exponent {exponent:.4f} over [{lo:.4f}, {hi:.4f}]", 120.0


def criterion_9():
    rng = np.random.default_rng(7)
    worst_oracle = 0.0
    for n_cut in (1, 3, 5, 8):
        for ratio in (0.0, 0.6):
            params = JcmParams.from_ratio(ratio)
            g = rng.normal(size=n_cut + 1) + 1j * rng.normal(size=n_cut + 1)
            e = rng.normal(size=n_cut + 1) + 1j * rng.normal(size=n_cut + 1)
            e[-1] = 0
            scale = math.sqrt(np.sum(np.abs(g) ** 2) + np.sum(np.abs(e) ** 2))
            state = JointState(g / scale, e / scale, params)
            t = rng.uniform(0.2, 2.5)
            out = evolve(state, t)
            rg, re = rk4_evolve(state.g_amps, state.e_amps, t, params.omega0, params.omega)
            err = max(np.max(np.abs(rg[:-1] - out.g_amps)), np.max(np.abs(re[:-1] - out.e_amps)),
                      abs(rg[-1]), abs(re[-1]))
            worst_oracle = max(worst_oracle, err)
    worst_cp = 0.0
    for _ in range(50):
        g = rng.normal(size=4) + 1j * rng.normal(size=4)
        e = rng.normal(size=4) + 1j * rng.normal(size=4)
        scale = math.sqrt(np.sum(np.abs(g) ** 2) + np.sum(np.abs(e) ** 2))
        rho = reduce_atom(JointState(g / scale, e / scale))
        worst_cp = max(worst_cp, abs(coherence_C(rho) - (2 * success_P(rho, optimal_phase(rho)) - 1)))
    invariants = [r for r in run_checks(1e-10) if r.name.split(".")[1] in (
        "norm_conservation", "manifold_conservation", "composition", "reversibility",
        "omega_independence", "norms", "renormalize_idempotent")]
    failed = [r.name for r in invariants if not r.passed]
    ok = worst_oracle <= 1e-8 and worst_cp <= 1e-12 and not failed and len(invariants) >= 5
    return ok, (f"oracle {worst_oracle:.1e}, C-2P+1 {worst_cp:.1e},"
                f" invariants {len(invariants) - len(failed)}/{len(invariants)}"), 30.0


def criterion_10():
    inverse = max(abs(peak_photon(stationary_time(n)) - n) for n in (0.5, 3.0, 25.0, 100.0, 1e3))
    quarter = max(abs(mean_photon(build_ground(PulseSpec.ground(n))) / n - 0.25) / 0.25
                  for n in (25, 50, 100, 200))
    ratios = [trig_expansion_residual(n) / trig_expansion_residual(2 * n) for n in (25, 50, 100, 200)]
    ok = inverse <= 1e-9 and quarter <= 0.10 and all(abs(r - 4) <= 1.0 for r in ratios)
    return ok, (f"peak inverse {inverse:.1e}, quarter rule {quarter:.3f},"
                f" residual ratios {min(ratios):.3f}..{max(ratios):.3f}"), 5.0


CRITERIA = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "5": criterion_5,
    "6": criterion_6,
    "7a": criterion_7a,
    "7b": criterion_7b,
    "7c": criterion_7c,
    "8": criterion_8,
    "9": criterion_9,
    "10": criterion_10,
}


def evaluate(key):
    start = time.perf_counter()
    ok, detail, budget = CRITERIA[key]()
    elapsed = time.perf_counter() - start
    in_time = elapsed <= budget
    status = "PASS" if ok and in_time else "FAIL"
    line = f"criterion {key:>3}: {status}  {detail}  [{elapsed:.2f} s, budget {budget:g} s]"
    return ok and in_time, line


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key, capsys):
    passed, line = evaluate(key)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(key) for key in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
