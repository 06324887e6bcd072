import csv
import json
import math

import numpy as np
import pytest

from transcoherent.catalysis import (
    compare_catalysts,
    golden_section_min,
    optimize_time,
    run_catalysis,
)
from transcoherent.fock import make_coherent, make_fock, mean_photon
from transcoherent.jcm import JcmParams, JointState, coherence_gap, evolve
from transcoherent.pulses import PulseSpec, build


def test_golden_section_on_parabola():
    x, fx = golden_section_min(lambda x: (x - 0.3) ** 2, -1.0, 2.0)
    assert abs(x - 0.3) < 1e-10
    assert fx < 1e-20


def test_vacuum_is_flat_and_ties_go_low():
    opt = optimize_time(make_fock(0, 2), t_lo=0.2, t_hi=2.0)
    assert opt.t == 0.2
    assert abs(opt.p - 0.5) < 1e-15


def test_empty_range():
    with pytest.raises(ValueError):
        optimize_time(make_fock(1), t_lo=1.0, t_hi=1.0)


@pytest.mark.parametrize("n_max", [1, 3, 10, 30])
def test_perfect_field_optimum(n_max):
    spec = PulseSpec.ground(n_max)
    opt = optimize_time(build(spec))
    assert abs(opt.t - spec.t) < 1e-8
    assert abs(opt.p - 1) < 1e-10


def test_optimum_beats_dense_scan():
    field = make_coherent(2.5)
    opt = optimize_time(field)
    for t in np.linspace(0.01, math.pi, 3000):
        gap = coherence_gap(evolve(JointState.ground(field), t)) / 2
        assert opt.failure <= gap + 1e-12


def test_first_event_is_perfect():
    spec = PulseSpec.ground(20)
    trace = run_catalysis(build(spec), 3)
    assert abs(trace.events[0].p_event - 1) < 1e-10
    assert abs(trace.events[0].t_star - spec.t) < 1e-8


def test_trace_invariants():
    trace = run_catalysis(build(PulseSpec.ground(40)), 15)
    p = trace.p_event
    assert np.all((p >= 0) & (p <= 1))
    assert np.all(np.diff(trace.cumulative) <= 0)
    assert len(trace.events) <= trace.requested
    np.testing.assert_allclose(trace.cumulative, np.cumprod(p), rtol=1e-14)


def test_energy_bookkeeping():
    n_events = 10
    trace = run_catalysis(build(PulseSpec.ground(60)), n_events)
    means = np.array(trace.field_means)
    assert np.all(np.diff(means) >= -1.0)
    drop = means[0] - means[-1]
    assert abs(drop - n_events / 2) < 0.1 * n_events / 2


def test_fixed_phase_mode():
    field = build(PulseSpec.ground(20))
    trace = run_catalysis(field, 2, phi=0.3, optimize_phase=False)
    assert all(ev.phi == 0.3 for ev in trace.events)
    assert trace.events[0].p_event < 1


def test_catalysis_rejects_zero_events():
    with pytest.raises(ValueError):
        run_catalysis(make_fock(1), 0)


def test_transcoherent_beats_coherent():
    trans = build(PulseSpec.ground(40))
    coh = make_coherent(math.sqrt(mean_photon(trans)))
    a, b = compare_catalysts(trans, coh, 10)
    assert np.all(a.cumulative > b.cumulative)


def test_compare_identical_inputs():
    field = make_coherent(2.0)
    a, b = compare_catalysts(field, field, 4)
    assert a.to_dict() == b.to_dict()


def test_compare_rejects_mismatched_means():
    with pytest.raises(ValueError):
        compare_catalysts(make_coherent(2.0), make_coherent(3.0), 2)


def test_trace_serialization(tmp_path):
    trace = run_catalysis(build(PulseSpec.ground(9)), 3, JcmParams.from_ratio(0.2))
    trace.write_csv(tmp_path / "t.csv")
    trace.write_json(tmp_path / "t.json")
    rows = list(csv.reader(open(tmp_path / "t.csv")))
    assert rows[0] == ["event", "t_star", "p_event", "p_cumulative"]
    assert len(rows) == 4
    assert float(rows[3][3]) == trace.events[2].p_cumulative
    data = json.load(open(tmp_path / "t.json"))
    assert [ev["event"] for ev in data["events"]] == [1, 2, 3]
