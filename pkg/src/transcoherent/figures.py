"""Data behind each figure, as named :class:`SweepTable` objects."""

from __future__ import annotations

import math

import numpy as np

from .analysis import SweepTable, coherence_sweep, default_time_grid, power_law_fit
from .catalysis import compare_catalysts, run_catalysis
from .fock import make_coherent, mean_photon
from .jcm import JcmParams
from .pulses import PulseSpec, build_excited, build_ground, ground_state_for_mean

FIG1_NMAX = (1, 2, 4, 9, 16, 25, 49, 100)
FIG2_NMIN = (0, 1, 3, 7, 15, 24)
FIG4_NMAX = tuple(range(4, 101))
FIG5_NBAR = (25, 100)


def _distribution(state, name, **meta):
    n = np.arange(state.amps.size)
    return name, SweepTable(n, state.probs, "n", "probability", meta)


def _matched_coherent(alpha, name, **meta):
    return _distribution(make_coherent(alpha), name, alpha=alpha, **meta)


def fig1(params=None):
    """Ground-start distributions and the coherent states of a classical pi/2 pulse."""
    params = params or JcmParams()
    out = []
    for n_max in FIG1_NMAX:
        spec = PulseSpec.ground(n_max, params=params)
        wt = params.omega0 * spec.t
        out.append(_distribution(build_ground(spec), f"transcoherent_nmax{n_max}",
                                 builder="ground", n_max=n_max, omega0_t=wt))
        out.append(_matched_coherent(math.pi / (2 * wt), f"coherent_nmax{n_max}", omega0_t=wt))
    return out


def fig2(params=None):
    """Excited-start distributions and the coherent states of a classical 3pi/2 pulse."""
    params = params or JcmParams()
    out = []
    for n_min in FIG2_NMIN:
        spec = PulseSpec.excited(n_min, params=params)
        wt = params.omega0 * spec.t
        out.append(_distribution(build_excited(spec), f"transcoherent_nmin{n_min}",
                                 builder="excited", n_min=n_min, n_max=spec.n_max, omega0_t=wt))
        out.append(_matched_coherent(3 * math.pi / (2 * wt), f"coherent_nmin{n_min}", omega0_t=wt))
    return out


def fig3(params=None, grid_points=200):
    """Coherence gap of truncated recursion states and of coherent pi/2 pulses."""
    params = params or JcmParams()
    grid = default_time_grid(grid_points) / params.omega0
    return [
        ("truncated", coherence_sweep(grid, "truncated", params)),
        ("coherent", coherence_sweep(grid, "coherent", params)),
    ]


def event2_failure_table(params=None, n_values=FIG4_NMAX, grid_points=512):
    """Failure of the second catalysis event against the first pulse time ``pi / sqrt(n)``."""
    params = params or JcmParams()
    rows = []
    for n in n_values:
        spec = PulseSpec.ground(n, params=params)
        tr = run_catalysis(build_ground(spec), 2, params, grid_points=grid_points)
        rows.append((params.omega0 * spec.t, tr.failure[1]))
    rows.sort()
    x, y = zip(*rows)
    return SweepTable(x, y, "omega0_t", "one_minus_P2", {"n_max": list(n_values)})


def fig4(params=None, grid_points=512):
    table = event2_failure_table(params, grid_points=grid_points)
    amp, exponent = power_law_fit(table)
    return [("event2_failure", table), ("power_law_fit", {"amplitude": amp, "exponent": exponent})]


def catalyst_pair(nbar, params=None):
    """Ground-start transcoherent state closest to ``nbar`` and its mean-matched coherent state."""
    params = params or JcmParams()
    _, trans = ground_state_for_mean(nbar, params)
    return trans, make_coherent(math.sqrt(mean_photon(trans)))


def fig5(params=None, nbars=FIG5_NBAR, grid_points=512):
    """Cumulative catalysis success over ``2 nbar`` events."""
    params = params or JcmParams()
    traces = []
    for nbar in nbars:
        trans, coh = catalyst_pair(nbar, params)
        a, b = compare_catalysts(trans, coh, int(round(2 * nbar)), params, grid_points=grid_points)
        traces.append((f"transcoherent_nbar{nbar:g}", a))
        traces.append((f"coherent_nbar{nbar:g}", b))
    return traces


FIGURES = {1: fig1, 2: fig2, 3: fig3, 4: fig4, 5: fig5}
