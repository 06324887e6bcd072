"""
Reusing one field state to put a stream of ground-state atoms into
``(|g> + e^{i phi}|e>)/sqrt(2)``.

Each event picks the interaction time that maximizes the success
probability, evolves, and keeps the field conditioned on success. Only the
success branch is followed, so traces are deterministic.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple

import numpy as np

from .errors import ConditioningError
from .fock import FieldState, mean_photon
from .jcm import JcmParams, JointState, evolve, evolve_arrays, project_atom

GRID_POINTS = 512
GOLDEN_ITERATIONS = 60
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(f, a, b, iterations=GOLDEN_ITERATIONS):
    """Minimize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _failure_curve(amps, t, params, phi):
    """Failure probability after evolving ``|g> ⊗ amps`` for each time in ``t``.

    ``phi=None`` uses the optimal phase at every time.
    """
    g0 = np.asarray(amps, dtype=complex)
    g, e = evolve_arrays(g0, np.zeros_like(g0), t, params)
    if phi is None:
        rho_ge = np.sum(g * e.conj(), axis=-1)
        rot = np.exp(1j * np.angle(rho_ge))[..., None]
    else:
        rot = np.exp(-1j * phi)
    return 0.5 * np.sum(np.abs(g - rot * e) ** 2, axis=-1)


class TimeOptimum(NamedTuple):
    t: float
    p: float
    failure: float


def optimize_time(field_state, params=None, t_lo=0.0, t_hi=None, grid_points=GRID_POINTS,
                  phi=None, iterations=GOLDEN_ITERATIONS):
    """Interaction time maximizing the success probability from ``|g> ⊗ field``.

    A uniform grid scan on ``[t_lo, t_hi]`` is refined by golden-section
    search around the best grid point. Ties go to the smaller time.
    ``phi=None`` optimizes the target phase in closed form at each time.
    """
    params = params or JcmParams()
    if t_hi is None:
        t_hi = math.pi / params.omega0
    if not t_lo < t_hi:
        raise ValueError("empty time range")
    if grid_points < 3:
        raise ValueError("need at least 3 grid points")
    amps = field_state.amps
    grid = np.linspace(t_lo, t_hi, grid_points)
    curve = _failure_curve(amps, grid, params, phi)
    i = int(np.argmin(curve))
    best_t, best_f = float(grid[i]), float(curve[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid_points - 1)]
    t_ref, f_ref = golden_section_min(
        lambda x: float(_failure_curve(amps, x, params, phi)), lo, hi, iterations
    )
    if f_ref < best_f:
        best_t, best_f = float(t_ref), float(f_ref)
    return TimeOptimum(best_t, 1.0 - best_f, best_f)


@dataclass
class CatalysisEvent:
    index: int
    t_star: float
    p_event: float
    p_cumulative: float
    failure: float
    phi: float


@dataclass
class CatalysisTrace:
    events: List[CatalysisEvent]
    initial_mean: float
    final_field: FieldState
    requested: int
    terminated: bool = False
    field_means: List[float] = field(default_factory=list)

    @property
    def p_event(self):
        return np.array([ev.p_event for ev in self.events])

    @property
    def failure(self):
        return np.array([ev.failure for ev in self.events])

    @property
    def cumulative(self):
        return np.array([ev.p_cumulative for ev in self.events])

    def to_rows(self):
        return [(ev.index, ev.t_star, ev.p_event, ev.p_cumulative) for ev in self.events]

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["event", "t_star", "p_event", "p_cumulative"])
            for idx, t, p, c in self.to_rows():
                w.writerow([idx, f"{t:.17g}", f"{p:.17g}", f"{c:.17g}"])

    def to_dict(self):
        return {
            "initial_mean": self.initial_mean,
            "requested": self.requested,
            "terminated": self.terminated,
            "events": [
                {
                    "event": ev.index,
                    "t_star": ev.t_star,
                    "p_event": ev.p_event,
                    "p_cumulative": ev.p_cumulative,
                    "failure": ev.failure,
                    "phi": ev.phi,
                }
                for ev in self.events
            ],
            "final_field": self.final_field.to_dict(),
        }

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)


def run_catalysis(field_state, n_events, params=None, phi=0.0, optimize_phase=True,
                  t_lo=0.0, t_hi=None, grid_points=GRID_POINTS):
    """Follow the success branch of ``n_events`` successive atoms.

    With ``optimize_phase`` (default) every event targets the best phase for
    its own interaction time and ``phi`` is ignored.
    """
    if n_events < 1:
        raise ValueError("need at least one event")
    params = params or JcmParams()
    current = field_state
    n_cut = field_state.n_cut
    cumulative = 1.0
    events, means = [], [mean_photon(field_state)]
    terminated = False
    target = None if optimize_phase else phi
    for i in range(1, n_events + 1):
        t_star, _, fail = optimize_time(current, params, t_lo, t_hi, grid_points, phi=target)
        joint = evolve(JointState.ground(current, params), t_star)
        # A ground-start atom cannot push photons past the initial cutoff.
        assert joint.n_cut == n_cut and joint.e_amps[-1] == 0
        if optimize_phase:
            use_phi = -float(np.angle(np.sum(joint.g_amps * joint.e_amps.conj())))
        else:
            use_phi = phi
        try:
            p, current = project_atom(joint, use_phi)
        except ConditioningError:
            terminated = True
            break
        cumulative *= p
        events.append(CatalysisEvent(i, t_star, p, cumulative, fail, use_phi))
        means.append(mean_photon(current))
    return CatalysisTrace(events, means[0], current, n_events, terminated, means)


def compare_catalysts(field_a, field_b, n_events, params=None, **kwargs):
    """Run two traces on identical settings; mean photon numbers must agree to 5%."""
    na, nb = mean_photon(field_a), mean_photon(field_b)
    if abs(na - nb) > 0.05 * max(na, nb):
        raise ValueError(f"mean photon numbers differ by more than 5%: {na:.4g} vs {nb:.4g}")
    return (
        run_catalysis(field_a, n_events, params, **kwargs),
        run_catalysis(field_b, n_events, params, **kwargs),
    )
