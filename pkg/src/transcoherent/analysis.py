"""
Post-processing: Gaussian fits of photon-number distributions, squeezing,
coherence sweeps and log-log power-law fits.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FitError
from .fock import make_coherent, mean_photon, variance_photon
from .jcm import JcmParams, JointState, coherence_gap, evolve
from .pulses import build_truncated

SUPPORT_FLOOR = 1e-12


@dataclass
class SweepTable:
    """Rows ``(x, y)`` with axis labels and free-form metadata."""

    x: np.ndarray
    y: np.ndarray
    x_label: str = "x"
    y_label: str = "y"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise ValueError("x and y must be 1-d of equal length")
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("x must be strictly increasing")
        if not np.all(np.isfinite(self.y)):
            raise ValueError("y must be finite")

    def __len__(self):
        return self.x.size

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([self.x_label, self.y_label])
            for a, b in zip(self.x, self.y):
                w.writerow([f"{a:.17g}", f"{b:.17g}"])

    def to_dict(self):
        return {
            "x_label": self.x_label,
            "y_label": self.y_label,
            "metadata": self.metadata,
            "rows": [[float(a), float(b)] for a, b in zip(self.x, self.y)],
        }

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)


def fit_gaussian(probs):
    """Mean and variance of a Gaussian fitted to ``log p_n``.

    Least squares on the log-probabilities of the support (``p > 1e-12``)
    with each residual weighted by its probability, so truncated tails
    barely count.
    """
    p = np.asarray(probs, dtype=float)
    n = np.flatnonzero(p > SUPPORT_FLOOR)
    if n.size < 5:
        raise FitError(f"need at least 5 support points, got {n.size}")
    w = p[n]
    # Centre and scale the abscissa so the normal equations stay well conditioned.
    centre = np.dot(n, w) / w.sum()
    scale = max(1.0, math.sqrt(np.dot((n - centre) ** 2, w) / w.sum()))
    u = (n - centre) / scale
    quad, lin, _ = np.polyfit(u, np.log(w), 2, w=np.sqrt(w))
    if quad >= 0:
        raise FitError("log-probabilities are not concave")
    variance = -scale**2 / (2.0 * quad)
    mean = centre + scale * (-lin / (2.0 * quad))
    return float(mean), float(variance)


def squeezing_factor(state):
    """``mean / variance`` from the photon-number moments."""
    var = variance_photon(state)
    return math.inf if var == 0 else mean_photon(state) / var


def squeezing_db(state):
    """Number squeezing ``10 log10(mean / variance)``; ``inf`` for zero variance."""
    s = squeezing_factor(state)
    return math.inf if math.isinf(s) else 10.0 * math.log10(s)


def coherent_alpha_for_time(t, params=None):
    """Amplitude whose mean Rabi angle at time ``t`` is a pi/2 pulse."""
    params = params or JcmParams()
    return math.pi / (2.0 * params.omega0 * t)


def coherence_gap_at(t, builder, params=None):
    """``1 - C`` after evolving ``|g> ⊗ field`` where ``field`` is built for time ``t``."""
    params = params or JcmParams()
    if builder == "truncated":
        field_state = build_truncated(t, params)
    elif builder == "coherent":
        field_state = make_coherent(coherent_alpha_for_time(t, params))
    else:
        raise ValueError(f"unknown builder {builder!r}")
    return coherence_gap(evolve(JointState.ground(field_state, params), t))


def coherence_sweep(t_grid, builder, params=None):
    """Rows ``(W0 t, 1 - C)`` for the ``truncated`` or ``coherent`` builder."""
    params = params or JcmParams()
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid <= 0) or np.any(params.omega0 * t_grid > math.pi * (1 + 1e-12)):
        raise ValueError("times must lie in (0, pi / W0]")
    t_grid = np.unique(t_grid)
    gaps = [coherence_gap_at(t, builder, params) for t in t_grid]
    return SweepTable(
        params.omega0 * t_grid,
        gaps,
        "omega0_t",
        "one_minus_C",
        {"builder": builder, "omega_ratio": params.omega_ratio},
    )


def default_time_grid(n_points=200, t_min=0.03, n_perfect=100):
    """Log-spaced ``W0 t`` in ``[t_min, pi]`` plus the perfect points ``pi / sqrt(n)``."""
    grid = np.geomspace(t_min, math.pi, n_points)
    perfect = math.pi / np.sqrt(np.arange(1, n_perfect + 1))
    perfect = perfect[perfect >= t_min]
    return np.unique(np.concatenate([grid, perfect]))


def power_law_fit(table):
    """Fit ``y = amplitude * x**exponent`` by least squares in log-log space."""
    x, y = np.asarray(table.x), np.asarray(table.y)
    if np.any(y <= 0) or np.any(x <= 0):
        raise ValueError("power-law fit needs positive x and y")
    if x.size < 2:
        raise FitError("need at least two points")
    exponent, log_amp = np.polyfit(np.log(x), np.log(y), 1)
    return float(math.exp(log_amp)), float(exponent)
