"""
Field states that hand a perfect equal superposition to a two-level atom.

Starting from ``|g>``, the amplitudes obey

    c_{n+1} = c_n e^{i w t} cos(W_{n-1} t / 2) / (-i sin(W_n t / 2))

and the series must stop at a manifold that completes an odd multiple of a
pi pulse. Starting from ``|e>`` the analogous recursion is

    c_n = c_{n-1} (-i e^{i w t} sin(W_{n-1} t / 2)) / cos(W_n t / 2).

Both produce ``(|g> + |e>)/sqrt(2) ⊗ (field)`` after time ``t``, with no
residual entanglement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpecError
from .fock import FieldState, mean_photon, normalized
from .jcm import JcmParams, JointState, evolve, rabi_frequency

GROUND = "ground"
EXCITED = "excited"

SPEC_TOL = 1e-12
DEGENERATE_TOL = 1e-12
# Relative distance to an integer below which (pi / W0 t)^2 counts as integral.
SNAP_TOL = 1e-9


@dataclass(frozen=True)
class PulseSpec:
    """Support ``[n_min, n_max]`` and interaction time of a perfect pulse.

    Use :meth:`ground` / :meth:`excited` to derive the time and the
    compatible band edge; the raw constructor validates the manifold
    conditions to ``SPEC_TOL``.
    """

    start: str
    k: int
    n_min: int
    n_max: int
    t: float
    params: JcmParams = field(default_factory=JcmParams)

    def __post_init__(self):
        if self.start not in (GROUND, EXCITED):
            raise ValueError(f"start must be {GROUND!r} or {EXCITED!r}")
        if self.k < 0:
            raise ValueError("pulse order k must be nonnegative")
        if not 0 <= self.n_min < self.n_max:
            raise ValueError("need 0 <= n_min < n_max")
        p, t, k = self.params, self.t, self.k
        if self.start == GROUND:
            if k == 0:
                lo = 0.0 if self.n_min == 0 else None
            else:
                lo = rabi_frequency(p, self.n_min - 1) * t if self.n_min > 0 else None
            hi = rabi_frequency(p, self.n_max - 1) * t
            want_lo, want_hi = 2 * k * math.pi, (2 * k + 1) * math.pi
        else:
            lo = rabi_frequency(p, self.n_min) * t
            hi = rabi_frequency(p, self.n_max) * t
            want_lo, want_hi = (2 * k + 1) * math.pi, (2 * k + 2) * math.pi
        if lo is None or abs(lo - want_lo) > SPEC_TOL or abs(hi - want_hi) > SPEC_TOL:
            raise ValueError(
                f"{self.start}-start k={k} needs manifold angles {want_lo:.6g}, {want_hi:.6g};"
                f" band [{self.n_min}, {self.n_max}] at t={t!r} does not satisfy them"
            )

    @classmethod
    def ground(cls, n_max=None, k=0, n_min=None, params=None):
        """Ground start: ``2k pi`` on the lowest manifold, ``(2k+1) pi`` on the highest."""
        params = params or JcmParams()
        if k == 0:
            if n_min not in (None, 0):
                raise ValueError("k = 0 ground pulses start at n_min = 0")
            if n_max is None or n_max < 1:
                raise ValueError("k = 0 ground pulses need n_max >= 1")
            n_min = 0
        else:
            if n_min is None or n_min < 1:
                raise ValueError("k >= 1 ground pulses need n_min >= 1")
            num, den = n_min * (2 * k + 1) ** 2, (2 * k) ** 2
            if num % den:
                raise ValueError(
                    f"n_min={n_min} incompatible with k={k}: n_min (2k+1)^2 / (2k)^2 is not an integer"
                )
            if n_max is not None and n_max != num // den:
                raise ValueError(f"n_max must be {num // den} for k={k}, n_min={n_min}")
            n_max = num // den
        t = (2 * k + 1) * math.pi / rabi_frequency(params, n_max - 1)
        return cls(GROUND, k, n_min, n_max, t, params)

    @classmethod
    def excited(cls, n_min, n_max=None, k=0, params=None):
        """Excited start: ``(2k+1) pi`` on the lowest manifold, ``(2k+2) pi`` on the highest."""
        params = params or JcmParams()
        if n_min < 0:
            raise ValueError("n_min must be nonnegative")
        num, den = (n_min + 1) * (2 * k + 2) ** 2, (2 * k + 1) ** 2
        if num % den:
            raise ValueError(
                f"n_min={n_min} incompatible with k={k}: (n_min+1)(2k+2)^2/(2k+1)^2 is not an integer"
            )
        if n_max is not None and n_max != num // den - 1:
            raise ValueError(f"n_max must be {num // den - 1} for k={k}, n_min={n_min}")
        n_max = num // den - 1
        t = (2 * k + 1) * math.pi / rabi_frequency(params, n_min)
        return cls(EXCITED, k, n_min, n_max, t, params)

    def to_dict(self):
        return {
            "start": self.start,
            "k": self.k,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "t": self.t,
            "omega_ratio": self.params.omega_ratio,
        }


def _accumulate(log_ratio, negative, step_phase, n_min, n_cut):
    """Amplitudes from per-step log-magnitudes, sign flips and a fixed step phase.

    Summing logs keeps very long recursions inside double range; phases are
    rebuilt from the step count so they carry no accumulated rounding.
    """
    j = np.arange(log_ratio.size + 1)
    logmag = np.concatenate([[0.0], np.cumsum(log_ratio)])
    flips = np.concatenate([[0], np.cumsum(negative)])
    with np.errstate(invalid="ignore"):
        mag = np.exp(logmag - np.max(logmag))
    phase = np.exp(1j * j * step_phase) * np.where(flips % 2, -1.0, 1.0)
    amps = np.zeros(n_cut + 1, dtype=complex)
    amps[n_min : n_min + j.size] = mag * phase
    return FieldState(normalized(amps))


def _ground_recursion(n_min, n_max, t, params, strict=True):
    n = np.arange(n_min, n_max)
    prev = np.where(n > 0, params.omega0 * np.sqrt(np.maximum(n, 0)), 0.0)
    cos = np.cos(0.5 * prev * t)
    sin = np.sin(0.5 * params.omega0 * np.sqrt(n + 1.0) * t)
    bad = np.abs(sin) < DEGENERATE_TOL
    if np.any(bad):
        raise DegenerateSpecError(
            f"manifold {int(n[bad][0]) + 1} completes a multiple of 2 pi inside the band"
        )
    if strict and np.any(np.abs(cos[1:]) < DEGENERATE_TOL):
        raise DegenerateSpecError("an interior manifold completes an odd pi pulse; series stops early")
    with np.errstate(divide="ignore"):
        log_ratio = np.log(np.abs(cos)) - np.log(np.abs(sin))
    negative = (cos * sin < 0).astype(int)
    # Each step multiplies by i e^{i w t} times a real ratio.
    step_phase = 0.5 * math.pi + params.omega * t
    return _accumulate(log_ratio, negative, step_phase, n_min, n_max)


def build_ground(spec):
    """Recursion-built field for a ground-state atom."""
    if spec.start != GROUND:
        raise ValueError("build_ground needs a ground-start spec")
    return _ground_recursion(spec.n_min, spec.n_max, spec.t, spec.params)


def build_excited(spec):
    """Recursion-built field for an excited atom."""
    if spec.start != EXCITED:
        raise ValueError("build_excited needs an excited-start spec")
    p, t = spec.params, spec.t
    n = np.arange(spec.n_min + 1, spec.n_max + 1)
    sin = np.sin(0.5 * p.omega0 * np.sqrt(n) * t)
    cos = np.cos(0.5 * p.omega0 * np.sqrt(n + 1.0) * t)
    if np.any(np.abs(cos) < DEGENERATE_TOL):
        raise DegenerateSpecError("an interior manifold completes an odd pi pulse")
    if np.any(np.abs(sin[1:]) < DEGENERATE_TOL):
        raise DegenerateSpecError("an interior manifold completes a multiple of 2 pi; series stops early")
    log_ratio = np.log(np.abs(sin)) - np.log(np.abs(cos))
    negative = (cos * sin < 0).astype(int)
    step_phase = -0.5 * math.pi + p.omega * t
    return _accumulate(log_ratio, negative, step_phase, spec.n_min, spec.n_max)


def build(spec):
    return build_ground(spec) if spec.start == GROUND else build_excited(spec)


def truncation_n_max(t, params=None):
    """``ceil((pi / W0 t)^2)``, snapping values that are integral up to rounding."""
    params = params or JcmParams()
    if not t > 0:
        raise ValueError("interaction time must be positive")
    x = (math.pi / (params.omega0 * t)) ** 2
    r = round(x)
    if r >= 1 and abs(x - r) <= SNAP_TOL * max(1.0, x):
        return int(r)
    return max(1, math.ceil(x))


def build_truncated(t, params=None, n_max=None):
    """Ground-start recursion cut off by hand at ``n_max``.

    The default cutoff puts the top manifold as close to a pi pulse as the
    integers allow. ``n_max`` overrides it.
    """
    params = params or JcmParams()
    if n_max is None:
        n_max = truncation_n_max(t, params)
    return _ground_recursion(0, n_max, t, params, strict=False)


def build_concatenated(blocks, weights=None):
    """Superpose recursion-filled bands that share one interaction time.

    ``blocks`` are :class:`PulseSpec` objects with a common start and ``t``;
    their bands may not overlap. ``weights`` default to equal amplitudes.
    """
    blocks = list(blocks)
    if not blocks:
        raise ValueError("need at least one block")
    if weights is None:
        weights = np.ones(len(blocks))
    weights = np.asarray(weights, dtype=complex)
    if weights.shape != (len(blocks),):
        raise ValueError("one weight per block")
    first = blocks[0]
    for b in blocks[1:]:
        if b.start != first.start:
            raise ValueError("blocks must share the atomic start level")
        if b.params != first.params:
            raise ValueError("blocks must share JCM parameters")
        if abs(b.t - first.t) > SPEC_TOL * max(1.0, first.t):
            raise ValueError(f"blocks must share the interaction time ({b.t!r} != {first.t!r})")
    order = sorted(range(len(blocks)), key=lambda i: blocks[i].n_min)
    for a, b in zip(order, order[1:]):
        if blocks[b].n_min <= blocks[a].n_max:
            raise ValueError(
                f"bands [{blocks[a].n_min}, {blocks[a].n_max}] and"
                f" [{blocks[b].n_min}, {blocks[b].n_max}] overlap"
            )
    n_cut = max(b.n_max for b in blocks)
    amps = np.zeros(n_cut + 1, dtype=complex)
    for w, b in zip(weights, blocks):
        amps[: b.n_max + 1] += w * build(b).amps
    return FieldState(normalized(amps))


def stationary_time(nbar, params=None):
    """Interaction time at which the ground recursion peaks at ``nbar``."""
    params = params or JcmParams()
    if nbar < 0:
        raise ValueError("nbar must be nonnegative")
    # pi (sqrt(n+1) - sqrt(n)) without the cancellation.
    return math.pi / (math.sqrt(nbar + 1.0) + math.sqrt(nbar)) / params.omega0


def peak_photon(t, params=None):
    """Photon number at which the ground recursion peaks for time ``t``."""
    params = params or JcmParams()
    x = params.omega0 * t
    if not 0 < x < math.pi:
        raise ValueError("need 0 < W0 t < pi")
    return (math.pi / (2 * x) - x / (2 * math.pi)) ** 2


def trig_expansion_residual(nbar):
    """Error of ``2 sin(W_n t/2) cos(W_{n-1} t/2) ≈ 1 + pi/(8 n)`` at ``W0 t sqrt(n) = pi/2``."""
    t = 0.5 * math.pi / math.sqrt(nbar)
    exact = 2.0 * math.sin(0.5 * math.sqrt(nbar + 1.0) * t) * math.cos(0.5 * math.sqrt(nbar) * t)
    return abs(exact - (1.0 + math.pi / (8.0 * nbar)))


def ground_state_for_mean(nbar, params=None):
    """k = 0 ground-start state whose mean photon number is closest to ``nbar``."""
    params = params or JcmParams()
    best = None
    for n_max in range(max(1, int(3 * nbar) - 2), int(5 * nbar) + 6):
        state = build_ground(PulseSpec.ground(n_max, params=params))
        err = abs(mean_photon(state) - nbar)
        if best is None or err < best[0]:
            best = (err, n_max, state)
    return best[1], best[2]


def reverse_pulse(field_state, t, tau, T, params=None, fresh_field=True):
    """Forward pulse from ``|g>``, free atomic precession for ``tau``, second pulse for ``T``.

    With ``fresh_field`` the second pulse is driven by a new copy of the
    post-pulse field that has not freely evolved, so the atom's phase
    relative to the field is ``w (t + tau)``; a pulse with ``T = t`` and
    ``w (t + tau) = pi (mod 2 pi)`` returns the atom to ``|g>``. Without it
    the field keeps its free phase and the condition becomes
    ``w tau = pi (mod 2 pi)``.
    """
    params = params or JcmParams()
    after = evolve(JointState.ground(field_state, params), t)
    g, e = after.g_amps, after.e_amps
    if fresh_field:
        undo = np.exp(1j * params.omega * t * np.arange(g.size))
        g, e = g * undo, e * undo
    e = e * np.exp(-1j * params.omega * tau)
    return evolve(JointState(g, e, params), T)
