"""
Single-mode field states in the photon-number basis.

A :class:`FieldState` is an immutable, unit-norm vector of complex amplitudes
``c_n`` for ``n = 0..n_cut``. Constructors fail loudly when the cutoff is too
small instead of truncating silently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import poisson

from .errors import CutoffTooSmallError

NORM_TOL = 1e-12
# Largest probability mass a constructor may drop past n_cut.
TAIL_TOL = 1e-10


def _frozen(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def normalized(amps):
    """Return ``amps`` as a complex array scaled to unit norm."""
    amps = np.asarray(amps, dtype=complex)
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return amps / norm


@dataclass(frozen=True, eq=False)
class FieldState:
    """Pure single-mode field state ``sum_n c_n |n>``."""

    amps: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amps)
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must be a non-empty 1-d sequence")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |c_n|^2 = {norm2!r}")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps):
        """Build a state from unnormalized amplitudes."""
        return cls(normalized(amps))

    @property
    def n_cut(self):
        return self.amps.size - 1

    @property
    def probs(self):
        return np.abs(self.amps) ** 2

    def padded(self, n_cut):
        """Same state embedded in a larger cutoff."""
        if n_cut < self.n_cut:
            raise ValueError("padding cannot shrink the cutoff")
        out = np.zeros(n_cut + 1, dtype=complex)
        out[: self.amps.size] = self.amps
        return FieldState(out)

    def renormalized(self):
        return FieldState(normalized(self.amps))

    def to_dict(self):
        return {
            "n_cut": int(self.n_cut),
            "amps": [[float(c.real), float(c.imag)] for c in self.amps],
        }

    @classmethod
    def from_dict(cls, data):
        amps = np.array([complex(re, im) for re, im in data["amps"]])
        if amps.size != data["n_cut"] + 1:
            raise ValueError("n_cut does not match the number of amplitudes")
        return cls(amps)

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def make_fock(n, n_cut=None):
    """Number state ``|n>``."""
    if n_cut is None:
        n_cut = n
    if n < 0 or n_cut < 0:
        raise ValueError("photon number and cutoff must be nonnegative")
    if n > n_cut:
        raise ValueError(f"photon number {n} exceeds cutoff {n_cut}")
    amps = np.zeros(n_cut + 1, dtype=complex)
    amps[n] = 1.0
    return FieldState(amps)


def coherent_cutoff(magnitude):
    """Smallest ``n_cut`` leaving at most ``TAIL_TOL`` Poisson mass outside."""
    lam = float(magnitude) ** 2
    if lam == 0.0:
        return 0
    # Bounded search; the upper end is the closed-form sufficient cutoff.
    hi = int(math.ceil(lam + 10.0 * math.sqrt(lam + 1.0)))
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if poisson.sf(mid, lam) <= TAIL_TOL:
            hi = mid
        else:
            lo = mid + 1
    return lo


def make_coherent(magnitude, phase=0.0, n_cut=None):
    """Glauber coherent state with ``alpha = magnitude * exp(i phase)``.

    ``n_cut=None`` picks the minimal admissible cutoff.
    """
    if magnitude < 0:
        raise ValueError("magnitude must be nonnegative")
    required = coherent_cutoff(magnitude)
    if n_cut is None:
        n_cut = required
    elif n_cut < required:
        raise CutoffTooSmallError(
            f"coherent state |alpha|={magnitude} loses more than {TAIL_TOL} probability", required
        )
    if magnitude == 0:
        return make_fock(0, n_cut)
    n = np.arange(n_cut + 1)
    # Ratio recursion c_{n+1} = c_n alpha / sqrt(n+1), accumulated in logs so
    # neither factorials nor large |alpha|^n overflow.
    log_ratio = math.log(magnitude) - 0.5 * np.log(n[1:])
    logmag = np.concatenate([[0.0], np.cumsum(log_ratio)])
    amps = np.exp(logmag - logmag.max()) * np.exp(1j * phase * n)
    return FieldState(normalized(amps))


def make_gaussian(mean, variance, n_cut=None):
    """Real-amplitude state with ``|c_n|^2 ∝ exp(-(n - mean)^2 / (2 variance))``."""
    if variance <= 0:
        raise ValueError("variance must be positive")
    sigma = math.sqrt(variance)
    required = int(math.ceil(mean + 10.0 * sigma))
    if n_cut is None:
        n_cut = required
    elif n_cut < required:
        raise CutoffTooSmallError("cutoff must cover mean + 10 sigma", required)
    n = np.arange(n_cut + 1)
    logp = -((n - mean) ** 2) / (2.0 * variance)
    probs = np.exp(logp - logp.max())
    return FieldState(normalized(np.sqrt(probs)))


def mean_photon(state):
    n = np.arange(state.amps.size)
    return float(np.dot(n, state.probs))


def variance_photon(state):
    n = np.arange(state.amps.size)
    p = state.probs
    mean = np.dot(n, p)
    return float(np.dot((n - mean) ** 2, p))


def overlap(a, b):
    """Inner product ``<a|b>``; the shorter state is zero-padded."""
    size = max(a.amps.size, b.amps.size)
    x = np.zeros(size, dtype=complex)
    y = np.zeros(size, dtype=complex)
    x[: a.amps.size] = a.amps
    y[: b.amps.size] = b.amps
    return complex(np.vdot(x, y))
