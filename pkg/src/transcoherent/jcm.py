"""
Closed-form resonant Jaynes-Cummings dynamics.

The Hamiltonian ``H = w (a^dag a + |e><e|) + (W0/2)(a s+ + a^dag s-)`` couples
only the pair ``|g, m>, |e, m-1>`` of each excitation manifold ``m >= 1``.
Inside a manifold the propagator is

    exp(-i m w t) [cos(W_{m-1} t / 2) 1 - i sin(W_{m-1} t / 2) X]

with ``W_n = W0 sqrt(n + 1)`` and ``X`` the swap of the two amplitudes.
``|g, 0>`` is stationary. Phases follow the Schrodinger picture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningError
from .fock import NORM_TOL, FieldState, normalized

# Conditioning below this probability is refused.
MIN_CONDITION_PROB = 1e-14


@dataclass(frozen=True)
class JcmParams:
    """Vacuum Rabi frequency ``omega0`` and resonance frequency ``omega``."""

    omega0: float = 1.0
    omega: float = 0.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")
        if self.omega < 0:
            raise ValueError("omega must be nonnegative")

    @classmethod
    def from_ratio(cls, omega_ratio, omega0=1.0):
        return cls(omega0=omega0, omega=omega_ratio * omega0)

    @property
    def omega_ratio(self):
        return self.omega / self.omega0


def rabi_frequency(params, n):
    """Quantized Rabi frequency ``W0 sqrt(n + 1)`` of the ``(n+1)``-excitation manifold."""
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("manifold index must be nonnegative")
    out = params.omega0 * np.sqrt(n + 1.0)
    return float(out) if out.ndim == 0 else out


def _as_amps(x):
    arr = np.array(x, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class JointState:
    """Atom-field state ``sum_n c_{g,n}|g,n> + c_{e,n}|e,n>``."""

    g_amps: np.ndarray
    e_amps: np.ndarray
    params: JcmParams = field(default_factory=JcmParams)

    def __post_init__(self):
        g = _as_amps(self.g_amps)
        e = _as_amps(self.e_amps)
        if g.ndim != 1 or g.shape != e.shape or g.size == 0:
            raise ValueError("g_amps and e_amps must be 1-d of equal nonzero length")
        norm2 = float(np.sum(np.abs(g) ** 2) + np.sum(np.abs(e) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise ValueError(f"joint state is not normalized: {norm2!r}")
        object.__setattr__(self, "g_amps", g)
        object.__setattr__(self, "e_amps", e)

    @classmethod
    def product(cls, atom, field_state, params=None):
        """``(a_g|g> + a_e|e>) ⊗ field`` with the atom vector normalized."""
        a_g, a_e = normalized(atom)
        amps = field_state.amps
        return cls(a_g * amps, a_e * amps, params or JcmParams())

    @classmethod
    def ground(cls, field_state, params=None):
        return cls.product((1.0, 0.0), field_state, params)

    @classmethod
    def excited(cls, field_state, params=None):
        return cls.product((0.0, 1.0), field_state, params)

    @property
    def n_cut(self):
        return self.g_amps.size - 1

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.g_amps) ** 2) + np.sum(np.abs(self.e_amps) ** 2)))

    def excited_population(self):
        return float(np.sum(np.abs(self.e_amps) ** 2))

    def manifold_populations(self):
        """Population of each excitation manifold ``m = 0..n_cut+1``."""
        pg = np.abs(self.g_amps) ** 2
        pe = np.abs(self.e_amps) ** 2
        out = np.zeros(self.g_amps.size + 1)
        out[: pg.size] += pg
        out[1:] += pe
        return out

    def to_dict(self):
        return {
            "omega_ratio": float(self.params.omega_ratio),
            "g_amps": [[float(c.real), float(c.imag)] for c in self.g_amps],
            "e_amps": [[float(c.real), float(c.imag)] for c in self.e_amps],
        }

    @classmethod
    def from_dict(cls, data, omega0=1.0):
        g = [complex(re, im) for re, im in data["g_amps"]]
        e = [complex(re, im) for re, im in data["e_amps"]]
        return cls(g, e, JcmParams.from_ratio(data["omega_ratio"], omega0))

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text, omega0=1.0):
        return cls.from_dict(json.loads(text), omega0)


def evolve_arrays(g, e, t, params):
    """Propagate raw amplitude arrays.

    ``t`` may be a scalar or a 1-d array; with an array the results gain a
    leading time axis. ``e[-1]`` must be zero (its partner ``|g, N+1>`` is
    outside the arrays); :func:`evolve` pads when needed.
    """
    g = np.asarray(g, dtype=complex)
    e = np.asarray(e, dtype=complex)
    t = np.asarray(t, dtype=float)
    tt = t[..., None]
    m = np.arange(1, g.size)
    half = 0.5 * params.omega0 * np.sqrt(m) * tt
    cos, sin = np.cos(half), np.sin(half)
    phase = np.exp(-1j * params.omega * m * tt)
    ga, eb = g[1:], e[:-1]
    g_out = np.empty(t.shape + g.shape, dtype=complex)
    e_out = np.zeros(t.shape + e.shape, dtype=complex)
    g_out[..., 0] = g[0]
    g_out[..., 1:] = phase * (cos * ga - 1j * sin * eb)
    e_out[..., :-1] = phase * (cos * eb - 1j * sin * ga)
    return g_out, e_out


def evolve(state, t):
    """Resonant JCM evolution for duration ``t`` (negative ``t`` runs backwards)."""
    g, e = state.g_amps, state.e_amps
    if e[-1] != 0:
        g = np.append(g, 0.0)
        e = np.append(e, 0.0)
    g_out, e_out = evolve_arrays(g, e, float(t), state.params)
    return JointState(g_out, e_out, state.params)


def free_evolve(state, tau):
    """Free evolution of atom and field under ``w (a^dag a + |e><e|)``."""
    w = state.params.omega
    n = np.arange(state.g_amps.size)
    g = np.exp(-1j * n * w * tau) * state.g_amps
    e = np.exp(-1j * (n + 1) * w * tau) * state.e_amps
    return JointState(g, e, state.params)


def free_evolve_atom(state, tau):
    """Free precession of the atom alone; the field amplitudes are untouched."""
    e = np.exp(-1j * state.params.omega * tau) * state.e_amps
    return JointState(state.g_amps, e, state.params)


@dataclass(frozen=True, eq=False)
class AtomDensity:
    """Reduced atomic density matrix, rows/columns ordered ``(g, e)``."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError("atomic density matrix must be 2x2")
        if np.max(np.abs(rho - rho.conj().T)) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > NORM_TOL:
            raise ValueError("density matrix does not have unit trace")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def rho_ge(self):
        return complex(self.rho[0, 1])

    def purity(self):
        return float(np.real(np.trace(self.rho @ self.rho)))

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.rho)


def reduce_atom(state):
    """Partial trace over the field."""
    g, e = state.g_amps, state.e_amps
    gg = float(np.sum(np.abs(g) ** 2))
    ee = float(np.sum(np.abs(e) ** 2))
    ge = complex(np.sum(g * e.conj()))
    return AtomDensity(np.array([[gg, ge], [ge.conjugate(), ee]]))


def coherence_C(rho):
    """l1 coherence ``|rho_eg| + |rho_ge|``."""
    return 2.0 * abs(rho.rho_ge)


def optimal_phase(rho):
    """Phase ``phi`` maximizing :func:`success_P`."""
    return -float(np.angle(rho.rho_ge))


def success_P(rho, phi=0.0):
    """Probability of the projector onto ``(|g> + e^{i phi}|e>)/sqrt(2)``."""
    r = rho.rho
    val = 0.5 * (r[0, 0] + r[1, 1] + np.exp(1j * phi) * r[0, 1] + np.exp(-1j * phi) * r[1, 0])
    return float(np.real(val))


def failure_probability(state, phi=0.0):
    """Probability of the orthogonal outcome ``(|g> - e^{i phi}|e>)/sqrt(2)``.

    Summed from the projected amplitudes, so values near zero keep full
    relative precision (unlike ``1 - success_P``).
    """
    diff = state.g_amps - np.exp(-1j * phi) * state.e_amps
    return 0.5 * float(np.sum(np.abs(diff) ** 2))


def coherence_gap(state):
    """``1 - C`` of the reduced atom, computed without cancellation."""
    phi = optimal_phase(reduce_atom(state))
    return 2.0 * failure_probability(state, phi)


def project_atom(state, phi=0.0):
    """Post-select the atom on ``(|g> + e^{i phi}|e>)/sqrt(2)``.

    Returns the success probability and the conditioned field state.
    """
    amps = (state.g_amps + np.exp(-1j * phi) * state.e_amps) / np.sqrt(2.0)
    prob = float(np.sum(np.abs(amps) ** 2))
    if prob < MIN_CONDITION_PROB:
        raise ConditioningError(f"success probability {prob:.3e} is too small to condition on")
    return prob, FieldState(amps / np.sqrt(prob))


def schmidt_coefficients(state):
    """Schmidt coefficients (squared singular values) of the atom-field split."""
    s = np.linalg.svd(np.vstack([state.g_amps, state.e_amps]), compute_uv=False)
    return s**2


def pair_coherence(n, t, params=None):
    """Coherence generated from ``|g> ⊗ (|n> + |n+1>)/sqrt(2)``."""
    params = params or JcmParams()
    w_n = params.omega0 * np.sqrt(n + 1.0)
    w_prev = params.omega0 * np.sqrt(n) if n > 0 else 0.0
    return float(abs(np.sin(0.5 * w_n * t) * np.cos(0.5 * w_prev * t)))
