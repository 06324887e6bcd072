"""Atom-field states whose Jaynes-Cummings pulse leaves the atom in a perfect superposition."""

from .errors import ConditioningError, CutoffTooSmallError, DegenerateSpecError, FitError
from .fock import (
    FieldState,
    make_coherent,
    make_fock,
    make_gaussian,
    mean_photon,
    overlap,
    variance_photon,
)
from .jcm import (
    AtomDensity,
    JcmParams,
    JointState,
    coherence_C,
    coherence_gap,
    evolve,
    failure_probability,
    optimal_phase,
    reduce_atom,
    success_P,
)
from .pulses import (
    PulseSpec,
    build,
    build_concatenated,
    build_excited,
    build_ground,
    build_truncated,
    reverse_pulse,
)
from .catalysis import CatalysisTrace, compare_catalysts, optimize_time, run_catalysis
from .analysis import SweepTable, fit_gaussian, squeezing_db, squeezing_factor

__all__ = [
    "AtomDensity", "CatalysisTrace", "ConditioningError", "CutoffTooSmallError",
    "DegenerateSpecError", "FieldState", "FitError", "JcmParams", "JointState",
    "PulseSpec", "SweepTable", "build", "build_concatenated", "build_excited",
    "build_ground", "build_truncated", "coherence_C", "coherence_gap",
    "compare_catalysts", "evolve", "failure_probability", "fit_gaussian",
    "make_coherent", "make_fock", "make_gaussian", "mean_photon", "optimal_phase",
    "optimize_time", "overlap", "reduce_atom", "reverse_pulse", "run_catalysis",
    "squeezing_db", "squeezing_factor", "success_P", "variance_photon",
]
