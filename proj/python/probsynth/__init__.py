"""Probabilistic state synthesis: Python bindings over the C++ core."""

import json

from . import _core
from ._core import (
    Error,
    InsufficientLibrary,
    PreconditionViolation,
    SolverNonConvergence,
    SynthesisLibrary,
    ball_volume,
    bloch_hull_distance,
    coherence_distance,
    g4_bound,
    isotropic_distance,
    meridian_state,
    pauli_eigenstates,
    simplex_formula,
    solve,
    trace_distance,
    werner_distance,
)

__version__ = "0.1.0"


def meridian_covering(eps):
    return json.loads(_core.meridian_covering(eps))


def bounds_report(d, eps):
    return json.loads(_core.bounds_report(d, eps))


def probabilistic_synthesize(library, t, eps, delta=1e-6, trivial_group=False, seed=0):
    """Ensemble for cos t|0> + sin t|1> with deterministic parameter eps."""
    return json.loads(
        _core.probabilistic_synthesize(library, t, eps, delta, trivial_group, seed)
    )
