"""Random permutation models, statistics and size-bias couplings."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    PermlabError,
    clt,
    couple,
    enumerate_law,
    estimate_var_conditional,
    inversion_constants,
    m_descent_moments,
    mean_inversions_exact,
    mean_m_descents,
    moment_ratio,
    moment_ratio_descents,
    pmf,
    statistic,
    stein_bound,
    tv_event_lower_bound,
    tv_to_uniform,
    var_descents,
    verify_size_bias_identity,
)

__version__ = _core.version()


def _doc(value):
    # phi rules and Markov chains reach the core as JSON text; a bare string
    # such as "identity" is a named rule
    return None if value is None else json.dumps(value)


def sample(n, reps=1, seed=0, model="inverse-unfair", phi=None, chain=None):
    """Permutations from `model`; replica r uses the stream (seed, r)."""
    return _core.sample(n, reps, seed, model, _doc(phi), _doc(chain))


def estimate(kind, n, reps, seed=0, model="inverse-unfair", phi=None, chain=None, threads=0):
    return _core.estimate(kind, n, reps, seed, model, _doc(phi), _doc(chain), threads)


def pmf_exact(sigma, model="inverse-unfair"):
    return Fraction(_core.pmf_exact(list(sigma), model))


__all__ = [
    "PermlabError",
    "clt",
    "couple",
    "enumerate_law",
    "estimate",
    "estimate_var_conditional",
    "inversion_constants",
    "m_descent_moments",
    "mean_inversions_exact",
    "mean_m_descents",
    "moment_ratio",
    "moment_ratio_descents",
    "pmf",
    "pmf_exact",
    "sample",
    "statistic",
    "stein_bound",
    "tv_event_lower_bound",
    "tv_to_uniform",
    "var_descents",
    "verify_size_bias_identity",
]
