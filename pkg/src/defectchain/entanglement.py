"""Pairwise concurrence in the one-excitation sector and the bound-state profile."""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .greens import localized_state
from .model import WaveFunction, canonical_site


@dataclass(frozen=True)
class ConcurrenceProfile:
    """Concurrence between a reference site and the sites ``j`` (offsets from the defect)."""

    reference: int
    sites: np.ndarray
    values: np.ndarray
    alpha: float
    xi: float


def pair_concurrence(state, i, j):
    """Concurrence 2|c_i c_j| of sites i and j for a one-excitation pure state."""
    amps = state.amplitudes if isinstance(state, WaveFunction) else np.asarray(state)
    n = amps.shape[0]
    ci, cj = canonical_site(i, n), canonical_site(j, n)
    if ci == cj:
        raise ParameterError(f"concurrence needs two distinct sites, got {i} and {j}")
    return 2.0 * abs(amps[ci]) * abs(amps[cj])


def _check_pair(i, j):
    if int(i) == int(j):
        raise ParameterError(f"concurrence needs two distinct sites, got {i} and {j}")


def localized_concurrence(spec, i, j):
    """Bound-state concurrence 2|alpha|/sqrt(1+alpha^2) exp(-xi(|i|+|j|)).

    ``i`` and ``j`` are offsets from the defect site.
    """
    _check_pair(i, j)
    state = localized_state(spec)
    weight = 2.0 * abs(state.alpha) / math.hypot(1.0, state.alpha)
    return weight * math.exp(-state.xi * (abs(int(i)) + abs(int(j))))


def concurrence_profile(spec, i, j_max):
    """localized_concurrence(i, j) for every j in [-j_max, j_max] except i."""
    state = localized_state(spec)
    sites = np.array([j for j in range(-int(j_max), int(j_max) + 1) if j != int(i)])
    weight = 2.0 * abs(state.alpha) / math.hypot(1.0, state.alpha)
    values = weight * np.exp(-state.xi * (abs(int(i)) + np.abs(sites)))
    return ConcurrenceProfile(int(i), sites, values, state.alpha, state.xi)
