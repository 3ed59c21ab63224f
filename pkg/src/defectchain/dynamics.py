"""Transition amplitudes f_rs(t) = <r|exp(-iHt)|s> and derived quantities.

Three routes are available:

* ``oracle``     -- spectral evolution on a finite ring (exact for that ring);
* ``integral``   -- band integral over theta plus the bound-state pole term,
                    valid for the infinite chain;
* ``asymptotic`` -- Bessel-function formulas for a strong defect, |alpha| >> 1.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ParameterError, SingularityError
from .greens import localized_state
from .model import ChainSpec, build_hamiltonian, diagonalize
from .numerics import (
    bessel_j,
    defect_node_floor,
    gauss_legendre_rule,
    node_count_for,
    phase_sum,
)

METHODS = ("oracle", "integral", "asymptotic")


@dataclass(frozen=True)
class InfiniteChain:
    """Thermodynamic-limit parameters: no ring size, only h, J, alpha and l."""

    field_h: float = 1.0
    coupling_J: float = 1.0
    alpha: float = 0.0
    defect_site: int = 0

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.field_h, spec.coupling_J, spec.alpha, spec.defect_site)

    def localized(self):
        # ring size is irrelevant for the bound state
        return localized_state(ChainSpec.from_alpha(
            3, self.alpha, self.field_h, self.coupling_J, self.defect_site))


@dataclass(frozen=True)
class TimeGrid:
    t_values: np.ndarray

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.t_values, dtype=float))
        if t.size == 0 or t[0] < 0 or np.any(np.diff(t) <= 0):
            raise ParameterError("time grid must be non-empty, non-negative and strictly ascending")
        object.__setattr__(self, "t_values", t)

    @classmethod
    def uniform(cls, t_max, dt):
        if not dt > 0 or not t_max > 0:
            raise ParameterError("t_max and dt must be positive")
        count = int(math.floor(t_max / dt + 1e-9)) + 1
        return cls(dt * np.arange(count))

    def tau(self, coupling_J):
        return coupling_J * self.t_values


@dataclass(frozen=True)
class AmplitudeSeries:
    sender: int
    receiver: int
    method: str
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"unknown method {self.method!r}")
        if self.method != "asymptotic" and np.any(np.abs(self.values) > 1.0 + 1e-9):
            raise ParameterError("transition amplitude exceeds 1 in modulus")

    def concurrence(self):
        return concurrence_series(self)

    def average_fidelity(self):
        return average_fidelity_series(self)


def scattering_factor(theta, i, j, alpha, side):
    """alpha e^{+-i|theta||i-j|} / (+-i sin|theta| - alpha)."""
    if side not in ("+", "-"):
        raise ParameterError(f"side must be '+' or '-', got {side!r}")
    theta = np.asarray(theta, dtype=float)
    sgn = 1.0 if side == "+" else -1.0
    sin_abs = np.sin(np.abs(theta))
    denom = sgn * 1j * sin_abs - alpha
    if np.any(denom == 0):
        raise SingularityError("scattering factor singular: sin(theta) = 0 with alpha = 0")
    return alpha * np.exp(sgn * 1j * np.abs(theta) * abs(int(i) - int(j))) / denom


def band_integrand(theta, chain, s, r):
    """Band part of f_rs before the e^{-iEt} factor, as a function of theta."""
    theta = np.asarray(theta, dtype=float)
    l = chain.defect_site
    free = np.exp(1j * theta * (r - s))
    if chain.alpha == 0:
        return free
    g_rl = scattering_factor(theta, r, l, chain.alpha, "+")
    g_ls = scattering_factor(theta, l, s, chain.alpha, "-")
    return (free + np.exp(1j * theta * (l - s)) * g_rl
            + np.exp(1j * theta * (r - l)) * g_ls + g_rl * g_ls)


def transition_amplitude_integral(chain, s, r, t):
    """Infinite-chain amplitude from the band integral plus the bound-state pole.

    ``chain`` is an :class:`InfiniteChain` (a :class:`ChainSpec` is converted;
    its ring size is ignored).  ``t`` may be a scalar or an array.

    Accurate to ~1e-12 for |alpha| >= 0.004; below that the node cap of
    :func:`defect_node_floor` leaves an O(|alpha|) error.
    """
    if isinstance(chain, ChainSpec):
        chain = InfiniteChain.from_spec(chain)
    s, r = int(s), int(r)
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise ParameterError("t must be non-negative")
    tau_max = float(chain.coupling_J * times.max()) if times.size else 0.0
    l = chain.defect_site
    nodes = max(node_count_for(tau_max, abs(r - l) + abs(s - l)), defect_node_floor(chain.alpha))
    rule = gauss_legendre_rule(nodes)
    theta = rule.nodes
    coeffs = rule.weights * band_integrand(theta, chain, s, r) / (2.0 * np.pi)
    energies = 2.0 * chain.field_h - chain.coupling_J * np.cos(theta)
    values = phase_sum(coeffs, energies, times.reshape(-1))
    if chain.alpha != 0:
        state = chain.localized()
        residue = state.amplitude(r - l) * state.amplitude(s - l)
        values = values + residue * np.exp(-1j * state.energy_loc * times.reshape(-1))
    if times.ndim == 0:
        return complex(values[0])
    return values.reshape(times.shape)


def oracle_ring_size(tau_max, r_offset, s_offset):
    """Smallest ring keeping the ballistic front away from the wrap-around."""
    return int(math.ceil(4.0 * tau_max + 4.0 * max(abs(r_offset), abs(s_offset)) + 1))


def _grid(times):
    return times.t_values if isinstance(times, TimeGrid) else np.atleast_1d(
        np.asarray(times, dtype=float))


def amplitude_series(spec, s, r, times, method="oracle", spectrum=None):
    """f_rs on a time grid by the chosen method.

    For ``oracle`` the ring must satisfy :func:`oracle_ring_size`; a smaller
    ring raises :class:`ConfigurationError`.  ``asymptotic`` stores the
    asymptotic concurrence (a modulus) as a real-valued amplitude.
    """
    t = _grid(times)
    if method == "oracle":
        tau_max = spec.coupling_J * float(t.max())
        need = oracle_ring_size(tau_max, spec.offset(r), spec.offset(s))
        if spec.n_sites < need:
            raise ConfigurationError(
                f"ring of {spec.n_sites} sites too small for tau={tau_max:g}; "
                f"need n_sites >= {need}")
        if spectrum is None:
            spectrum = diagonalize(build_hamiltonian(spec))
        vecs = spectrum.eigenvectors
        w = vecs[r % spec.n_sites] * vecs[s % spec.n_sites]
        values = np.exp(-1j * np.outer(t, spectrum.eigenvalues)) @ w
    elif method == "integral":
        values = transition_amplitude_integral(InfiniteChain.from_spec(spec), s, r, t)
    elif method == "asymptotic":
        values = asymptotic_concurrence(
            spec.alpha, spec.offset(s), spec.offset(r), spec.coupling_J * t).astype(complex)
    else:
        raise ParameterError(f"unknown method {method!r}; choose from {METHODS}")
    return AmplitudeSeries(int(s), int(r), method, t, np.asarray(values))


def concurrence_series(ampl):
    """C_r(t) = |f_rs(t)|."""
    return np.abs(ampl.values)


def average_fidelity_series(ampl):
    """Message-averaged fidelity (|f + 1|^2 + 2) / 6, phase as computed."""
    return (np.abs(ampl.values + 1.0) ** 2 + 2.0) / 6.0


def asymptotic_concurrence_localized(alpha, r, tau):
    """Strong-defect concurrence for a sender sitting on the defect (s = l = 0)."""
    tau = np.asarray(tau, dtype=float)
    r = int(r)
    if r == 0:
        out = np.full(tau.shape, 1.0 - 1.0 / (2.0 * alpha * alpha))
    else:
        safe = np.where(tau > 0, tau, 1.0)
        out = np.where(tau > 0, np.abs(r * bessel_j(r, tau) / (abs(alpha) * safe)), 0.0)
    return float(out) if out.ndim == 0 else out


def asymptotic_concurrence_cross(alpha, d, tau):
    """Strong-defect concurrence across the defect, d = |r| + |s|."""
    d = int(d)
    if d < 1:
        raise ParameterError("sender and receiver must straddle the defect (d >= 1)")
    tau = np.asarray(tau, dtype=float)
    out = np.abs(bessel_j(d + 1, tau) + bessel_j(d - 1, tau)) / (2.0 * abs(alpha))
    return float(out) if np.ndim(out) == 0 else out


def asymptotic_concurrence_reflected(alpha, s, r, tau):
    """Strong-defect concurrence with sender and receiver on the same side (0 < s < r)."""
    s, r = int(s), int(r)
    if not 0 < s <= r:
        raise ParameterError(f"need 0 < s <= r, got s={s}, r={r}")
    tau = np.asarray(tau, dtype=float)
    direct = (-1.0) ** s * bessel_j(r - s, tau)
    mirror = bessel_j(r + s, tau)
    leak = (bessel_j(r + s + 1, tau) + bessel_j(r + s - 1, tau)) / (2.0 * alpha)
    out = np.abs(direct - mirror - 1j * leak)
    return float(out) if np.ndim(out) == 0 else out


def asymptotic_concurrence(alpha, s, r, tau):
    """Pick the strong-defect formula matching the geometry; s, r are offsets from l.

    Uses f_rs = f_sr and the mirror symmetry about the defect to map every
    configuration onto one of the three printed cases.
    """
    s, r = int(s), int(r)
    tau = np.asarray(tau, dtype=float)
    if s == 0 or r == 0:
        out = asymptotic_concurrence_localized(alpha, r if s == 0 else s, tau)
    elif (s > 0) != (r > 0):
        out = asymptotic_concurrence_cross(alpha, abs(r) + abs(s), tau)
    else:
        near, far = sorted((abs(s), abs(r)))
        out = asymptotic_concurrence_reflected(alpha, near, far, tau)
    return np.asarray(out, dtype=float)
