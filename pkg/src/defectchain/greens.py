"""Infinite-chain lattice Green functions and the single-defect bound state.

Energies enter through the dimensionless x = (z - 2h)/J; the band is
|x| <= 1.  Off the band the square root sqrt(x^2 - 1) takes the branch with
|-x + sqrt(x^2 - 1)| <= 1, so G0(r, s) decays with |r - s|.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoBoundStateError, ParameterError, PoleError, SingularityError

_EDGE_TOL = 1e-14


@dataclass(frozen=True)
class EnergyArgument:
    """Complex energy z together with the band parameters that scale it."""

    z: complex
    field_h: float = 1.0
    coupling_J: float = 1.0

    @property
    def x(self):
        return (complex(self.z) - 2.0 * self.field_h) / self.coupling_J

    @property
    def in_band(self):
        """True when Re z lies in [2h - J, 2h + J]."""
        return abs(self.x.real) <= 1.0

    @classmethod
    def from_x(cls, x, field_h=1.0, coupling_J=1.0):
        return cls(2.0 * field_h + coupling_J * x, field_h, coupling_J)


def _decay_and_root(energy, side):
    """Return (lam, w) with G0(r, s) = lam^|r-s| / (J w)."""
    x = energy.x
    real_axis = x.imag == 0.0
    if real_axis and abs(abs(x.real) - 1.0) <= _EDGE_TOL:
        raise SingularityError(f"energy {energy.z!r} sits on a band edge")
    if real_axis and abs(x.real) < 1.0:
        if side not in ("+", "-"):
            raise SingularityError(
                f"in-band energy {energy.z!r} needs side '+' or '-', got {side!r}")
        sign = 1.0 if side == "+" else -1.0
        root = math.sqrt(1.0 - x.real * x.real)
        return complex(-x.real, sign * root), complex(0.0, sign * root)
    w = np.sqrt(x * x - 1.0)
    if abs(-x + w) > 1.0:
        w = -w
    return -x + w, w


def g0(r, s, energy, side=None):
    """Unperturbed Green function <r|(z - H0)^-1|s> of the infinite chain.

    Parameters
    ----------
    r, s : int
        Lattice sites.
    energy : EnergyArgument
    side : {'+', '-', None}
        Retarded ('+') or advanced ('-') boundary value for real in-band z.
    """
    lam, w = _decay_and_root(energy, side)
    return lam ** abs(int(r) - int(s)) / (energy.coupling_J * w)


def full_green(r, s, energy, spec, side=None):
    """Dyson-resummed Green function for the single diagonal defect.

    G = G0 + G0|l> 2 eps / (1 - 2 eps G0(l, l)) <l|G0, evaluated on the
    infinite chain with the defect at ``spec.defect_site``.
    """
    if energy.field_h != spec.field_h or energy.coupling_J != spec.coupling_J:
        raise ParameterError("energy argument and spec use different h or J")
    l = spec.defect_site
    lam, w = _decay_and_root(energy, side)
    jw = energy.coupling_J * w
    free = lam ** abs(int(r) - int(s)) / jw
    if spec.defect_eps == 0.0:
        return free
    two_eps = 2.0 * spec.defect_eps
    denom = 1.0 - two_eps / jw
    if abs(denom) < 1e-13:
        raise PoleError(f"z={energy.z!r} is the bound-state pole; use localized_residue")
    g_rl = lam ** abs(int(r) - l) / jw
    g_ls = lam ** abs(l - int(s)) / jw
    return free + g_rl * two_eps / denom * g_ls


def localization_xi(alpha):
    """Inverse localization length -ln(sqrt(1 + alpha^2) - |alpha|) = asinh|alpha|."""
    return float(np.arcsinh(abs(alpha)))


def bound_state_energy(alpha, field_h=1.0, coupling_J=1.0):
    """2h - J sqrt(1 + alpha^2) below the band for alpha < 0, 2h + ... above for alpha > 0."""
    if alpha == 0:
        raise NoBoundStateError("alpha = 0: the defect-free chain has no bound state")
    sign = -1.0 if alpha < 0 else 1.0
    return 2.0 * field_h + sign * coupling_J * math.hypot(1.0, alpha)


@dataclass(frozen=True)
class LocalizedState:
    """Bound state split off the band by the defect.

    ``amplitude(m)`` gives b at offset m = n - l from the defect, with the
    printed overall sign (all negative for alpha < 0, alternating for alpha > 0).
    """

    energy_loc: float
    xi: float
    alpha: float
    defect_site: int = 0

    @property
    def peak(self):
        """|b_l| = sqrt|alpha| / (1 + alpha^2)^(1/4)."""
        return math.sqrt(abs(self.alpha)) / (1.0 + self.alpha * self.alpha) ** 0.25

    @property
    def localization_length(self):
        return 1.0 / self.xi

    @property
    def truncation_radius(self):
        """Offset beyond which |b| < e^-40 relative to the peak."""
        return math.ceil(40.0 / self.xi)

    def amplitude(self, m):
        m = np.abs(np.asarray(m))
        mag = self.peak * np.exp(-self.xi * m)
        if self.alpha < 0:
            out = -mag
        else:
            out = np.where(m % 2 == 0, mag, -mag)
        return float(out) if out.ndim == 0 else out

    def amplitudes(self, radius=None):
        """Offsets -radius..radius and the matching amplitudes."""
        radius = self.truncation_radius if radius is None else int(radius)
        offsets = np.arange(-radius, radius + 1)
        return offsets, self.amplitude(offsets)


def localized_state(spec):
    alpha = spec.alpha
    if alpha == 0:
        raise NoBoundStateError("alpha = 0: the defect-free chain has no bound state")
    return LocalizedState(
        energy_loc=bound_state_energy(alpha, spec.field_h, spec.coupling_J),
        xi=localization_xi(alpha),
        alpha=alpha,
        defect_site=spec.defect_site,
    )


def band_amplitude(spec, theta, n):
    """Unnormalized band eigenstate amplitude at site ``n`` for quasi-momentum theta.

    Returns e^{i theta n} + alpha e^{i|theta||n-l|} e^{i theta l} / (i|sin theta| - alpha);
    the 1/sqrt(N+1) prefactor is left to the caller.
    """
    theta = np.asarray(theta, dtype=float)
    alpha = spec.alpha
    l = spec.defect_site
    sin_abs = np.abs(np.sin(theta))
    if np.any(np.abs(theta) >= np.pi):
        raise SingularityError("theta must lie strictly inside (-pi, pi)")
    if np.any(sin_abs == 0.0):
        raise SingularityError("theta = 0 is a band edge")
    plane = np.exp(1j * theta * n)
    if alpha == 0:
        return plane
    scatter = alpha * np.exp(1j * np.abs(theta) * abs(int(n) - l)) * np.exp(1j * theta * l)
    return plane + scatter / (1j * sin_abs - alpha)


def localized_residue(spec, r, s):
    """Residue of G(r, s; z) at the bound-state pole, b_r b_s.

    Sites are taken relative to the defect on the ring, so signed and
    canonical labels give the same value.
    """
    state = localized_state(spec)
    return state.amplitude(spec.offset(r)) * state.amplitude(spec.offset(s))
