"""XY ring with a single field defect, restricted to the one-excitation sector.

In that sector the ring is a tight-binding problem: on-site energy 2h
(2h + 2*eps at the defect) and hopping -J/2 between ring neighbours, which
reproduces the band E_k = 2h - J cos(2 pi k / n_sites).  The finite-ring
matrix is the exact reference every analytic formula is checked against.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError


def canonical_site(i, n_sites):
    """Storage index in 0..n_sites-1 of a (possibly signed) ring site."""
    return int(i) % n_sites


def signed_site(i, n_sites):
    """Signed index in [-(n_sites-1)//2, n_sites//2] of a ring site."""
    c = int(i) % n_sites
    return c - n_sites if c > n_sites // 2 else c


def ring_distance(i, j, n_sites):
    d = abs(int(i) - int(j)) % n_sites
    return min(d, n_sites - d)


@dataclass(frozen=True)
class SiteIndex:
    """A ring site; signed and canonical representations compare equal."""

    value: int
    n_sites: int

    @property
    def canonical(self):
        return canonical_site(self.value, self.n_sites)

    @property
    def signed(self):
        return signed_site(self.value, self.n_sites)

    def distance(self, other):
        other = other.value if isinstance(other, SiteIndex) else other
        return ring_distance(self.value, other, self.n_sites)

    def __eq__(self, other):
        if isinstance(other, SiteIndex):
            return self.n_sites == other.n_sites and self.canonical == other.canonical
        return NotImplemented

    def __hash__(self):
        return hash((self.canonical, self.n_sites))

    def __index__(self):
        return self.canonical


@dataclass(frozen=True)
class ChainSpec:
    """Physical parameters of the ring.

    ``defect_site`` may be given in signed form; it is stored as given and
    reduced modulo ``n_sites`` wherever a matrix index is needed.
    """

    n_sites: int
    field_h: float = 1.0
    coupling_J: float = 1.0
    defect_eps: float = 0.0
    defect_site: int = 0

    def __post_init__(self):
        if int(self.n_sites) != self.n_sites or self.n_sites < 3:
            raise ParameterError(f"n_sites must be an integer >= 3, got {self.n_sites}")
        if not self.coupling_J > 0:
            raise ParameterError(f"coupling_J must be positive, got {self.coupling_J}")
        if not 2.0 * self.field_h > self.coupling_J:
            raise ParameterError(
                f"need 2h > J, got h={self.field_h}, J={self.coupling_J}")
        if not math.isfinite(self.alpha):
            raise ParameterError(f"defect strength must be finite, got eps={self.defect_eps}")

    @classmethod
    def from_alpha(cls, n_sites, alpha, field_h=1.0, coupling_J=1.0, defect_site=0):
        """Build a spec from the dimensionless defect alpha = 2 eps / J."""
        return cls(n_sites, field_h, coupling_J, 0.5 * alpha * coupling_J, defect_site)

    @property
    def alpha(self):
        return 2.0 * self.defect_eps / self.coupling_J

    @property
    def defect_index(self):
        return canonical_site(self.defect_site, self.n_sites)

    @property
    def band(self):
        """Band edges (2h - J, 2h + J)."""
        return 2.0 * self.field_h - self.coupling_J, 2.0 * self.field_h + self.coupling_J

    def site(self, i):
        return SiteIndex(int(i), self.n_sites)

    def offset(self, i):
        """Signed ring offset of site ``i`` from the defect."""
        return signed_site(int(i) - self.defect_site, self.n_sites)

    def with_alpha(self, alpha):
        return ChainSpec.from_alpha(self.n_sites, alpha, self.field_h, self.coupling_J,
                                    self.defect_site)

    def with_sites(self, n_sites):
        return ChainSpec(n_sites, self.field_h, self.coupling_J, self.defect_eps,
                         self.defect_site)


def build_hamiltonian(spec):
    """Dense one-excitation Hamiltonian of the ring."""
    n = spec.n_sites
    ham = np.zeros((n, n))
    idx = np.arange(n)
    ham[idx, idx] = 2.0 * spec.field_h
    ham[spec.defect_index, spec.defect_index] += 2.0 * spec.defect_eps
    hop = -0.5 * spec.coupling_J
    ham[idx, (idx + 1) % n] = hop
    ham[(idx + 1) % n, idx] = hop
    return ham


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and orthonormal eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self):
        return self.eigenvalues.size

    def residual(self, ham):
        """Largest column norm of H V - V diag(lambda)."""
        r = ham @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.linalg.norm(r, axis=0).max())

    def propagator_column(self, s, times):
        """Amplitudes <r|exp(-iHt)|s> for all r, one row per time."""
        vecs = self.eigenvectors
        times = np.atleast_1d(np.asarray(times, dtype=float))
        phases = np.exp(-1j * np.outer(times, self.eigenvalues))
        return (phases * vecs[int(s) % self.size]) @ vecs.T


def diagonalize(ham):
    """Full eigendecomposition of a real symmetric matrix (LAPACK ``syevd``)."""
    ham = np.asarray(ham, dtype=float)
    if ham.ndim != 2 or ham.shape[0] != ham.shape[1]:
        raise ParameterError(f"square matrix required, got shape {ham.shape}")
    if not np.array_equal(ham, ham.T):
        raise ParameterError("matrix is not symmetric")
    try:
        vals, vecs = np.linalg.eigh(ham)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver did not converge for n={ham.shape[0]}: {exc}") from exc
    spectrum = Spectrum(vals, vecs)
    scale = max(np.abs(ham).max(), 1.0)
    res = spectrum.residual(ham)
    if not res <= 1e-10 * scale:
        raise NumericalError(f"eigen-residual {res:.3e} exceeds tolerance for n={ham.shape[0]}")
    return spectrum


@dataclass(frozen=True)
class WaveFunction:
    """Normalized single-excitation state, one complex amplitude per site."""

    amplitudes: np.ndarray
    spec: ChainSpec

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.spec.n_sites,):
            raise ParameterError(
                f"expected {self.spec.n_sites} amplitudes, got shape {amps.shape}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-12:
            raise ParameterError(f"state not normalized: norm^2 = {norm!r}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def site_state(cls, spec, s):
        amps = np.zeros(spec.n_sites, dtype=complex)
        amps[canonical_site(s, spec.n_sites)] = 1.0
        return cls(amps, spec)

    @classmethod
    def normalized(cls, amplitudes, spec):
        amps = np.asarray(amplitudes, dtype=complex)
        return cls(amps / np.linalg.norm(amps), spec)

    def __getitem__(self, i):
        return self.amplitudes[canonical_site(i, self.spec.n_sites)]


def evolve_state(spec, spectrum, psi0, t):
    """exp(-iHt) psi0 via the spectral decomposition."""
    if spectrum.size != spec.n_sites or psi0.spec.n_sites != spec.n_sites:
        raise ParameterError("spectrum, state and spec sizes differ")
    vecs = spectrum.eigenvectors
    coeff = vecs.T @ psi0.amplitudes
    out = vecs @ (np.exp(-1j * spectrum.eigenvalues * float(t)) * coeff)
    return WaveFunction(out, spec)


def transition_amplitude_numeric(spec, s, r, t, spectrum=None):
    """<r|exp(-iHt)|s> on the finite ring.  ``t`` may be an array."""
    if spectrum is None:
        spectrum = diagonalize(build_hamiltonian(spec))
    if spectrum.size != spec.n_sites:
        raise ParameterError("spectrum does not belong to this spec")
    vecs = spectrum.eigenvectors
    si = canonical_site(s, spec.n_sites)
    ri = canonical_site(r, spec.n_sites)
    times = np.asarray(t, dtype=float)
    weights = vecs[ri] * vecs[si]
    values = np.exp(-1j * np.multiply.outer(times, spectrum.eigenvalues)) @ weights
    if values.ndim == 0:
        return complex(values)
    return values
