"""Reference computations that share no code with the package."""
from functools import lru_cache

import mpmath
import numpy as np

SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def bessel_series(n, x, dps=60):
    """J_n(x) from the power series, in high precision."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        total = mpmath.mpf(0)
        k = 0
        while True:
            term = (-1) ** k * (x / 2) ** (2 * k + n) / (mpmath.factorial(k) * mpmath.factorial(k + n))
            total += term
            if k > x and abs(term) < mpmath.mpf(10) ** (-dps + 5):
                break
            k += 1
        return float(total)


def full_register_state(amps):
    """Embed a one-excitation state into the 2^n qubit register (site 0 = leftmost qubit)."""
    n = len(amps)
    psi = np.zeros(2 ** n, dtype=complex)
    for site, c in enumerate(amps):
        psi[1 << (n - 1 - site)] = c
    return psi


def reduced_pair(psi, n, i, j):
    """Two-qubit reduced density matrix of qubits (i, j) by explicit partial trace."""
    t = psi.reshape([2] * n)
    others = [k for k in range(n) if k not in (i, j)]
    t = np.transpose(t, [i, j] + others).reshape(4, -1)
    return t @ t.conj().T


def _psd_sqrt(m):
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def wootters(rho):
    """Wootters concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the singular values of sqrt(rho) sqrt(rho~), which avoids
    square roots of roundoff-level eigenvalues of rho rho~.
    """
    root = _psd_sqrt(rho)
    root_tilde = SIGMA_YY @ root.conj() @ SIGMA_YY
    lam = np.linalg.svd(root @ root_tilde, compute_uv=False)
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def ring_matrix(n, h, J, eps, l):
    """One-excitation ring Hamiltonian written out element by element."""
    m = np.zeros((n, n))
    for a in range(n):
        m[a, a] = 2 * h + (2 * eps if a == l % n else 0.0)
        m[a, (a + 1) % n] = m[(a + 1) % n, a] = -J / 2
    return m


@lru_cache(maxsize=None)
def ring_eigh(n, alpha, h=1.0, J=1.0):
    """Cached scipy eigendecomposition (scipy, not the package's wrapper)."""
    import scipy.linalg
    vals, vecs = scipy.linalg.eigh(ring_matrix(n, h, J, alpha * J / 2, 0))
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return vals, vecs


def ring_amplitude(n, alpha, s, r, t):
    """<r|exp(-iHt)|s> from the scipy spectrum."""
    vals, vecs = ring_eigh(n, alpha)
    w = vecs[r % n] * vecs[s % n]
    return np.exp(-1j * np.multiply.outer(np.asarray(t, float), vals)) @ w
