"""Numerical kernels: integer-order Bessel functions, theta quadrature, phase sums.

The Bessel table and the oscillatory phase sum each exist twice, as a numba
kernel and as a vectorized numpy routine.  ``defectchain._accel`` decides which
one the public functions dispatch to.
"""
import math
from dataclasses import dataclass

import numpy as np

from ._accel import jit, select
from .errors import NumericalError, ParameterError

_RESCALE = 1.0e100
_SMALL_X = 1.0e-8
_PANEL_ORDER = 24


def _miller_start(n_max, x):
    big = max(n_max, x)
    m = int(big) + 20 + int(math.sqrt(60.0 * big))
    return m + (m % 2)


@jit
def _miller_table_nb(n_max, xs):
    out = np.zeros((xs.shape[0], n_max + 1))
    for k in range(xs.shape[0]):
        x = xs[k]
        if x == 0.0:
            out[k, 0] = 1.0
            continue
        if x < 1.0e-8:
            term = 1.0
            for n in range(n_max + 1):
                if n > 0:
                    term *= 0.5 * x / n
                if term == 0.0:
                    break
                out[k, n] = term * (1.0 - 0.25 * x * x / (n + 1))
            continue
        big = max(float(n_max), x)
        m = int(big) + 20 + int(math.sqrt(60.0 * big))
        m += m % 2
        f_next = 0.0
        f_cur = 1.0
        s_even = 0.0
        s_sq = 0.0
        for j in range(m, 0, -1):
            # f_cur holds f_j; produce f_{j-1}
            if j <= n_max:
                out[k, j] = f_cur
            s_sq += 2.0 * f_cur * f_cur
            if j % 2 == 0:
                s_even += 2.0 * f_cur
            f_prev = (2.0 * j / x) * f_cur - f_next
            f_next = f_cur
            f_cur = f_prev
            if abs(f_cur) > 1.0e100:
                f_cur *= 1.0e-100
                f_next *= 1.0e-100
                s_even *= 1.0e-100
                s_sq *= 1.0e-200
                for q in range(j - 1, n_max + 1):
                    if q >= 0:
                        out[k, q] *= 1.0e-100
        out[k, 0] = f_cur
        s_sq += f_cur * f_cur
        s_even += f_cur
        scale = 1.0 / math.sqrt(s_sq)
        if s_even < 0.0:
            scale = -scale
        for q in range(n_max + 1):
            out[k, q] *= scale
    return out


def _miller_table_np(n_max, xs):
    out = np.zeros((xs.shape[0], n_max + 1))
    zero = xs == 0.0
    tiny = (xs > 0.0) & (xs < _SMALL_X)
    work = ~(zero | tiny)
    out[zero, 0] = 1.0
    if tiny.any():
        xt = xs[tiny]
        orders = np.arange(n_max + 1)
        logs = orders[None, :] * np.log(0.5 * xt[:, None]) - np.array(
            [math.lgamma(n + 1.0) for n in orders])[None, :]
        out[tiny] = np.exp(logs) * (1.0 - 0.25 * xt[:, None] ** 2 / (orders[None, :] + 1))
    if not work.any():
        return out
    x = xs[work]
    m = _miller_start(n_max, float(x.max()))
    tab = np.zeros((x.shape[0], n_max + 1))
    f_next = np.zeros_like(x)
    f_cur = np.ones_like(x)
    s_even = np.zeros_like(x)
    s_sq = np.zeros_like(x)
    for j in range(m, 0, -1):
        if j <= n_max:
            tab[:, j] = f_cur
        s_sq += 2.0 * f_cur * f_cur
        if j % 2 == 0:
            s_even += 2.0 * f_cur
        f_prev = (2.0 * j / x) * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        big = np.abs(f_cur) > _RESCALE
        if big.any():
            f_cur[big] /= _RESCALE
            f_next[big] /= _RESCALE
            s_even[big] /= _RESCALE
            s_sq[big] /= _RESCALE ** 2
            tab[big, max(j - 1, 0):] /= _RESCALE
    tab[:, 0] = f_cur
    s_sq += f_cur * f_cur
    s_even += f_cur
    scale = np.copysign(1.0 / np.sqrt(s_sq), s_even)
    out[work] = tab * scale[:, None]
    return out


_miller_table = select(_miller_table_nb, _miller_table_np)


def bessel_j_table(n_max, x):
    """Bessel functions J_0..J_{n_max} of integer order.

    Miller's downward recurrence, normalized with J_0^2 + 2 sum J_n^2 = 1 and
    signed with J_0 + 2 sum J_{2k} = 1.

    Parameters
    ----------
    n_max : int
        Highest order required (>= 0).
    x : float or array_like
        Non-negative arguments.

    Returns
    -------
    ndarray
        Shape ``x.shape + (n_max + 1,)``.
    """
    n_max = int(n_max)
    if n_max < 0:
        raise ParameterError(f"n_max must be >= 0, got {n_max}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0) or not np.all(np.isfinite(xs)):
        raise ParameterError("bessel_j_table needs finite non-negative arguments")
    flat = np.ascontiguousarray(xs.reshape(-1))
    table = _miller_table(n_max, flat)
    return table.reshape(xs.shape + (n_max + 1,))


def bessel_j(n, x):
    """Bessel function of the first kind J_n(x) for integer ``n``.

    Negative orders and arguments use J_{-n} = (-1)^n J_n and
    J_n(-x) = (-1)^n J_n(x).  Vectorized over ``x``; ``n`` is a scalar.
    """
    if int(n) != n:
        raise ParameterError(f"integer order required, got {n}")
    n = int(n)
    xs = np.asarray(x, dtype=float)
    parity = -1.0 if n % 2 else 1.0
    sign = np.where(xs < 0, parity, 1.0)
    if n < 0:
        sign = sign * parity
    values = bessel_j_table(abs(n), np.abs(xs))[..., abs(n)] * sign
    if values.ndim == 0:
        return float(values)
    return values


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights on [-pi, pi]; the weights sum to 2*pi."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ParameterError("nodes and weights must be matching 1-d arrays")
        if self.nodes.size < 16:
            raise ParameterError(f"at least 16 nodes required, got {self.nodes.size}")

    @property
    def size(self):
        return self.nodes.size


def _panel_sizes(total, order):
    count = max(1, -(-total // order))
    base, extra = divmod(total, count)
    return [base + 1 if i < extra else base for i in range(count)]


def gauss_legendre_rule(m):
    """Composite Gauss-Legendre rule with ``m`` nodes on [-pi, pi].

    Panel boundaries include theta = 0 so integrands built from |theta| are
    smooth on every panel.
    """
    m = int(m)
    if m < 16 or m % 2:
        raise ParameterError(f"node count must be even and >= 16, got {m}")
    half = m // 2
    nodes, weights = [], []
    for lo, hi in ((-np.pi, 0.0), (0.0, np.pi)):
        sizes = _panel_sizes(half, _PANEL_ORDER)
        edges = np.linspace(lo, hi, len(sizes) + 1)
        for size, a, b in zip(sizes, edges[:-1], edges[1:]):
            x, w = np.polynomial.legendre.leggauss(size)
            nodes.append(0.5 * (b - a) * x + 0.5 * (b + a))
            weights.append(0.5 * (b - a) * w)
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights))


def node_count_for(tau, d):
    """Node count resolving an integrand that oscillates at rate ~ tau + d."""
    if tau < 0 or d < 0:
        raise ParameterError("tau and d must be non-negative")
    m = max(64, math.ceil(12.0 * (tau + d)))
    return m + (m % 2)


def defect_node_floor(alpha, cap=8192):
    """Minimum node count for integrands with poles at distance asinh|alpha| from the real axis.

    The scattering factors are analytic only in a strip of that half-width
    around theta = 0 and theta = +-pi, so small defects need finer panels.
    """
    if alpha == 0:
        return 0
    m = min(cap, math.ceil(32.0 / math.asinh(abs(alpha))))
    return m + (m % 2)


def integrate_theta(f, rule):
    """Average of ``f`` over theta in [-pi, pi]: sum_i w_i f(theta_i) / (2 pi).

    ``f`` is called once with the node array and may return extra trailing axes.
    """
    values = np.asarray(f(rule.nodes))
    bad = ~np.isfinite(values)
    if bad.any():
        idx = np.argwhere(bad)[0][0]
        raise NumericalError(f"non-finite integrand at theta={rule.nodes[idx]!r}")
    w = rule.weights.reshape((-1,) + (1,) * (values.ndim - 1))
    return np.sum(w * values, axis=0) / (2.0 * np.pi)


@jit
def _phase_sum_nb(coeffs, energies, times):
    out = np.zeros(times.shape[0], dtype=np.complex128)
    for a in range(times.shape[0]):
        t = times[a]
        re = 0.0
        im = 0.0
        for k in range(energies.shape[0]):
            ph = energies[k] * t
            c = math.cos(ph)
            s = math.sin(ph)
            re += coeffs[k].real * c + coeffs[k].imag * s
            im += coeffs[k].imag * c - coeffs[k].real * s
        out[a] = complex(re, im)
    return out


def _phase_sum_np(coeffs, energies, times):
    return np.exp(-1j * np.outer(times, energies)) @ coeffs


_phase_sum = select(_phase_sum_nb, _phase_sum_np)


def phase_sum(coeffs, energies, times):
    """Evaluate sum_k coeffs[k] * exp(-i energies[k] t) for every t in ``times``."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    energies = np.ascontiguousarray(energies, dtype=float)
    times = np.ascontiguousarray(np.atleast_1d(times), dtype=float)
    if coeffs.shape != energies.shape:
        raise ParameterError("coeffs and energies must have the same shape")
    return _phase_sum(coeffs, energies, times)
