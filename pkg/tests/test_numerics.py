import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from defectchain.errors import NumericalError, ParameterError
from defectchain.numerics import (
    bessel_j,
    bessel_j_table,
    gauss_legendre_rule,
    integrate_theta,
    node_count_for,
    phase_sum,
)
from oracles import bessel_series


def test_bessel_origin():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(5, 0.0) == 0.0


def test_bessel_frozen_values():
    # values computed with the mpmath power series in tests/oracles.py
    assert bessel_j(1, 2.0) == pytest.approx(0.5767248078, abs=1e-9)
    assert abs(bessel_j(3, 10.0)) == pytest.approx(0.0583794, abs=1e-7)
    assert bessel_j(0, 5.0) == pytest.approx(-0.177597, abs=1e-6)


def test_bessel_negative_order_and_argument():
    x = np.linspace(0.1, 30, 37)
    for n in range(6):
        assert np.allclose(bessel_j(-n, x), (-1) ** n * bessel_j(n, x), atol=0, rtol=0)
        assert np.allclose(bessel_j(n, -x), (-1) ** n * bessel_j(n, x), atol=0, rtol=0)


def test_bessel_rejects_fractional_order():
    with pytest.raises(ParameterError):
        bessel_j(1.5, 1.0)


def test_bessel_matches_series_grid():
    xs = np.linspace(0.0, 30.0, 31)
    table = bessel_j_table(30, xs)
    worst = 0.0
    for k, x in enumerate(xs):
        for n in range(31):
            worst = max(worst, abs(table[k, n] - bessel_series(n, x)))
    assert worst < 1e-11


def test_bessel_wide_range_against_scipy():
    scipy_special = pytest.importorskip("scipy.special")
    xs = np.concatenate([np.linspace(0.0, 200.0, 401), [1e-12, 1e-9, 1e-6, 1e-3]])
    table = bessel_j_table(200, xs)
    ref = scipy_special.jv(np.arange(201)[None, :], xs[:, None])
    assert np.abs(table - ref).max() < 1e-12


@settings(max_examples=200, deadline=None)
@given(n=st.integers(1, 150), x=st.floats(0.05, 200.0))
def test_bessel_three_term_recurrence(n, x):
    t = bessel_j_table(n + 1, x)
    assert t[n - 1] + t[n + 1] == pytest.approx(2 * n / x * t[n], abs=1e-10)


@pytest.mark.parametrize("x", [0.5, 3.0, 17.0, 64.0, 150.0])
def test_bessel_squares_sum_to_one(x):
    nmax = int(x) + 40
    t = bessel_j_table(nmax, x)
    assert t[0] ** 2 + 2 * np.sum(t[1:] ** 2) == pytest.approx(1.0, abs=1e-10)


def test_rule_basic_properties():
    rule = gauss_legendre_rule(64)
    assert rule.size == 64
    assert rule.weights.sum() == pytest.approx(2 * np.pi, abs=1e-12)
    assert np.all(rule.weights > 0)
    assert np.all(np.abs(rule.nodes) <= np.pi)
    with pytest.raises(ParameterError):
        gauss_legendre_rule(15)
    with pytest.raises(ParameterError):
        gauss_legendre_rule(65)


def test_integrate_constant_and_orthogonality():
    rule = gauss_legendre_rule(64)
    assert integrate_theta(lambda th: np.ones_like(th), rule) == pytest.approx(1.0, abs=1e-14)
    for m in (1, 2, 7, 20, 45):
        sized = gauss_legendre_rule(node_count_for(0, m))
        assert abs(integrate_theta(lambda th: np.exp(1j * m * th), sized)) < 1e-12


def test_integrate_bessel_representation():
    rule = gauss_legendre_rule(node_count_for(5.0, 0))
    val = integrate_theta(lambda th: np.exp(1j * 5.0 * np.cos(th)), rule)
    assert val.real == pytest.approx(-0.177597, abs=1e-6)
    assert val.real == pytest.approx(bessel_j(0, 5.0), abs=1e-8)
    assert abs(val.imag) < 1e-12


def test_integrate_reports_bad_node():
    rule = gauss_legendre_rule(64)
    with pytest.raises(NumericalError, match="theta"):
        integrate_theta(lambda th: np.where(th > 1.0, np.nan, 1.0), rule)


def test_integrate_trailing_axes():
    rule = gauss_legendre_rule(64)
    out = integrate_theta(lambda th: np.stack([np.ones_like(th), np.cos(th) ** 2], axis=1), rule)
    assert out == pytest.approx([1.0, 0.5], abs=1e-13)


def test_node_count_rule():
    assert node_count_for(0, 0) == 64
    assert node_count_for(10, 5) == 180
    assert node_count_for(0.01, 5.0) % 2 == 0
    assert node_count_for(1.0, 4.0) == 64
    assert node_count_for(1.1, 4.4) == 66
    assert node_count_for(10.05, 0) == 122
    with pytest.raises(ParameterError):
        node_count_for(-1, 0)


def test_node_count_accuracy_vs_bessel():
    # e^{i theta d} e^{i tau cos theta} averages to i^d J_d(tau)
    tau, d = 20.0, 10
    rule = gauss_legendre_rule(node_count_for(tau, d))
    val = integrate_theta(lambda th: np.exp(1j * (d * th + tau * np.cos(th))), rule)
    assert abs(val - 1j ** d * bessel_series(d, tau)) < 1e-6


@pytest.mark.parametrize("tau,d", [(1.0, 0), (30.0, 5), (100.0, 20), (100.0, 60)])
def test_doubling_nodes_changes_little(tau, d):
    def f(th):
        g = -0.5 * np.exp(1j * np.abs(th) * d) / (1j * np.abs(np.sin(th)) + 0.5)
        return (np.exp(1j * th * d) + g) * np.exp(-1j * tau * np.cos(th))

    m = node_count_for(tau, d)
    a = integrate_theta(f, gauss_legendre_rule(m))
    b = integrate_theta(f, gauss_legendre_rule(2 * m))
    assert abs(a - b) < 1e-8


def test_phase_sum_matches_direct():
    rng = np.random.default_rng(3)
    c = rng.normal(size=50) + 1j * rng.normal(size=50)
    e = rng.uniform(0, 3, 50)
    t = np.linspace(0, 20, 11)
    direct = np.array([np.sum(c * np.exp(-1j * e * tk)) for tk in t])
    assert np.abs(phase_sum(c, e, t) - direct).max() < 1e-12
    with pytest.raises(ParameterError):
        phase_sum(c, e[:-1], t)
