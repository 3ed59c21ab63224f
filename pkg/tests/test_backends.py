"""The numba kernels and the numpy fallbacks must agree."""
import os
import subprocess
import sys

import numpy as np
import pytest

from defectchain import _accel, numerics


def test_miller_kernels_agree():
    xs = np.concatenate([[0.0, 1e-10, 1e-4], np.linspace(0.01, 120.0, 97)])
    a = numerics._miller_table_nb(80, xs)
    b = numerics._miller_table_np(80, xs)
    assert np.abs(a - b).max() < 1e-13


def test_phase_sum_kernels_agree():
    rng = np.random.default_rng(0)
    c = rng.normal(size=300) + 1j * rng.normal(size=300)
    e = rng.uniform(0.5, 3.5, 300)
    t = np.linspace(0, 50, 40)
    a = numerics._phase_sum_nb(c, e, t)
    b = numerics._phase_sum_np(c, e, t)
    assert np.abs(a - b).max() < 1e-10


def test_select_follows_flag():
    picked = _accel.select("compiled", "fallback")
    assert picked == ("compiled" if _accel.USE_NUMBA else "fallback")


@pytest.mark.parametrize("value,expected", [("1", "False"), ("", "True")])
def test_env_flag_controls_backend(value, expected):
    env = dict(os.environ, DEFECTCHAIN_DISABLE_NUMBA=value)
    out = subprocess.run(
        [sys.executable, "-c", "from defectchain import _accel; print(_accel.USE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
