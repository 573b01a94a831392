import os
import subprocess
import sys

import numpy as np
import pytest

from decosolv import kernels

rng = np.random.default_rng(11)


def test_golden_rule_sum_agree():
    omega = rng.uniform(0.01, 2.0, 300)
    weight = rng.uniform(0.0, 1.0, 300)
    times = np.linspace(0, 400, 700)
    a = kernels.golden_rule_sum_numba(omega, weight, times)
    b = kernels.golden_rule_sum_numpy(omega, weight, times)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-14)
    assert np.allclose(b, (1 - np.cos(np.outer(times, omega))) @ weight, rtol=1e-9, atol=1e-12)


def test_golden_rule_sum_small_t_no_cancellation():
    omega = np.array([0.5])
    weight = np.array([1.0])
    t = np.array([1e-9])
    for f in (kernels.golden_rule_sum_numba, kernels.golden_rule_sum_numpy):
        assert f(omega, weight, t)[0] == pytest.approx(0.5 * (0.5e-9) ** 2, rel=1e-14)


def test_autocovariance_agree():
    d = rng.standard_normal(5000)
    a = kernels.autocovariance_numba(d, 200)
    b = kernels.autocovariance_numpy(d, 200)
    assert np.allclose(a, b, rtol=1e-11, atol=1e-14)
    assert b[0] == pytest.approx(np.mean(d * d), rel=1e-13)
    assert b[3] == pytest.approx(np.mean(d[:-3] * d[3:]), rel=1e-12)


def test_batch_autocovariance_agree():
    y = rng.standard_normal((40, 300))
    a = kernels.batch_autocovariance_numba(y, 60)
    b = kernels.batch_autocovariance_numpy(y, 60)
    assert np.allclose(a, b, rtol=1e-11, atol=1e-14)
    assert np.allclose(b[5], kernels.autocovariance_numpy(y[5], 60), rtol=1e-12)


def test_synthesize_agree():
    a = rng.standard_normal((25, 6))
    b = rng.standard_normal((25, 6))
    omega = rng.uniform(0.05, 1.0, 6)
    times = np.arange(150) * 0.3
    x = kernels.synthesize_numba(a, b, omega, times)
    y = kernels.synthesize_numpy(a, b, omega, times)
    assert np.allclose(x, y, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("flag,expected", [("1", "False"), ("0", "True")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, DECOSOLV_DISABLE_NUMBA=flag)
    code = (
        "from decosolv import _accel, kernels;"
        "print(_accel.NUMBA_ENABLED, kernels.autocovariance is kernels.autocovariance_numba)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == [expected, expected]
