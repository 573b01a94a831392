"""Inner loops: discrete golden-rule sum, autocovariance, trajectory synthesis.

Each kernel exists twice, a numba version (``*_numba``) and a numpy version
(``*_numpy``).  The public name points at one of them according to
:data:`decosolv._accel.NUMBA_ENABLED`.  Both are kept importable so tests and
benchmarks can compare them.
"""

import numpy as np

from ._accel import NUMBA_ENABLED, njit, prange

_CHUNK = 256


# --- golden-rule exponent: E(t) = sum_n w_n (1 - cos w_n t) ---------------


@njit(parallel=True, fastmath=True)
def golden_rule_sum_numba(omega, weight, times):
    nt = times.shape[0]
    nm = omega.shape[0]
    out = np.empty(nt)
    for j in prange(nt):
        t = times[j]
        acc = 0.0
        for n in range(nm):
            # 1 - cos(x) = 2 sin^2(x/2), no cancellation at small x
            s = np.sin(0.5 * omega[n] * t)
            acc += weight[n] * s * s
        out[j] = 2.0 * acc
    return out


def golden_rule_sum_numpy(omega, weight, times):
    times = np.asarray(times, dtype=float)
    out = np.empty(times.shape[0])
    for start in range(0, times.shape[0], _CHUNK):
        tt = times[start:start + _CHUNK]
        s = np.sin(0.5 * np.outer(tt, omega))
        out[start:start + _CHUNK] = 2.0 * (s * s) @ weight
    return out


# --- autocovariance with divisor N - k -----------------------------------


# fastmath lets the inner reductions vectorize; the reassociation changes
# results only at the level of rounding error


@njit(parallel=True, fastmath=True)
def autocovariance_numba(d, n_lags):
    n = d.shape[0]
    out = np.empty(n_lags + 1)
    for k in prange(n_lags + 1):
        # contiguous slices go straight to BLAS ddot
        out[k] = np.dot(d[: n - k], d[k:]) / (n - k)
    return out


def autocovariance_numpy(d, n_lags):
    n = d.shape[0]
    out = np.empty(n_lags + 1)
    for k in range(n_lags + 1):
        out[k] = np.dot(d[: n - k], d[k:]) / (n - k)
    return out


@njit(parallel=True, fastmath=True)
def batch_autocovariance_numba(y, n_lags):
    ns, n = y.shape
    out = np.empty((ns, n_lags + 1))
    for s in prange(ns):
        for k in range(n_lags + 1):
            acc = 0.0
            for i in range(n - k):
                acc += y[s, i] * y[s, i + k]
            out[s, k] = acc / (n - k)
    return out


def batch_autocovariance_numpy(y, n_lags):
    ns, n = y.shape
    out = np.empty((ns, n_lags + 1))
    for k in range(n_lags + 1):
        out[:, k] = np.einsum("ij,ij->i", y[:, : n - k], y[:, k:]) / (n - k)
    return out


# --- harmonic trajectories: y_s(t) = sum_n a_sn cos(w_n t) + b_sn sin(w_n t)


@njit(parallel=True)
def synthesize_numba(a, b, omega, times):
    ns, nm = a.shape
    nt = times.shape[0]
    c = np.empty((nm, nt))
    s = np.empty((nm, nt))
    for n in range(nm):
        for k in range(nt):
            c[n, k] = np.cos(omega[n] * times[k])
            s[n, k] = np.sin(omega[n] * times[k])
    out = np.zeros((ns, nt))
    for i in prange(ns):
        for n in range(nm):
            an = a[i, n]
            bn = b[i, n]
            for k in range(nt):
                out[i, k] += an * c[n, k] + bn * s[n, k]
    return out


def synthesize_numpy(a, b, omega, times):
    phase = np.outer(omega, times)
    return a @ np.cos(phase) + b @ np.sin(phase)


if NUMBA_ENABLED:
    golden_rule_sum = golden_rule_sum_numba
    autocovariance = autocovariance_numba
    batch_autocovariance = batch_autocovariance_numba
    synthesize = synthesize_numba
else:
    golden_rule_sum = golden_rule_sum_numpy
    autocovariance = autocovariance_numpy
    batch_autocovariance = batch_autocovariance_numpy
    synthesize = synthesize_numpy
