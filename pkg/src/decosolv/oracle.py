"""Brute-force classical harmonic bath.

Each mode contributes dU_n(t) = y0 cos(w t) + (v0 / w) sin(w t) to the gap,
with (y0, v0) Boltzmann distributed: var(y0) = 2 lambda_n kT and
var(v0) = 2 lambda_n kT w^2.  Propagation is exact, so the only error in
the sampled C(t) is statistical.

Sample ``i`` draws from its own stream seeded by ``(seed, i)``, which makes
the ensemble independent of how samples are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import kernels
from .bath import BathModes, ModesLike, SpectralDensityModel, as_modes
from .errors import DomainError, FitError
from .solvation import GapTrajectory, fit_gaussian_timescale, second_moment
from .units import thermal_energy


@dataclass(frozen=True)
class EnsembleSpec:
    modes: BathModes
    temperature: float
    n_samples: int
    dt: float
    n_steps: int
    seed: int
    mean_gap: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "modes", as_modes(self.modes))
        if self.n_samples < 1:
            raise DomainError("n_samples must be >= 1")
        if not self.dt > 0:
            raise DomainError("dt must be positive")
        if self.n_steps < 2:
            raise DomainError("n_steps must be >= 2")
        if not self.temperature > 0:
            raise DomainError("temperature must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")

    @property
    def times(self):
        return np.arange(self.n_steps) * self.dt


def sample_stream(seed, index):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=(int(index),))))


def initial_conditions(spec: EnsembleSpec):
    """Boltzmann (y0, v0), each of shape (n_samples, n_modes), in gap units."""
    m = spec.modes
    sigma = np.sqrt(2.0 * m.lam * thermal_energy(spec.temperature))
    nm = len(m)
    y0 = np.empty((spec.n_samples, nm))
    v0 = np.empty((spec.n_samples, nm))
    for i in range(spec.n_samples):
        z = sample_stream(spec.seed, i).standard_normal(2 * nm)
        y0[i] = sigma * z[:nm]
        v0[i] = sigma * m.omega * z[nm:]
    return y0, v0


def propagate_modes(y0, v0, omega, times):
    """Exact per-mode displacement and velocity, shape (..., n_modes, n_times)."""
    ph = np.multiply.outer(omega, times)
    c, s = np.cos(ph), np.sin(ph)
    y = y0[..., None] * c + (v0 / omega)[..., None] * s
    v = -(y0 * omega)[..., None] * s + v0[..., None] * c
    return y, v


def sample_gap_array(spec: EnsembleSpec):
    """Gap trajectories as an (n_samples, n_steps) array."""
    y0, v0 = initial_conditions(spec)
    m = spec.modes
    y = kernels.synthesize(y0, v0 / m.omega, np.ascontiguousarray(m.omega), spec.times)
    return y + spec.mean_gap


def sample_gap_trajectory(spec: EnsembleSpec):
    """One :class:`GapTrajectory` per sample."""
    return [GapTrajectory(spec.dt, row) for row in sample_gap_array(spec)]


def analytic_classical_c(bath: ModesLike | SpectralDensityModel, times, omega_max=None):
    """sum lambda_n cos(w_n t) / sum lambda_n, or its continuum analogue."""
    times = np.asarray(times, dtype=float)
    if isinstance(bath, SpectralDensityModel):
        if omega_max is None:
            omega_max = bath.default_cutoff()
        lam = bath.reorganization_energy(omega_max)
        if not lam > 0:
            raise DomainError("spectral density carries no reorganization energy")

        def g(w):
            return float(np.asarray(bath.j_over_omega(w)).reshape(-1)[0])

        out = np.empty(times.size)
        for i, t in enumerate(times.ravel()):
            val, _ = quad(g, 0.0, omega_max, weight="cos", wvar=t, limit=500, epsrel=1e-10)
            out[i] = val / np.pi / lam
        return out.reshape(times.shape)
    m = as_modes(bath)
    total = m.lam.sum()
    if not total > 0:
        raise DomainError("bath has no reorganization energy")
    return np.cos(np.multiply.outer(times, m.omega)) @ m.lam / total


def ensemble_c(trajectories, max_lag):
    """Ensemble-averaged normalised autocorrelation with standard errors.

    ``trajectories`` is an (n_samples, n_steps) array or a list of
    :class:`GapTrajectory` sharing one ``dt`` (then ``max_lag`` is in fs;
    for a bare array it is a lag count).  Fluctuations are taken about the
    ensemble mean.  Each sample's autocovariance uses divisor N - k; the
    ratio to lag 0 is formed after averaging, and its error bar is the
    ratio-estimator standard error across samples.
    """
    if isinstance(trajectories, np.ndarray):
        y = np.asarray(trajectories, dtype=float)
        dt = 1.0
        n_lags = int(max_lag)
    else:
        dts = {tr.dt for tr in trajectories}
        if len(dts) != 1:
            raise DomainError("trajectories must share one time step")
        dt = dts.pop()
        y = np.stack([tr.samples for tr in trajectories])
        n_lags = int(np.floor(max_lag / dt + 1e-9))
    n_s, n = y.shape
    if not 0 <= n_lags <= (n - 1) // 2:
        raise DomainError("max_lag exceeds half the trajectory length")
    d = np.ascontiguousarray(y - y.mean())
    rows = kernels.batch_autocovariance(d, n_lags)
    mean = rows.mean(axis=0)
    c = mean / mean[0]
    if n_s > 1:
        resid = rows - np.outer(rows[:, 0], c)
        err = resid.std(axis=0, ddof=1) / np.sqrt(n_s) / mean[0]
    else:
        err = np.full(c.shape, np.nan)
    return np.arange(n_lags + 1) * dt, c, err


@dataclass(frozen=True)
class OracleReport:
    seed: int
    n_samples: int
    times: np.ndarray
    c_estimate: np.ndarray
    c_error: np.ndarray
    c_analytic: np.ndarray
    variance_estimate: float
    variance_error: float
    variance_expected: float
    tau_fit: float | None
    tau_expected: float

    def band_fraction(self, n_sigma=3.0):
        """Share of lag points where |estimate - analytic| <= n_sigma * error."""
        dev = np.abs(self.c_estimate - self.c_analytic)
        ok = dev <= n_sigma * self.c_error + 1e-15
        return float(np.mean(ok))


def run_oracle(spec: EnsembleSpec, max_lag, threshold=0.9) -> OracleReport:
    """Sample, estimate C(t) and the gap variance, fit tau_g, compare."""
    y = sample_gap_array(spec)
    n_lags = int(np.floor(max_lag / spec.dt + 1e-9))
    lags, c, err = ensemble_c(y, n_lags)
    times = lags * spec.dt
    d0 = y[:, 0] - spec.mean_gap
    sq = d0 * d0
    var_est = float(sq.mean())
    var_err = float(sq.std(ddof=1) / np.sqrt(sq.size)) if sq.size > 1 else float("nan")
    lam = spec.modes.lam.sum()
    try:
        tau_fit = fit_gaussian_timescale(times, c, threshold)
    except FitError:
        tau_fit = None
    return OracleReport(
        seed=int(spec.seed),
        n_samples=spec.n_samples,
        times=times,
        c_estimate=c,
        c_error=err,
        c_analytic=analytic_classical_c(spec.modes, times),
        variance_estimate=var_est,
        variance_error=var_err,
        variance_expected=2.0 * thermal_energy(spec.temperature) * lam,
        tau_fit=tau_fit,
        tau_expected=float(np.sqrt(lam / second_moment(spec.modes))),
    )
