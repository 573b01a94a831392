"""Short-time solvent response.

The normalised gap autocorrelation C(t) = <dU(t) dU(0)> / <dU^2> behaves at
short times as exp(-alpha_C t^2) with

    alpha_C = k_B T * sum_n lambda_n omega_n^2 / <dU^2>

(mass-weighted gap derivative squared is 2 lambda_n omega_n^2).  In linear
response <dU^2> = 2 lambda k_B T, lambda being half the Stokes shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import kernels
from .bath import ModesLike, SpectralDensityModel, as_modes
from .errors import DegenerateInputError, DomainError, FitError
from .units import thermal_energy

DEFAULT_FIT_THRESHOLD = 0.6
MIN_FIT_POINTS = 4
UNIFORM_DT_RTOL = 1e-9


def second_moment(bath, omega_max=None):
    """sum_n lambda_n omega_n^2, or (1/pi) int J_eff(w) w dw for a density."""
    if isinstance(bath, SpectralDensityModel):
        if omega_max is None:
            omega_max = bath.default_cutoff()
        val, _ = quad(lambda w: float(bath(w)) * w, 0.0, omega_max, epsrel=1e-10, limit=200)
        return val / np.pi
    m = as_modes(bath)
    return float(np.sum(m.lam * m.omega**2))


def solvation_exponent(bath: ModesLike | SpectralDensityModel, gap_variance, T, omega_max=None):
    """alpha_C in fs^-2 such that C(t) = exp(-alpha_C t^2) at short times."""
    if not gap_variance > 0:
        raise DomainError(f"gap variance must be positive, got {gap_variance}")
    kT = thermal_energy(T)
    return kT * second_moment(bath, omega_max) / gap_variance


def variance_from_stokes(stokes_shift, T):
    """<dU^2> = 2 lambda k_B T with lambda = stokes_shift / 2."""
    if stokes_shift < 0:
        raise DomainError("Stokes shift must be non-negative")
    return stokes_shift * thermal_energy(T)


def stokes_from_variance(gap_variance, T):
    if gap_variance < 0:
        raise DomainError("gap variance must be non-negative")
    return gap_variance / thermal_energy(T)


@dataclass(frozen=True)
class GapStatistics:
    mean_gap: float  # eV
    variance: float  # eV^2
    lambda_reorg: float  # eV
    temperature: float  # K

    def __post_init__(self):
        if self.variance < 0 or self.lambda_reorg < 0:
            raise DomainError("variance and reorganization energy must be non-negative")
        if not self.temperature > 0:
            raise DomainError("temperature must be positive")

    @classmethod
    def linear_response(cls, mean_gap, lambda_reorg, temperature):
        """Variance fixed by the fluctuation-dissipation relation."""
        var = 2.0 * lambda_reorg * thermal_energy(temperature)
        return cls(mean_gap, var, lambda_reorg, temperature)

    @classmethod
    def from_variance(cls, mean_gap, variance, temperature):
        lam = variance / (2.0 * thermal_energy(temperature))
        return cls(mean_gap, variance, lam, temperature)

    @classmethod
    def from_trajectory(cls, traj: "GapTrajectory", temperature):
        s = traj.samples
        return cls.from_variance(float(s.mean()), float(s.var()), temperature)

    @property
    def rms(self):
        return float(np.sqrt(self.variance))

    @property
    def stokes_shift(self):
        return 2.0 * self.lambda_reorg


@dataclass(frozen=True)
class GapTrajectory:
    """Energy gap U(t_i) in eV sampled every ``dt`` fs."""

    dt: float
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim != 1 or s.size < 2:
            raise DomainError("a gap trajectory needs at least two samples")
        if not self.dt > 0:
            raise DomainError("dt must be positive")
        object.__setattr__(self, "samples", s)

    def __len__(self):
        return self.samples.size

    @property
    def times(self):
        return np.arange(self.samples.size) * self.dt

    def reversed(self):
        return GapTrajectory(self.dt, self.samples[::-1].copy())


def read_gap_trajectory(path) -> GapTrajectory:
    """Two columns, t in fs and U in eV, uniformly spaced."""
    data = np.loadtxt(path, comments="#", delimiter=None, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns (t_fs, U_eV), found {data.shape[1]}")
    t = data[:, 0]
    if t.size < 2:
        raise DomainError(f"{path}: need at least two samples")
    steps = np.diff(t)
    dt = (t[-1] - t[0]) / (t.size - 1)
    if not dt > 0 or np.max(np.abs(steps - dt)) > UNIFORM_DT_RTOL * dt:
        raise ValueError(f"{path}: time column is not uniformly spaced")
    return GapTrajectory(float(dt), data[:, 1])


def write_gap_trajectory(path, traj: GapTrajectory, header=""):
    np.savetxt(
        path,
        np.column_stack([traj.times, traj.samples]),
        header=header or "t_fs U_eV",
        fmt="%.17g",
    )


def estimate_c(traj: GapTrajectory, max_lag):
    """Normalised autocorrelation of the gap fluctuation.

    Mean-subtracted, divisor N - k at lag k, normalised by lag 0.
    Returns ``(times, C)`` on the lag grid 0, dt, ..., up to ``max_lag`` fs.
    """
    n = len(traj)
    if max_lag < 0 or max_lag > (n - 1) * traj.dt / 2 * (1 + 1e-12):
        raise DomainError(
            f"max_lag must lie in [0, {(n - 1) * traj.dt / 2:g}] fs for this trajectory"
        )
    n_lags = int(np.floor(max_lag / traj.dt + 1e-9))
    d = traj.samples - traj.samples.mean()
    scale = np.max(np.abs(traj.samples))
    if np.max(np.abs(d)) <= 8 * np.finfo(float).eps * scale:
        raise DegenerateInputError("constant trajectory has no fluctuations")
    cov = kernels.autocovariance(np.ascontiguousarray(d), n_lags)
    if cov[0] <= 0:
        raise DegenerateInputError("trajectory variance is zero")
    return np.arange(n_lags + 1) * traj.dt, cov / cov[0]


def fit_gaussian_timescale(times, values, threshold=DEFAULT_FIT_THRESHOLD):
    """Gaussian timescale tau from ln C(t) = -t^2 / (2 tau^2).

    Least squares through the origin over the leading run of points with
    C >= ``threshold``.
    """
    t = np.asarray(times, dtype=float)
    c = np.asarray(values, dtype=float)
    if t.shape != c.shape or t.ndim != 1:
        raise FitError("times and values must be 1-d arrays of equal length")
    if not 0 < threshold < 1:
        raise FitError("threshold must lie in (0, 1)")
    below = np.nonzero(c < threshold)[0]
    end = below[0] if below.size else c.size
    t, c = t[:end], c[:end]
    if t.size < MIN_FIT_POINTS:
        raise FitError(
            f"only {t.size} points with C >= {threshold}; need {MIN_FIT_POINTS}"
        )
    if np.any(c <= 0):
        raise FitError("non-positive C in fit window")
    t2 = t * t
    denom = np.dot(t2, t2)
    if denom == 0:
        raise FitError("fit window has no nonzero times")
    slope = np.dot(t2, np.log(c)) / denom
    if not slope < 0:
        raise FitError("C(t) does not decay in the fit window")
    return float(1.0 / np.sqrt(-2.0 * slope))
