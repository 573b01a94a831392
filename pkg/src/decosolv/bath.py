"""Harmonic bath: discrete modes, spectral densities, thermal wavepacket widths.

A mode is described by its angular frequency ``omega`` (rad/fs) and its
reorganization energy ``lambda_mode`` (eV).  Mass, coupling constant and
coordinate displacement only ever enter through that combination:

    lambda_n = q0^2 c_n^2 / (2 m_n omega_n^2)

so the force difference seen by mode n obeys dF_n^2 / m_n = 2 lambda_n omega_n^2.

Spectral densities are coupling-weighted, ``J_eff = q0^2 J``, normalised such
that ``lambda = (1/pi) * int J_eff(w) / w dw``.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError
from .units import HBAR, KB, wavenumber_to_angular

# below this x = hbar w / 2kT the direct coth(x) - 1/x loses digits
SERIES_SWITCH = 1e-2
TAIL_WARN_FRACTION = 0.01


class WidthModel(enum.Enum):
    """Thermal wavepacket width prescription.

    The width parameter is ``a_n = (m_n omega_n / hbar) * W`` with W from
    :func:`width_factor`.
    """

    TANH = "tanh"  # exact for a harmonic bath
    NITZAN = "nitzan"  # [coth x - 1/x]^-1
    HIGH_T = "highT"  # 3/x, frequency independent a_n = 6 m k_B T / hbar^2

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "tanh": cls.TANH, "harmonic": cls.TANH, "tanhharmonic": cls.TANH,
            "nitzan": cls.NITZAN, "nitzana": cls.NITZAN, "a": cls.NITZAN,
            "hight": cls.HIGH_T, "high-t": cls.HIGH_T, "high_t": cls.HIGH_T,
            "hightemperature": cls.HIGH_T, "classical": cls.HIGH_T,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown width model {value!r}") from None


@dataclass(frozen=True)
class BathMode:
    omega: float
    lambda_mode: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"mode frequency must be positive, got {self.omega}")
        if not self.lambda_mode >= 0:
            raise DomainError(
                f"reorganization energy must be non-negative, got {self.lambda_mode}"
            )


@dataclass(frozen=True)
class BathModes:
    """Array form of a list of :class:`BathMode`.

    Every function taking ``modes`` accepts either this or a plain sequence of
    BathMode.  ``tail_fraction`` is set by :func:`discretize` and records the
    share of the analytic reorganization energy lying above the grid.
    """

    omega: np.ndarray
    lam: np.ndarray
    tail_fraction: float = 0.0
    truncated: bool = field(default=False)

    def __post_init__(self):
        omega = np.atleast_1d(np.asarray(self.omega, dtype=float))
        lam = np.atleast_1d(np.asarray(self.lam, dtype=float))
        if omega.shape != lam.shape or omega.ndim != 1:
            raise DomainError("omega and lambda arrays must be 1-d with equal length")
        if omega.size and not np.all(omega > 0):
            raise DomainError("mode frequencies must be positive")
        if lam.size and not np.all(lam >= 0):
            raise DomainError("reorganization energies must be non-negative")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "lam", lam)

    @classmethod
    def from_modes(cls, modes: Iterable[BathMode]) -> "BathModes":
        modes = list(modes)
        return cls(
            np.array([m.omega for m in modes], dtype=float),
            np.array([m.lambda_mode for m in modes], dtype=float),
        )

    def __len__(self):
        return self.omega.size

    def __iter__(self):
        for w, l in zip(self.omega, self.lam):
            yield BathMode(float(w), float(l))

    def __getitem__(self, i):
        return BathMode(float(self.omega[i]), float(self.lam[i]))

    def __add__(self, other):
        other = as_modes(other)
        return BathModes(
            np.concatenate([self.omega, other.omega]),
            np.concatenate([self.lam, other.lam]),
        )


ModesLike = Union[BathModes, Sequence[BathMode]]


def as_modes(modes: ModesLike, allow_empty=False) -> BathModes:
    if isinstance(modes, BathModes):
        out = modes
    elif isinstance(modes, BathMode):
        out = BathModes.from_modes([modes])
    else:
        out = BathModes.from_modes(modes)
    if not allow_empty and len(out) == 0:
        raise DomainError("mode list is empty")
    return out


def thermal_ratio(omega, T):
    """x = hbar omega / (2 k_B T); +inf at T = 0."""
    omega = np.asarray(omega, dtype=float)
    T = np.asarray(T, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(T > 0, HBAR * omega / (2.0 * KB * np.where(T > 0, T, 1.0)), np.inf)


def coth_minus_inv(x):
    """coth(x) - 1/x, accurate for all x > 0 (and 0 at x = 0)."""
    x = np.asarray(x, dtype=float)
    small = x < SERIES_SWITCH
    out = np.empty_like(x)
    xs = x[small]
    x2 = xs * xs
    out[small] = xs * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0)))
    xl = x[~small]
    with np.errstate(divide="ignore"):
        out[~small] = 1.0 / np.tanh(xl) - 1.0 / xl
    return out


def _coth_minus_inv_direct(x):
    x = np.asarray(x, dtype=float)
    return 1.0 / np.tanh(x) - 1.0 / x


def width_factor(omega, T, model):
    """Dimensionless width factor W with a_n = (m_n omega_n / hbar) W.

    TANH:   W = tanh(x)
    NITZAN: W = [coth(x) - 1/x]^-1
    HIGH_T: W = 3 / x

    with x = hbar omega / 2 k_B T.  ``omega`` may be an array.
    NITZAN accepts T = 0 (W = 1); the others need T > 0.
    """
    model = WidthModel.parse(model)
    omega_arr = np.asarray(omega, dtype=float)
    T_arr = np.asarray(T, dtype=float)
    if np.any(omega_arr <= 0):
        raise DomainError("width factor needs omega > 0")
    if model is WidthModel.NITZAN:
        if np.any(T_arr < 0):
            raise DomainError("temperature must be non-negative")
    elif np.any(T_arr <= 0):
        raise DomainError(f"{model.value} width needs T > 0")
    x = thermal_ratio(omega_arr, T_arr)
    if model is WidthModel.TANH:
        W = np.tanh(x)
    elif model is WidthModel.NITZAN:
        W = 1.0 / coth_minus_inv(np.atleast_1d(x)).reshape(np.shape(x))
    else:
        W = 3.0 / x
    return float(W) if np.ndim(W) == 0 else W


# --- spectral densities ----------------------------------------------------


class SpectralDensityModel:
    """Coupling-weighted spectral density J_eff(omega) in eV.

    Subclasses supply ``__call__``, ``j_over_omega`` (finite at omega = 0),
    ``reorganization_energy(upper)`` and ``characteristic_frequency``.
    """

    kind = "abstract"

    def __call__(self, omega):
        raise NotImplementedError

    def j_over_omega(self, omega):
        raise NotImplementedError

    def reorganization_energy(self, upper=np.inf):
        """(1/pi) * int_0^upper J_eff(w)/w dw."""
        raise NotImplementedError

    @property
    def characteristic_frequency(self):
        raise NotImplementedError

    def default_cutoff(self):
        return 50.0 * self.characteristic_frequency


@dataclass(frozen=True)
class OhmicDensity(SpectralDensityModel):
    """J_eff = eta * omega * exp(-omega / omega_c); lambda = eta omega_c / pi."""

    eta: float  # eV fs
    omega_c: float  # rad/fs
    kind = "ohmic-exponential"

    def __post_init__(self):
        if not self.eta >= 0 or not self.omega_c > 0:
            raise DomainError("Ohmic density needs eta >= 0 and omega_c > 0")

    @classmethod
    def from_reorganization(cls, lambda_total, omega_c):
        return cls(np.pi * lambda_total / omega_c, omega_c)

    @classmethod
    def from_kondo(cls, alpha, omega_c):
        """Dimensionless spin-boson coupling: eta = 2 pi hbar alpha."""
        return cls(2.0 * np.pi * HBAR * alpha, omega_c)

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        return self.eta * omega * np.exp(-omega / self.omega_c)

    def j_over_omega(self, omega):
        return self.eta * np.exp(-np.asarray(omega, dtype=float) / self.omega_c)

    def reorganization_energy(self, upper=np.inf):
        total = self.eta * self.omega_c / np.pi
        if np.isinf(upper):
            return total
        return total * -np.expm1(-upper / self.omega_c)

    @property
    def characteristic_frequency(self):
        return self.omega_c


@dataclass(frozen=True)
class DebyeDensity(SpectralDensityModel):
    """J_eff = 2 lambda_total omega omega_D / (omega^2 + omega_D^2)."""

    lambda_total: float  # eV
    omega_D: float  # rad/fs
    kind = "debye"

    def __post_init__(self):
        if not self.lambda_total >= 0 or not self.omega_D > 0:
            raise DomainError("Debye density needs lambda_total >= 0 and omega_D > 0")

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        return 2.0 * self.lambda_total * omega * self.omega_D / (omega**2 + self.omega_D**2)

    def j_over_omega(self, omega):
        omega = np.asarray(omega, dtype=float)
        return 2.0 * self.lambda_total * self.omega_D / (omega**2 + self.omega_D**2)

    def reorganization_energy(self, upper=np.inf):
        if np.isinf(upper):
            return self.lambda_total
        return self.lambda_total * (2.0 / np.pi) * np.arctan(upper / self.omega_D)

    @property
    def characteristic_frequency(self):
        return self.omega_D


class TabulatedDensity(SpectralDensityModel):
    """Piecewise-linear J_eff through (omega, J) points, zero outside the table.

    A point at omega = 0 with J = 0 is prepended when the table does not start
    there, so J_eff(0) = 0 holds.
    """

    kind = "tabulated"

    def __init__(self, omega, j):
        omega = np.asarray(omega, dtype=float)
        j = np.asarray(j, dtype=float)
        if omega.ndim != 1 or omega.shape != j.shape or omega.size < 2:
            raise DomainError("tabulated density needs at least two (omega, J) points")
        if np.any(np.diff(omega) <= 0):
            raise DomainError("tabulated frequencies must be strictly increasing")
        if omega[0] < 0 or np.any(j < 0):
            raise DomainError("tabulated density needs omega >= 0 and J >= 0")
        if omega[0] > 0:
            omega = np.concatenate([[0.0], omega])
            j = np.concatenate([[0.0], j])
        elif j[0] != 0:
            raise DomainError("J_eff(0) must vanish")
        self.omega = omega
        self.j = j

    def __call__(self, omega):
        return np.interp(omega, self.omega, self.j, left=0.0, right=0.0)

    def j_over_omega(self, omega):
        omega = np.atleast_1d(np.asarray(omega, dtype=float))
        out = np.empty_like(omega)
        zero = omega == 0
        slope0 = self.j[1] / self.omega[1]
        out[zero] = slope0
        out[~zero] = self(omega[~zero]) / omega[~zero]
        return out

    def reorganization_energy(self, upper=np.inf):
        # J/w on a linear segment J = p + s w integrates to p ln(b/a) + s (b - a)
        w, j = self.omega, self.j
        hi = min(upper, w[-1])
        total = 0.0
        for i in range(w.size - 1):
            a, b = w[i], w[i + 1]
            if a >= hi:
                break
            s = (j[i + 1] - j[i]) / (b - a)
            p = j[i] - s * a
            b = min(b, hi)
            total += s * (b - a)
            if a > 0:
                total += p * np.log(b / a)
        return total / np.pi

    @property
    def characteristic_frequency(self):
        return self.omega[-1]

    def default_cutoff(self):
        return self.omega[-1]

    def __repr__(self):
        return f"TabulatedDensity({self.omega.size} points, omega_max={self.omega[-1]:.4g})"


def read_spectral_table(path) -> TabulatedDensity:
    """Two-column text: omega in cm^-1, J_eff in eV.  ``#`` starts a comment."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns, found {data.shape[1]}")
    return TabulatedDensity(wavenumber_to_angular(data[:, 0]), data[:, 1])


def write_spectral_table(path, sd: TabulatedDensity, header=""):
    from .units import angular_to_wavenumber

    np.savetxt(
        path,
        np.column_stack([angular_to_wavenumber(sd.omega), sd.j]),
        header=header or "omega_cm-1 J_eff_eV",
        fmt="%.17g",
    )


def discretize(sd: SpectralDensityModel, n_modes: int, omega_max: float | None = None) -> BathModes:
    """Midpoint discretization on a uniform grid.

    omega_k = (k - 1/2) dw, dw = omega_max / n_modes, and
    lambda_k = J_eff(omega_k) / omega_k * dw / pi.

    If more than 1% of the analytic reorganization energy lies above
    ``omega_max`` a :class:`UserWarning` is emitted and the returned object has
    ``truncated=True``.
    """
    if n_modes < 1:
        raise DomainError("n_modes must be >= 1")
    if omega_max is None:
        omega_max = sd.default_cutoff()
    if not omega_max > 0:
        raise DomainError("omega_max must be positive")
    dw = omega_max / n_modes
    omega = (np.arange(1, n_modes + 1) - 0.5) * dw
    lam = np.asarray(sd.j_over_omega(omega), dtype=float) * dw / np.pi
    total = sd.reorganization_energy()
    tail = 0.0
    if total > 0:
        tail = 1.0 - sd.reorganization_energy(omega_max) / total
    truncated = tail > TAIL_WARN_FRACTION
    if truncated:
        warnings.warn(
            f"omega_max={omega_max:.4g} rad/fs leaves {100 * tail:.2f}% of the "
            "reorganization energy in the tail",
            stacklevel=2,
        )
    return BathModes(omega, lam, tail_fraction=tail, truncated=truncated)


def total_reorganization(modes: ModesLike) -> float:
    """Sum of per-mode reorganization energies; half the Stokes shift."""
    m = as_modes(modes)
    return float(np.sum(m.lam))
