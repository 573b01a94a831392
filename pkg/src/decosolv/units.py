"""Physical constants and unit handling.

Internal unit system: energy in eV, time in fs, angular frequency in rad/fs,
temperature in K.  Masses and lengths never appear; bath modes are described
by frequency and reorganization energy only.

Constants are CODATA 2018 exact/recommended values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ConversionError, DomainError

# CODATA 2018
HBAR = 0.6582119569  # eV fs
KB = 8.617333262e-5  # eV / K
PLANCK = 4.135667696  # eV fs
SPEED_OF_LIGHT = 299792458.0  # m / s
HC_EV_NM = PLANCK * 1e-15 * SPEED_OF_LIGHT * 1e9  # eV nm, ~1239.84198
HC_EV_CM = HC_EV_NM * 1e-7  # eV cm, converts cm^-1 to eV

ENERGY = "energy"
TIME = "time"
ANGULAR_FREQUENCY = "angular-frequency"
TEMPERATURE = "temperature"
DIMENSIONLESS = "dimensionless"

# unit -> (dimension, family).  Units in the same family interconvert.
_UNITS = {
    "eV": (ENERGY, "spectral"),
    "meV": (ENERGY, "spectral"),
    "cm-1": (ENERGY, "spectral"),
    "nm": (ENERGY, "spectral"),
    "rad/fs": (ANGULAR_FREQUENCY, "spectral"),
    "fs": (TIME, "time"),
    "ps": (TIME, "time"),
    "K": (TEMPERATURE, "temperature"),
    "": (DIMENSIONLESS, "dimensionless"),
}

def _to_base(value, unit):
    if unit == "cm-1":
        return value * HC_EV_CM
    if unit == "meV":
        return value * 1e-3
    if unit == "nm":
        if np.any(np.asarray(value) <= 0):
            raise ConversionError("photon wavelength must be positive")
        return HC_EV_NM / value
    if unit == "rad/fs":
        return value * HBAR
    if unit == "ps":
        return value * 1e3
    return value


def _from_base(value, unit):
    if unit == "cm-1":
        return value / HC_EV_CM
    if unit == "meV":
        return value * 1e3
    if unit == "nm":
        if np.any(np.asarray(value) <= 0):
            raise ConversionError("only positive photon energies have a wavelength")
        return HC_EV_NM / value
    if unit == "rad/fs":
        return value / HBAR
    if unit == "ps":
        return value * 1e-3
    return value


@dataclass(frozen=True)
class Quantity:
    """A number together with the unit it is expressed in."""

    value: float
    unit: str

    def __post_init__(self):
        if self.unit not in _UNITS:
            raise ConversionError(f"unknown unit {self.unit!r}")

    @property
    def dimension(self) -> str:
        return _UNITS[self.unit][0]

    def to(self, unit: str) -> "Quantity":
        return convert(self, unit)


def convert(q: Quantity, unit: str) -> Quantity:
    """Re-express ``q`` in ``unit``.

    Energy, wavenumber, angular frequency and photon wavelength all convert
    into each other through hbar and hc.
    """
    if unit not in _UNITS:
        raise ConversionError(f"unknown unit {unit!r}")
    src_family = _UNITS[q.unit][1]
    dst_family = _UNITS[unit][1]
    if src_family != dst_family:
        raise ConversionError(
            f"cannot convert {q.dimension} ({q.unit}) to {_UNITS[unit][0]} ({unit})"
        )
    if q.unit == unit:
        return q
    return Quantity(_from_base(_to_base(q.value, q.unit), unit), unit)


def thermal_energy(T):
    """k_B T in eV."""
    T = np.asarray(T, dtype=float)
    if np.any(T <= 0):
        raise DomainError(f"temperature must be positive, got {T}")
    out = KB * T
    return float(out) if out.ndim == 0 else out


def energy_to_angular(E):
    return E / HBAR


def angular_to_energy(w):
    return w * HBAR


def wavenumber_to_angular(nu):
    """cm^-1 to rad/fs."""
    return np.asarray(nu) * HC_EV_CM / HBAR


def angular_to_wavenumber(w):
    return np.asarray(w) * HBAR / HC_EV_CM


def photon_energy(wavelength_nm):
    """E = hc / lambda in eV."""
    return convert(Quantity(wavelength_nm, "nm"), "eV").value


_QTY_RE = re.compile(
    r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(eV|meV|cm-1|cm\^-1|rad/fs|fs|ps|K|nm)\s*$"
)


def parse_quantity(text: str, dimension: str | None = None) -> Quantity:
    """Parse ``"10.6fs"``, ``"0.21eV"``, ``"1500cm-1"`` and friends.

    A bare number is rejected.  If ``dimension`` is given the parsed unit must
    be convertible to it (e.g. ``cm-1`` is accepted for angular frequency).
    """
    m = _QTY_RE.match(text)
    if m is None:
        raise ConversionError(
            f"{text!r} is not a number with a unit suffix (e.g. 10.6fs, 0.21eV, 298K)"
        )
    unit = m.group(2).replace("^", "")
    q = Quantity(float(m.group(1)), unit)
    if dimension is not None:
        target = internal_unit(dimension)
        convert(q, target)  # raises on mismatch
    return q


def internal_unit(dimension: str) -> str:
    return {
        ENERGY: "eV",
        TIME: "fs",
        ANGULAR_FREQUENCY: "rad/fs",
        TEMPERATURE: "K",
        DIMENSIONLESS: "",
    }[dimension]


def parse_internal(text: str, dimension: str) -> float:
    """Parse a unit-suffixed string and return its value in internal units."""
    q = parse_quantity(text, dimension)
    return convert(q, internal_unit(dimension)).value
