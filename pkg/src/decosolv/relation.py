"""Decoherence time from solvation time.

    (tau_D / tau_g)^2 = alpha_C / alpha_D
                      = (2kT / <dU^2>) * sum 2 lambda w^2 / sum (2 lambda w / hbar W)

With the frequency-independent high-temperature width this collapses to
12 (kT)^2 / <dU^2> = 6 kT / lambda.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .bath import ModesLike, WidthModel, as_modes, width_factor
from .errors import DomainError
from .solvation import variance_from_stokes
from .units import HBAR, photon_energy, thermal_energy

GENERAL = "general"
HIGH_TEMPERATURE = "high-temperature"
ROOM_TEMPERATURE = 298.0


def ratio_squared_general(modes: ModesLike, gap_variance, T, model=WidthModel.TANH):
    """(tau_D / tau_g)^2 from mode-resolved data and a width prescription."""
    if not gap_variance > 0:
        raise DomainError("gap variance must be positive")
    m = as_modes(modes)
    kT = thermal_energy(T)
    W = width_factor(m.omega, T, model)
    num = np.sum(2.0 * m.lam * m.omega**2)
    den = np.sum(2.0 * m.lam * m.omega / (HBAR * W))
    if den == 0:
        raise DomainError("bath has no coupling (all lambda_n are zero)")
    return float(2.0 * kT / gap_variance * num / den)


def ratio_squared_highT(gap_variance, T):
    """12 (k_B T)^2 / <dU^2>."""
    if not gap_variance > 0:
        raise DomainError("gap variance must be positive")
    kT = thermal_energy(T)
    return 12.0 * kT * kT / gap_variance


@dataclass(frozen=True)
class RmsFluctuation:
    value: float  # eV

    def variance(self, T):
        return self.value**2


@dataclass(frozen=True)
class StokesShift:
    value: float  # eV

    @classmethod
    def from_wavelengths(cls, absorption_nm, emission_nm):
        """Energy difference between absorption and emission maxima."""
        if not 0 < absorption_nm < emission_nm:
            raise DomainError("need 0 < absorption wavelength < emission wavelength")
        return cls(photon_energy(absorption_nm) - photon_energy(emission_nm))

    def variance(self, T):
        return variance_from_stokes(self.value, T)


@dataclass(frozen=True)
class CaseStudyInput:
    label: str
    tau_g: float  # fs
    temperature: float  # K
    gap: RmsFluctuation | StokesShift
    reported_tau_D: float | None = None  # fs, for comparison only
    assumption: str = ""  # non-empty marks a non-normative input

    def __post_init__(self):
        if not self.tau_g > 0 or not self.temperature > 0:
            raise DomainError("tau_g and temperature must be positive")
        if not isinstance(self.gap, (RmsFluctuation, StokesShift)):
            raise DomainError("gap must be an RmsFluctuation or a StokesShift")
        if not self.gap.value > 0:
            raise DomainError("gap fluctuation / Stokes shift must be positive")


@dataclass(frozen=True)
class RelationResult:
    ratio_squared: float
    tau_D: float
    pathway: str
    gap_variance: float
    lambda_reorg: float

    @property
    def ratio(self):
        return math.sqrt(self.ratio_squared)


def evaluate_case_study(inp: CaseStudyInput) -> RelationResult:
    var = inp.gap.variance(inp.temperature)
    r2 = ratio_squared_highT(var, inp.temperature)
    lam = var / (2.0 * thermal_energy(inp.temperature))
    return RelationResult(r2, math.sqrt(r2) * inp.tau_g, HIGH_TEMPERATURE, var, lam)


# A 115 nm Stokes shift does not fix an energy without a band position.  The
# styryl row takes the two maxima symmetric about 525 nm and uses the
# resulting energy difference as the rms gap fluctuation.
STYRYL_CENTER_NM = 525.0
STYRYL_SHIFT_NM = 115.0
STYRYL_ASSUMPTION = (
    "ASSUMPTION (non-normative): 115 nm shift placed symmetrically about a "
    f"{STYRYL_CENTER_NM:g} nm band center; the resulting energy difference is used "
    "as the rms gap fluctuation, not as 2*lambda"
)


def _styryl_gap():
    s = StokesShift.from_wavelengths(
        STYRYL_CENTER_NM - STYRYL_SHIFT_NM / 2, STYRYL_CENTER_NM + STYRYL_SHIFT_NM / 2
    )
    return RmsFluctuation(s.value)


CASE_STUDIES = (
    CaseStudyInput(
        "hydrated electron", 10.6, ROOM_TEMPERATURE, RmsFluctuation(0.21), reported_tau_D=4.5
    ),
    CaseStudyInput(
        "styryl dye / methanol", 40.0, ROOM_TEMPERATURE, _styryl_gap(),
        reported_tau_D=6.8, assumption=STYRYL_ASSUMPTION,
    ),
    CaseStudyInput(
        "betaine-30 / acetonitrile", 91.0, ROOM_TEMPERATURE, RmsFluctuation(0.16),
        reported_tau_D=49.0,
    ),
)


def read_case_file(path):
    """Batch file of case studies.

    Comma-separated records ``label,tau_g_fs,temperature_K,kind,value`` where
    kind is ``rms_eV``, ``stokes_eV`` or ``stokes_nm_pair`` (value
    ``abs_nm:em_nm``).  Blank lines and lines starting with ``#`` are skipped,
    as is a header line whose second field is ``tau_g_fs``.
    """
    cases = []
    with open(path, newline="") as fh:
        rows = csv.reader(line for line in fh if line.strip() and not line.lstrip().startswith("#"))
        for lineno, row in enumerate(rows, 1):
            row = [f.strip() for f in row]
            if len(row) >= 2 and row[1] == "tau_g_fs":
                continue
            if len(row) != 5:
                raise ValueError(f"{path}: record {lineno}: expected 5 fields, got {len(row)}")
            label, tau_g, temp, kind, value = row
            if kind == "rms_eV":
                gap = RmsFluctuation(float(value))
            elif kind == "stokes_eV":
                gap = StokesShift(float(value))
            elif kind == "stokes_nm_pair":
                a, e = value.split(":")
                gap = StokesShift.from_wavelengths(float(a), float(e))
            else:
                raise ValueError(f"{path}: record {lineno}: unknown gap kind {kind!r}")
            cases.append(CaseStudyInput(label, float(tau_g), float(temp), gap))
    return cases


def write_case_file(path, cases):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["label", "tau_g_fs", "temperature_K", "kind", "value"])
        for c in cases:
            kind = "rms_eV" if isinstance(c.gap, RmsFluctuation) else "stokes_eV"
            w.writerow([c.label, repr(c.tau_g), repr(c.temperature), kind, repr(c.gap.value)])
