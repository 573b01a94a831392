"""Decoherence times from short-time solvation dynamics.

Units throughout: eV, fs, rad/fs, K.
"""

__version__ = "0.1.0"

from .bath import (
    BathMode,
    BathModes,
    DebyeDensity,
    OhmicDensity,
    SpectralDensityModel,
    TabulatedDensity,
    WidthModel,
    discretize,
    read_spectral_table,
    total_reorganization,
    width_factor,
)
from .decoherence import (
    DecoherenceCurve,
    GaussianCurve,
    decoherence_time,
    gaussian_curve,
    gaussian_decoherence_exponent,
    golden_rule_curve,
    q2,
)
from .errors import ConversionError, DegenerateInputError, DomainError, FitError, NumericalError
from .oracle import EnsembleSpec, analytic_classical_c, ensemble_c, run_oracle, sample_gap_trajectory
from .relation import (
    CASE_STUDIES,
    CaseStudyInput,
    RelationResult,
    RmsFluctuation,
    StokesShift,
    evaluate_case_study,
    ratio_squared_general,
    ratio_squared_highT,
)
from .solvation import (
    GapStatistics,
    GapTrajectory,
    estimate_c,
    fit_gaussian_timescale,
    read_gap_trajectory,
    solvation_exponent,
    stokes_from_variance,
    variance_from_stokes,
    write_gap_trajectory,
)
from .units import Quantity, convert, parse_quantity, thermal_energy
