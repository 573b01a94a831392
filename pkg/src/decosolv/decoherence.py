"""Decoherence curves and timescales.

Two routes to the decay of the bath overlap for a two-level solute:

* Gaussian wavepacket bath: D(t) = exp(-alpha_D t^2) with
  alpha_D = sum_n lambda_n omega_n / (2 hbar W_n), W_n the thermal width
  factor of mode n.
* Spin-boson golden rule: D_SB(t) = exp(-E(t)) with
  E(t) = sum_n lambda_n (1 - cos omega_n t) coth(hbar omega_n / 2kT) / (hbar omega_n),
  or its continuum form over a spectral density.

At short times E(t) / t^2 tends to alpha_D with the tanh width.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from . import kernels
from .bath import (
    SERIES_SWITCH,
    BathModes,
    ModesLike,
    SpectralDensityModel,
    WidthModel,
    as_modes,
    coth_minus_inv,
    thermal_ratio,
    width_factor,
)
from .errors import DomainError, NumericalError
from .units import HBAR, KB

BathLike = Union[ModesLike, SpectralDensityModel]

QUAD_EPSREL = 1e-8
QUAD_LIMIT = 200


@dataclass(frozen=True)
class GaussianCurve:
    """exp(-alpha t^2), timescale tau = 1 / sqrt(2 alpha)."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"Gaussian exponent must be positive, got {self.alpha}")

    @classmethod
    def from_tau(cls, tau):
        if not tau > 0:
            raise DomainError("timescale must be positive")
        return cls(1.0 / (2.0 * tau * tau))

    @property
    def tau(self):
        return 1.0 / math.sqrt(2.0 * self.alpha)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return np.exp(-self.alpha * t * t)


@dataclass(frozen=True)
class DecoherenceCurve:
    times: np.ndarray
    values: np.ndarray
    kind: str  # "gaussian" or "golden-rule"
    exponent: np.ndarray | None = None


def x_coth_x(x):
    """x coth(x), equal to 1 at x = 0."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < SERIES_SWITCH
    x2 = x[small] ** 2
    out[small] = 1.0 + x2 * (1.0 / 3.0 - x2 / 45.0)
    xl = x[~small]
    out[~small] = xl / np.tanh(xl)
    return out


def _omega_over_width(omega, T, model):
    """omega / W(omega, T), finite as omega -> 0."""
    x = np.atleast_1d(thermal_ratio(omega, T))
    scale = 2.0 * KB * T / HBAR
    if model is WidthModel.TANH:
        return scale * x_coth_x(x)
    if model is WidthModel.NITZAN:
        return scale * x * coth_minus_inv(x)
    return scale * x * x / 3.0


def _scalar_j_over_omega(sd, w):
    return float(np.asarray(sd.j_over_omega(w)).reshape(-1)[0])


def _check_temperature(T):
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")


def _run_quad(func, a, b, what, epsabs=0.0, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, err = quad(func, a, b, epsrel=QUAD_EPSREL, epsabs=epsabs, limit=QUAD_LIMIT, **kw)
        except IntegrationWarning as exc:
            # rerun quietly to report what was reached
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", IntegrationWarning)
                val, err = quad(func, a, b, epsrel=QUAD_EPSREL, epsabs=epsabs, limit=QUAD_LIMIT, **kw)
            rel = err / abs(val) if val else err
            raise NumericalError(
                f"{what}: quadrature did not converge on [{a:.4g}, {b:.4g}] "
                f"(achieved relative error {rel:.2e}): {exc}",
                achieved=rel,
            ) from None
    return val, err


def gaussian_decoherence_exponent(bath: BathLike, T, model=WidthModel.TANH, omega_max=None):
    """alpha_D in fs^-2 such that D(t) = exp(-alpha_D t^2).

    For a spectral density the mode sum becomes
    (1 / 2 pi hbar) * int_0^omega_max J_eff(w) / W(w) dw.
    """
    model = WidthModel.parse(model)
    if isinstance(bath, SpectralDensityModel):
        _check_temperature(T)
        if omega_max is None:
            omega_max = bath.default_cutoff()

        def f(w):
            return _scalar_j_over_omega(bath, w) * float(_omega_over_width(w, T, model)[0])

        val, _ = _run_quad(f, 0.0, omega_max, "Gaussian decoherence exponent")
        return val / (2.0 * np.pi * HBAR)
    modes = as_modes(bath)
    W = width_factor(modes.omega, T, model)
    return float(np.sum(modes.lam * modes.omega / W) / (2.0 * HBAR))


def decoherence_time(alpha_D):
    """Gaussian timescale 1 / sqrt(2 alpha_D) in fs."""
    if not alpha_D > 0:
        raise DomainError(f"decoherence exponent must be positive, got {alpha_D}")
    return 1.0 / math.sqrt(2.0 * alpha_D)


def golden_rule_weights(modes: BathModes, T):
    """Per-mode prefactor lambda coth(x) / (hbar omega) of (1 - cos omega t)."""
    x = thermal_ratio(modes.omega, T)
    return modes.lam / (HBAR * modes.omega * np.tanh(x))


def _q2_continuous(sd, T, t, omega_max):
    if t == 0:
        return 0.0
    pref = 2.0 * KB * T / HBAR / (np.pi * HBAR)

    def f(w):
        y = 0.5 * w * t
        sinc = np.sinc(y / np.pi)
        x = HBAR * w / (2.0 * KB * T)
        return float(
            _scalar_j_over_omega(sd, w) * x_coth_x(np.atleast_1d(x))[0] * 0.5 * t * t * sinc * sinc
        )

    # split into pieces a few oscillation periods long
    period = 2.0 * np.pi / t
    n_pieces = int(min(2000, max(1, np.ceil(omega_max / (4.0 * period)))))
    edges = np.linspace(0.0, omega_max, n_pieces + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        # pieces after the first only need to be accurate relative to the sum
        epsabs = QUAD_EPSREL * abs(total) / n_pieces
        val, _ = _run_quad(f, a, b, f"golden-rule exponent at t={t:g} fs", epsabs=epsabs)
        total += val
    return pref * total


def q2(bath: BathLike, T, t, omega_max=None):
    """Golden-rule exponent E(t) with D_SB(t) = exp(-E(t)).

    ``bath`` is a mode list (discrete sum) or a spectral density (adaptive
    quadrature over [0, omega_max], default 50 x characteristic frequency).
    ``t`` may be a scalar or an array of non-negative times in fs.
    """
    _check_temperature(T)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr < 0):
        raise DomainError("times must be non-negative")
    if isinstance(bath, SpectralDensityModel):
        if omega_max is None:
            omega_max = bath.default_cutoff()
        out = np.array([_q2_continuous(bath, T, float(tt), omega_max) for tt in t_arr])
    else:
        modes = as_modes(bath)
        out = kernels.golden_rule_sum(
            np.ascontiguousarray(modes.omega), golden_rule_weights(modes, T), t_arr
        )
    return float(out[0]) if np.ndim(t) == 0 else out


def golden_rule_curve(bath: BathLike, T, times, omega_max=None) -> DecoherenceCurve:
    times = np.asarray(times, dtype=float)
    E = np.atleast_1d(q2(bath, T, times, omega_max=omega_max))
    return DecoherenceCurve(times, np.exp(-E), "golden-rule", E)


def gaussian_curve(bath: BathLike, T, times, model=WidthModel.TANH, omega_max=None) -> DecoherenceCurve:
    times = np.asarray(times, dtype=float)
    alpha = gaussian_decoherence_exponent(bath, T, model, omega_max=omega_max)
    E = alpha * times * times
    return DecoherenceCurve(times, np.exp(-E), "gaussian", E)
