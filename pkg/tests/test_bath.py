import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from decosolv.bath import (
    SERIES_SWITCH,
    BathMode,
    BathModes,
    DebyeDensity,
    OhmicDensity,
    TabulatedDensity,
    WidthModel,
    _coth_minus_inv_direct,
    coth_minus_inv,
    discretize,
    read_spectral_table,
    total_reorganization,
    width_factor,
    write_spectral_table,
)
from decosolv.errors import DomainError
from decosolv.units import HBAR, KB


def omega_for_x(x, T=300.0):
    """Frequency giving hbar w / 2kT = x."""
    return 2.0 * KB * T * x / HBAR


class TestWidthFactor:
    def test_tanh_low_temperature_limit(self):
        assert width_factor(omega_for_x(40.0), 300.0, "tanh") == pytest.approx(1.0, abs=1e-15)

    def test_nitzan_at_x_one(self):
        # 1 / (coth(1) - 1) at 30 digits
        expected = float(1 / (mp.coth(1) - 1))
        assert expected == pytest.approx(3.1945, abs=5e-5)
        assert width_factor(omega_for_x(1.0), 300.0, "nitzan") == pytest.approx(expected, rel=1e-13)

    def test_nitzan_matches_high_t_at_small_x(self):
        w = omega_for_x(0.01)
        a = width_factor(w, 300.0, WidthModel.NITZAN)
        b = width_factor(w, 300.0, WidthModel.HIGH_T)
        assert abs(a / b - 1) < 1e-4

    def test_nitzan_zero_temperature(self):
        assert width_factor(1.0, 0.0, "nitzan") == 1.0

    def test_nitzan_approaches_one_slowly(self):
        # A = 1/(1 - 1/x) up to exponentially small terms: the approach is 1/x, not exponential
        for x in (20.0, 100.0, 1000.0):
            w = width_factor(omega_for_x(x), 300.0, "nitzan")
            assert w == pytest.approx(1.0 / (1.0 - 1.0 / x), rel=1e-12)

    @pytest.mark.parametrize("model", list(WidthModel))
    def test_rejects_bad_omega(self, model):
        with pytest.raises(DomainError):
            width_factor(0.0, 300.0, model)

    @pytest.mark.parametrize("model", [WidthModel.TANH, WidthModel.HIGH_T])
    def test_rejects_zero_temperature(self, model):
        with pytest.raises(DomainError):
            width_factor(1.0, 0.0, model)

    def test_high_t_is_frequency_independent_width(self):
        # a = (m w / hbar) * W = 6 m kT / hbar^2 -> w * W constant
        T = 250.0
        ws = np.array([0.01, 0.1, 1.0])
        W = width_factor(ws, T, "highT")
        assert np.allclose(ws * W, 6 * KB * T / HBAR, rtol=1e-14)

    def test_vectorised(self):
        ws = np.linspace(0.01, 1, 7)
        W = width_factor(ws, 300.0, "tanh")
        assert W.shape == ws.shape

    @given(
        x=st.floats(min_value=1e-6, max_value=500.0),
        model=st.sampled_from(list(WidthModel)),
    )
    def test_positive(self, x, model):
        assert width_factor(omega_for_x(x), 300.0, model) > 0

    def test_series_matches_direct_at_switch(self):
        x = np.array([SERIES_SWITCH * (1 - 1e-12), SERIES_SWITCH])
        series = coth_minus_inv(x[:1])[0]
        direct = _coth_minus_inv_direct(x[1:])[0]
        assert series == pytest.approx(direct, rel=1e-10)

    @pytest.mark.parametrize("x", [1e-8, 1e-5, 1e-3, 9.99e-3, 0.5, 3.0, 50.0])
    def test_coth_minus_inv_against_mpmath(self, x):
        mp.mp.dps = 40
        ref = float(mp.coth(mp.mpf(x)) - 1 / mp.mpf(x))
        assert coth_minus_inv(np.array([x]))[0] == pytest.approx(ref, rel=1e-12)


class TestModes:
    def test_invalid_mode(self):
        with pytest.raises(DomainError):
            BathMode(0.0, 0.1)
        with pytest.raises(DomainError):
            BathMode(1.0, -0.1)

    def test_total_reorganization(self):
        assert total_reorganization([BathMode(1, 0.1), BathMode(2, 0.2)]) == pytest.approx(0.3)
        assert total_reorganization([BathMode(3, 0.4)]) == 0.4

    def test_total_reorganization_empty(self):
        with pytest.raises(DomainError):
            total_reorganization([])

    def test_concatenate_and_iterate(self):
        a = BathModes.from_modes([BathMode(1, 0.1)])
        b = a + [BathMode(2, 0.2)]
        assert len(b) == 2
        assert list(b)[1] == BathMode(2.0, 0.2)


class TestDensities:
    def test_ohmic_discretization_converges(self):
        sd = OhmicDensity(eta=0.8, omega_c=0.05)
        modes = discretize(sd, 4000, 50 * sd.omega_c)
        # analytic (1/pi) int eta exp(-w/wc) dw = eta wc / pi
        assert total_reorganization(modes) == pytest.approx(0.8 * 0.05 / np.pi, rel=1e-3)
        assert not modes.truncated

    def test_single_mode(self):
        sd = OhmicDensity(eta=1.0, omega_c=0.2)
        modes = discretize(sd, 1, 2.0)
        w1 = 1.0
        assert modes.omega[0] == pytest.approx(w1)
        assert modes.lam[0] == pytest.approx(sd(w1) / w1 * 2.0 / np.pi)

    def test_debye_truncated_reorganization(self):
        sd = DebyeDensity(lambda_total=0.2, omega_D=0.03)
        wmax = 1.5
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            modes = discretize(sd, 20000, wmax)
        expected = 0.2 * (2 / np.pi) * np.arctan(wmax / 0.03)
        assert total_reorganization(modes) == pytest.approx(expected, rel=1e-4)

    def test_debye_tail_warning(self):
        sd = DebyeDensity(lambda_total=0.2, omega_D=0.03)
        with pytest.warns(UserWarning, match="tail"):
            modes = discretize(sd, 100)
        assert modes.truncated
        assert modes.tail_fraction == pytest.approx(1 - (2 / np.pi) * np.arctan(50.0))

    def test_tabulated_interp_and_reorganization(self, tmp_path):
        # J = w on [0, 1]: lambda = (1/pi) int_0^1 dw = 1/pi
        sd = TabulatedDensity([0.0, 0.5, 1.0], [0.0, 0.5, 1.0])
        assert sd(0.25) == pytest.approx(0.25)
        assert sd(2.0) == 0.0
        assert sd.reorganization_energy() == pytest.approx(1 / np.pi, rel=1e-14)
        assert float(sd.j_over_omega(0.0)[0]) == pytest.approx(1.0)

    def test_tabulated_matches_ohmic_on_fine_grid(self):
        ohm = OhmicDensity(eta=0.3, omega_c=0.1)
        w = np.linspace(0, 5.0, 20001)
        tab = TabulatedDensity(w, ohm(w))
        # linear interpolation of J carries an O(h^2 / wc^2) error, ~1e-5 here
        assert tab.reorganization_energy() == pytest.approx(ohm.reorganization_energy(5.0), rel=5e-5)

    def test_table_round_trip(self, tmp_path):
        w = np.linspace(0.0, 0.4, 9)
        sd = TabulatedDensity(w, 0.2 * w * np.exp(-w / 0.1))
        path = tmp_path / "j.dat"
        write_spectral_table(path, sd)
        back = read_spectral_table(path)
        assert np.allclose(back.omega, sd.omega, rtol=1e-13)
        assert np.allclose(back.j, sd.j, rtol=1e-13)

    def test_invalid_table(self):
        with pytest.raises(DomainError):
            TabulatedDensity([0.0, 1.0, 0.5], [0.0, 1.0, 1.0])
        with pytest.raises(DomainError):
            TabulatedDensity([0.0, 1.0], [0.3, 1.0])

    @settings(max_examples=20, deadline=None)
    @given(
        eta=st.floats(min_value=0.01, max_value=5.0),
        wc=st.floats(min_value=0.005, max_value=1.0),
        n=st.integers(min_value=500, max_value=2000),
    )
    def test_refinement_stability(self, eta, wc, n):
        sd = OhmicDensity(eta, wc)
        a = discretize(sd, n)
        b = discretize(sd, 2 * n)
        for power in (0, 1, 2):
            sa = np.sum(a.lam * a.omega**power)
            sb = np.sum(b.lam * b.omega**power)
            # midpoint rule: relative change O((dw/wc)^2) ~ (50/n)^2
            assert abs(sa / sb - 1) < 0.5 * (50.0 / n) ** 2
