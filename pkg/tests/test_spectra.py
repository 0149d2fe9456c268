"""Spectral profiles and correlation functions against independent oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from biphoton_cascade.spectra import (
    CorrelationClass,
    ExchangeSymmetry,
    JointSpectrum,
    ProfileKind,
    SpectralProfile,
    correlation_class,
    envelope_magnitude_plus,
    g_minus,
    g_plus,
    jsa_value,
)


def fourier_corr_oracle(profile: SpectralProfile, tau: float) -> float:
    """Normalized Fourier transform of the intensity, by direct quadrature.

    Independent of the closed forms under test: integrates
    cos(W tau) |f(W)|^2 / integral |f(W)|^2 numerically.
    """
    lim = 12.0 * profile.sigma
    num, _ = quad(
        lambda w: np.cos(w * tau) * profile.intensity(w), -lim, lim,
        limit=200,
    )
    den, _ = quad(lambda w: profile.intensity(w), -lim, lim, limit=200)
    return num / den


@pytest.mark.parametrize("kind", list(ProfileKind))
@pytest.mark.parametrize("sigma", [0.1, 0.7, 1.0])
def test_corr_matches_fourier_oracle(kind, sigma):
    profile = SpectralProfile(kind, sigma)
    rng = np.random.default_rng(2024)
    for tau in rng.uniform(-6.0 / sigma, 6.0 / sigma, 17):
        assert profile.corr(tau) == pytest.approx(
            fourier_corr_oracle(profile, tau), abs=1e-8
        )


def test_gaussian_corr_closed_form_values():
    profile = SpectralProfile(ProfileKind.GAUSSIAN, 1.0)
    assert profile.corr(0.0) == pytest.approx(1.0, abs=1e-15)
    assert profile.corr(1.0) == pytest.approx(0.60653065971263342, abs=1e-15)
    assert profile.corr(-1.0) == profile.corr(1.0)


def test_hermite_gaussian_corr_values():
    profile = SpectralProfile(ProfileKind.HERMITE_GAUSSIAN1, 1.0)
    # (1 - tau^2) exp(-tau^2 / 2): zero crossing at tau = 1, negative beyond
    assert profile.corr(0.0) == pytest.approx(1.0, abs=1e-15)
    assert profile.corr(1.0) == pytest.approx(0.0, abs=1e-15)
    assert profile.corr(2.0) == pytest.approx(-3.0 * np.exp(-2.0), abs=1e-15)


def test_hermite_gaussian_amplitude_is_odd():
    profile = SpectralProfile(ProfileKind.HERMITE_GAUSSIAN1, 0.8)
    assert profile.is_odd
    w = np.linspace(0.1, 5.0, 23)
    np.testing.assert_allclose(profile.amplitude(-w), -profile.amplitude(w))


def test_gaussian_amplitude_is_even():
    profile = SpectralProfile(ProfileKind.GAUSSIAN, 0.8)
    assert not profile.is_odd
    w = np.linspace(0.1, 5.0, 23)
    np.testing.assert_allclose(profile.amplitude(-w), profile.amplitude(w))


def test_sigma_must_be_positive():
    with pytest.raises(ValueError):
        SpectralProfile(ProfileKind.GAUSSIAN, 0.0)
    with pytest.raises(ValueError):
        SpectralProfile(ProfileKind.GAUSSIAN, -1.0)


def _js(sigma_plus=1.0, sigma_minus=1.0, symmetry=ExchangeSymmetry.SYMMETRIC,
        pump=20.0):
    minus_kind = (
        ProfileKind.HERMITE_GAUSSIAN1
        if symmetry is ExchangeSymmetry.ANTISYMMETRIC
        else ProfileKind.GAUSSIAN
    )
    return JointSpectrum(
        plus=SpectralProfile(ProfileKind.GAUSSIAN, sigma_plus),
        minus=SpectralProfile(minus_kind, sigma_minus),
        symmetry=symmetry,
        pump_frequency=pump,
    )


def test_symmetry_parity_consistency_enforced():
    gaussian = SpectralProfile(ProfileKind.GAUSSIAN, 1.0)
    odd = SpectralProfile(ProfileKind.HERMITE_GAUSSIAN1, 1.0)
    with pytest.raises(ValueError):
        JointSpectrum(gaussian, odd, ExchangeSymmetry.SYMMETRIC)
    with pytest.raises(ValueError):
        JointSpectrum(gaussian, gaussian, ExchangeSymmetry.ANTISYMMETRIC)


def test_pump_frequency_guard():
    gaussian = SpectralProfile(ProfileKind.GAUSSIAN, 1.0)
    with pytest.raises(ValueError):
        JointSpectrum(gaussian, gaussian, pump_frequency=5.0)


def test_jsa_factorizes():
    js = _js(0.7, 1.3)
    wp, wm = 0.4, -1.1
    assert jsa_value(js, wp, wm) == pytest.approx(
        js.plus.amplitude(wp) * js.minus.amplitude(wm)
    )


def test_g_minus_is_carrier_free_and_even():
    js = _js(1.0, 0.5)
    taus = np.linspace(-8, 8, 41)
    np.testing.assert_allclose(g_minus(js, taus), g_minus(js, -taus))
    np.testing.assert_allclose(
        g_minus(js, taus), np.exp(-0.5**2 * taus**2 / 2.0), atol=1e-15
    )


def test_g_plus_carries_pump_oscillation():
    js = _js(1.0, 1.0, pump=20.0)
    # frozen oracle values: cos(20 tau) exp(-tau^2 / 2) at tau = 1.0, 0.5
    assert g_plus(js, 1.0) == pytest.approx(
        np.cos(20.0) * np.exp(-0.5), abs=1e-15
    )
    assert g_plus(js, 1.0) == pytest.approx(0.24751428216856827, abs=1e-12)
    assert g_plus(js, 0.5) == pytest.approx(-0.7404780254568895, abs=1e-12)


def test_envelope_magnitude_bounds_g_plus():
    js = _js(0.8, 1.0)
    taus = np.linspace(-5, 5, 401)
    assert np.all(np.abs(g_plus(js, taus)) <= envelope_magnitude_plus(js, taus) + 1e-12)


@given(
    sigma=st.floats(0.05, 2.0),
    tau=st.floats(-20.0, 20.0),
)
@settings(max_examples=60, deadline=None)
def test_corr_bounded_by_one(sigma, tau):
    for kind in ProfileKind:
        assert abs(SpectralProfile(kind, sigma).corr(tau)) <= 1.0 + 1e-12


def test_correlation_class():
    assert correlation_class(0.1, 1.0) is CorrelationClass.ANTI_CORRELATED
    assert correlation_class(1.0, 0.1) is CorrelationClass.CORRELATED
    assert correlation_class(1.0, 1.0) is CorrelationClass.UNCORRELATED
