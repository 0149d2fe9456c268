"""Biphoton joint-spectrum models in collective frequency coordinates.

The joint spectral amplitude is taken factorable, ``f(w_s, w_i) =
f_plus(W_plus) * f_minus(W_minus)`` with ``W_plus = W_s + W_i`` and
``W_minus = W_s - W_i`` the sum/difference detunings from half the pump
frequency.  All frequencies are expressed in units of the sum linewidth
(so ``sigma_plus = 1`` in canonical configurations) and delays in its
inverse.

Everything downstream is written in terms of two normalized correlation
functions of the marginal intensities:

* ``g_minus(tau)`` -- slow envelope set by the difference-frequency
  linewidth,
* ``g_plus(tau)`` -- the same for the sum frequency, carrying the pump
  oscillation ``cos(pump_frequency * tau)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ProfileKind",
    "ExchangeSymmetry",
    "CorrelationClass",
    "SpectralProfile",
    "JointSpectrum",
    "jsa_value",
    "g_minus",
    "g_plus",
    "envelope_magnitude_plus",
    "correlation_class",
]


class ProfileKind(enum.Enum):
    GAUSSIAN = "gaussian"
    HERMITE_GAUSSIAN1 = "hermite_gaussian1"


class ExchangeSymmetry(enum.IntEnum):
    """Sign picked up by the JSA when signal and idler are swapped."""

    SYMMETRIC = 1
    ANTISYMMETRIC = -1


class CorrelationClass(enum.Enum):
    ANTI_CORRELATED = "anti-correlated"
    CORRELATED = "correlated"
    UNCORRELATED = "uncorrelated"


@dataclass(frozen=True)
class SpectralProfile:
    """One marginal amplitude profile, Gaussian or first Hermite-Gaussian.

    ``sigma`` is the intensity linewidth: the Gaussian amplitude is
    ``exp(-W^2 / 4 sigma^2)`` so the intensity is ``exp(-W^2 / 2 sigma^2)``.
    The Hermite-Gaussian option multiplies the same Gaussian by ``W`` and
    is the minimal odd (antisymmetric) amplitude.
    """

    kind: ProfileKind
    sigma: float

    def __post_init__(self):
        if not (self.sigma > 0):
            raise ValueError(f"sigma must be positive, got {self.sigma}")

    @property
    def is_odd(self) -> bool:
        return self.kind is ProfileKind.HERMITE_GAUSSIAN1

    def amplitude(self, omega):
        """Amplitude f(W), peak-normalized for the Gaussian case."""
        omega = np.asarray(omega, dtype=float)
        gauss = np.exp(-(omega**2) / (4.0 * self.sigma**2))
        if self.kind is ProfileKind.GAUSSIAN:
            return gauss
        return omega * gauss

    def intensity(self, omega):
        """Marginal intensity F(W) = |f(W)|^2 (even in W for both kinds)."""
        a = self.amplitude(omega)
        return a * a

    def corr(self, tau):
        """Normalized Fourier transform of the intensity at delay tau.

        Gaussian: exp(-sigma^2 tau^2 / 2).
        Hermite-Gaussian: (1 - sigma^2 tau^2) exp(-sigma^2 tau^2 / 2),
        obtained by differentiating the Gaussian transform twice
        (W^2 under the integral maps to -d^2/dtau^2).
        """
        x = (self.sigma * np.asarray(tau, dtype=float)) ** 2
        if self.kind is ProfileKind.GAUSSIAN:
            return np.exp(-x / 2.0)
        return (1.0 - x) * np.exp(-x / 2.0)


@dataclass(frozen=True)
class JointSpectrum:
    """Factorable biphoton spectrum f_plus(W_plus) * f_minus(W_minus)."""

    plus: SpectralProfile
    minus: SpectralProfile
    symmetry: ExchangeSymmetry = ExchangeSymmetry.SYMMETRIC
    pump_frequency: float = 20.0

    def __post_init__(self):
        if self.symmetry is ExchangeSymmetry.ANTISYMMETRIC and not self.minus.is_odd:
            raise ValueError(
                "antisymmetric exchange requires an odd difference-frequency "
                "amplitude (hermite_gaussian1)"
            )
        if self.symmetry is ExchangeSymmetry.SYMMETRIC and self.minus.is_odd:
            raise ValueError(
                "symmetric exchange requires an even difference-frequency "
                "amplitude (gaussian)"
            )
        guard = 10.0 * max(self.plus.sigma, self.minus.sigma)
        if self.pump_frequency < guard:
            raise ValueError(
                f"pump_frequency {self.pump_frequency} too small for "
                f"linewidths (needs >= {guard}); full-line integrals would "
                "pick up negative-frequency contamination"
            )


def jsa_value(js: JointSpectrum, omega_plus, omega_minus):
    """Joint amplitude at collective detunings (W_plus, W_minus)."""
    return js.plus.amplitude(omega_plus) * js.minus.amplitude(omega_minus)


def g_minus(js: JointSpectrum, tau):
    """Difference-frequency correlation, normalized FT of F(W_minus)."""
    return js.minus.corr(tau)


def g_plus(js: JointSpectrum, tau):
    """Sum-frequency correlation including the pump carrier.

    ``cos(pump_frequency * tau)`` times the carrier-free magnitude; this is
    the convention every closed-form coincidence expression is written in.
    """
    tau = np.asarray(tau, dtype=float)
    return np.cos(js.pump_frequency * tau) * js.plus.corr(tau)


def envelope_magnitude_plus(js: JointSpectrum, tau):
    """Carrier-free magnitude of the sum-frequency correlation."""
    return np.abs(js.plus.corr(tau))


_RATIO_TOL = 1e-9


def correlation_class(sigma_plus: float, sigma_minus: float) -> CorrelationClass:
    """Classify frequency correlation by the linewidth ratio."""
    ratio = sigma_plus / sigma_minus
    if abs(ratio - 1.0) <= _RATIO_TOL:
        return CorrelationClass.UNCORRELATED
    if ratio < 1.0:
        return CorrelationClass.ANTI_CORRELATED
    return CorrelationClass.CORRELATED
