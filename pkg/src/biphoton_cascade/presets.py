"""Named cascade topologies and correlation-class parameter sets.

The six presets are the canonical one-, two- and three-delay cascades for
the |1,1> input (beam splitters all carrying a delay) and the |2002> input
(an extra leading delay-free beam splitter).
"""

from __future__ import annotations

from .cascade import CascadeConfig
from .spectra import (
    ExchangeSymmetry,
    JointSpectrum,
    ProfileKind,
    SpectralProfile,
)

__all__ = [
    "PRESETS",
    "preset_cascade",
    "CLASS_SIGMAS",
    "make_spectrum",
    "single_delay_chain",
    "two_delay_chain",
    "three_delay_chain",
]

_PRESET_LABELS = {
    "homi": ([0], 1),
    "noon": ([None, 0], 1),
    "two_param_11": ([0, 1], 2),
    "two_param_2002": ([None, 0, 1], 2),
    "three_param_11": ([0, 1, 2], 3),
    "three_param_2002": ([None, 0, 1, 2], 3),
}

PRESETS = tuple(_PRESET_LABELS)

#: |1,1> preset paired with its |2002> counterpart.
PRESET_PAIRS = (
    ("homi", "noon"),
    ("two_param_11", "two_param_2002"),
    ("three_param_11", "three_param_2002"),
)


def preset_cascade(name: str) -> CascadeConfig:
    try:
        labels, n_delays = _PRESET_LABELS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset {name!r}; choose from {', '.join(PRESETS)}"
        ) from None
    return CascadeConfig.from_labels(labels, n_delays)


def single_delay_chain(n_stages: int) -> CascadeConfig:
    """n beam splitters, only the last one carrying the single delay."""
    return CascadeConfig.from_labels([None] * (n_stages - 1) + [0], 1)


def two_delay_chain(n_stages: int) -> CascadeConfig:
    return CascadeConfig.from_labels([None] * (n_stages - 2) + [0, 1], 2)


def three_delay_chain(n_stages: int) -> CascadeConfig:
    return CascadeConfig.from_labels([None] * (n_stages - 3) + [0, 1, 2], 3)


#: (sigma_plus, sigma_minus) per correlation class; the larger linewidth is
#: normalized to 1 so traces sharing a marginal width coincide exactly.
CLASS_SIGMAS = {
    "anticorrelated": (0.1, 1.0),
    "correlated": (1.0, 0.1),
    "uncorrelated": (1.0, 1.0),
}


def make_spectrum(sigma_plus: float, sigma_minus: float,
                  symmetry: ExchangeSymmetry = ExchangeSymmetry.SYMMETRIC,
                  pump_frequency: float = 20.0) -> JointSpectrum:
    """Joint spectrum with the conventional profile choice per symmetry."""
    minus_kind = (
        ProfileKind.HERMITE_GAUSSIAN1
        if symmetry is ExchangeSymmetry.ANTISYMMETRIC
        else ProfileKind.GAUSSIAN
    )
    return JointSpectrum(
        plus=SpectralProfile(ProfileKind.GAUSSIAN, sigma_plus),
        minus=SpectralProfile(minus_kind, sigma_minus),
        symmetry=symmetry,
        pump_frequency=pump_frequency,
    )
