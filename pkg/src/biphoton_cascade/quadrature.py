"""Brute-force numerical oracle for the coincidence probability.

Computes R(taus) by direct tensor-product quadrature of the coincidence
density over the sum/difference detunings, with the integration domain
extended to the full real plane (exact to spectral-tail accuracy given the
pump-frequency guard on the joint spectrum).  Deliberately independent of
the closed-form engine: nothing here knows about g functions or term
lists, only about evaluating the density on a grid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cascade import ExpSum, TransferMatrix, combo_dot
from .spectra import JointSpectrum

__all__ = ["Rule", "GridSpec", "integrate_R", "convergence_report", "suggested_grid"]


class Rule(enum.Enum):
    TRAPEZOID = "trapezoid"
    GAUSS_HERMITE = "gauss-hermite"


@dataclass(frozen=True)
class GridSpec:
    nodes_per_axis: int
    extent_sigmas: float = 8.0
    rule: Rule = Rule.TRAPEZOID

    def __post_init__(self):
        if self.nodes_per_axis < 32:
            raise ValueError("nodes_per_axis must be >= 32")
        if self.rule is Rule.TRAPEZOID and self.extent_sigmas < 5:
            raise ValueError("extent_sigmas must be >= 5 for the trapezoid rule")


def _axis(grid: GridSpec, sigma: float):
    """Quadrature nodes/weights for one detuning axis.

    The weights absorb the Gaussian intensity decay in the Gauss-Hermite
    case: integrand values are multiplied by exp(x^2) so that profiles of
    the form polynomial * exp(-W^2 / 2 sigma^2) are integrated exactly.
    """
    if grid.rule is Rule.TRAPEZOID:
        half = grid.extent_sigmas * sigma
        nodes = np.linspace(-half, half, grid.nodes_per_axis)
        step = nodes[1] - nodes[0]
        weights = np.full(grid.nodes_per_axis, step)
        weights[0] = weights[-1] = step / 2.0
        return nodes, weights
    x, w = np.polynomial.hermite.hermgauss(grid.nodes_per_axis)
    scale = math.sqrt(2.0) * sigma
    return scale * x, scale * w * np.exp(x**2)


def _entry_field(entry: ExpSum, taus, pump: float, w_plus, w_minus, minus_sign):
    """Entry values on the (W_plus, W_minus) grid for omega = wp/2 + (W+ +- W-)/2.

    Each exponential is separable across the two axes, so the 2D field is
    a short sum of outer products.
    """
    field = np.zeros((w_plus.size, w_minus.size), dtype=complex)
    for amp, combo in entry.terms:
        u = combo_dot(combo, taus)
        carrier = np.exp(-0.5j * pump * u)
        plus_part = np.exp(-0.5j * w_plus * u)
        minus_part = np.exp(-0.5j * minus_sign * w_minus * u)
        field += (float(amp) * carrier) * np.outer(plus_part, minus_part)
    return field


def _baseline_constant(tm: TransferMatrix, symmetry: int) -> float:
    """Sum of squared merged product amplitudes: the large-delay constant."""
    prod: dict = {}
    for sign, (first, second) in (
        (Fraction(1), (tm.A, tm.D)),
        (Fraction(symmetry), (tm.B, tm.C)),
    ):
        for a_amp, a_combo in first.terms:
            for b_amp, b_combo in second.terms:
                key = (a_combo, b_combo)
                prod[key] = prod.get(key, Fraction(0)) + sign * a_amp * b_amp
    return float(sum(amp * amp for amp in prod.values()))


def integrate_R(tm: TransferMatrix, js: JointSpectrum, taus,
                grid: GridSpec) -> float:
    """Normalized coincidence probability by 2D quadrature of the density.

    The raw integral is divided by the large-delay baseline (the same
    asymptotic constant the closed-form engine normalizes with) so values
    are directly comparable across backends.
    """
    if len(taus) != tm.n_delays:
        raise ValueError(f"expected {tm.n_delays} delays, got {len(taus)}")
    wp_nodes, wp_weights = _axis(grid, js.plus.sigma)
    wm_nodes, wm_weights = _axis(grid, js.minus.sigma)
    pump = js.pump_frequency

    # the Gauss-Hermite weights from _axis already absorb the exp(x^2)
    # compensation, so both rules consume the plain intensities here
    f_plus = js.plus.intensity(wp_nodes)
    f_minus = js.minus.intensity(wm_nodes)

    a_s = _entry_field(tm.A, taus, pump, wp_nodes, wm_nodes, +1)
    b_s = _entry_field(tm.B, taus, pump, wp_nodes, wm_nodes, +1)
    c_i = _entry_field(tm.C, taus, pump, wp_nodes, wm_nodes, -1)
    d_i = _entry_field(tm.D, taus, pump, wp_nodes, wm_nodes, -1)

    sym = int(js.symmetry)
    amp = a_s * d_i + sym * b_s * c_i
    density = np.abs(amp) ** 2
    if not np.all(np.isfinite(density)):
        raise FloatingPointError("non-finite coincidence density on the grid")

    joint = np.outer(f_plus * wp_weights, f_minus * wm_weights)
    numerator = float(np.sum(joint * density))
    norm = _baseline_constant(tm, sym) * float(np.sum(joint))
    return numerator / norm


def convergence_report(tm: TransferMatrix, js: JointSpectrum, taus, grids):
    """Successive-refinement table: list of (grid, value, delta-to-previous)."""
    grids = list(grids)
    if len(grids) < 2:
        raise ValueError("need at least two grids for a convergence report")
    rows = []
    previous = None
    for grid in grids:
        value = integrate_R(tm, js, taus, grid)
        delta = None if previous is None else abs(value - previous)
        rows.append((grid, value, delta))
        previous = value
    return rows


def suggested_grid(tm: TransferMatrix, js: JointSpectrum, taus,
                   extent_sigmas: float = 8.0,
                   points_per_cycle: float = 4.0) -> GridSpec:
    """Trapezoid grid sized to resolve the fastest delay-induced fringe.

    The density oscillates in each detuning no faster than the largest
    absolute delay combination appearing in the matrix entries; node count
    follows from Nyquist with margin.
    """
    u_max = 0.0
    for entry in (tm.A, tm.B, tm.C, tm.D):
        for _, combo in entry.terms:
            u_max = max(u_max, abs(combo_dot(combo, taus)))
    # Exponent differences in the squared density reach 2 * u_max, and the
    # detuning enters with a factor 1/2: fringe rate u_max per axis unit.
    sigma = max(js.plus.sigma, js.minus.sigma)
    window = 2.0 * extent_sigmas * sigma
    nodes = int(window * u_max / (2.0 * math.pi) * points_per_cycle) + 64
    return GridSpec(max(nodes, 256), extent_sigmas, Rule.TRAPEZOID)
