"""Interference traces and their analysis.

Generates delay sweeps of the normalized coincidence probability from
either backend, extracts upper/lower envelopes (analytically from the term
list, or numerically by Fourier demodulation around the pump carrier),
reconstructs the marginal spectral intensities from the envelope
sum/difference, and locates localized interference structures with their
visibilities.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import curve_fit

from . import analytic
from .analytic import AnalyticModel
from .cascade import TransferMatrix, combo_is_zero
from .quadrature import GridSpec, integrate_R, suggested_grid
from .spectra import JointSpectrum

__all__ = [
    "SweepSpec",
    "Trace",
    "EnvelopePair",
    "AnalyticBackend",
    "QuadratureBackend",
    "sweep",
    "envelopes_analytic",
    "envelopes_numeric",
    "reconstruct_spectra",
    "detect_structures",
    "fit_gaussian_sigma",
    "write_trace_csv",
    "read_trace_csv",
]


@dataclass(frozen=True)
class SweepSpec:
    """One swept delay over a uniform grid; all other delays fixed."""

    fixed: dict
    swept: int
    start: float
    stop: float
    samples: int

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("samples must be >= 2")
        if not self.start < self.stop:
            raise ValueError("start must be < stop")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.samples)

    def delay_vectors(self, n_delays: int):
        missing = set(range(n_delays)) - {self.swept} - set(self.fixed)
        if missing:
            raise ValueError(f"fixed delays missing indices {sorted(missing)}")
        taus = []
        grid = self.grid()
        for i in range(n_delays):
            taus.append(grid if i == self.swept else self.fixed[i])
        return taus


@dataclass(frozen=True)
class Trace:
    taus: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.taus) != len(self.values):
            raise ValueError("taus and values must have equal length")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("trace contains non-finite values")


@dataclass(frozen=True)
class EnvelopePair:
    upper: Trace
    lower: Trace

    def __post_init__(self):
        if not np.array_equal(self.upper.taus, self.lower.taus):
            raise ValueError("envelope traces must share the delay grid")
        if np.any(self.lower.values > self.upper.values + 1e-9):
            raise ValueError("lower envelope exceeds upper envelope")


@dataclass(frozen=True)
class AnalyticBackend:
    """Sweeps evaluated from a closed-form model (vectorized)."""

    model: AnalyticModel
    js: JointSpectrum

    @property
    def n_delays(self) -> int:
        return self.model.n_delays

    def response(self, taus):
        return analytic.evaluate(self.model, self.js, taus)


@dataclass(frozen=True)
class QuadratureBackend:
    """Sweeps evaluated point by point with the brute-force oracle."""

    tm: TransferMatrix
    js: JointSpectrum
    grid: Optional[GridSpec] = None

    @property
    def n_delays(self) -> int:
        return self.tm.n_delays

    def response(self, taus):
        arrays = [np.atleast_1d(np.asarray(t, dtype=float)) for t in taus]
        length = max(a.size for a in arrays)
        out = np.empty(length)
        for k in range(length):
            point = [a[k] if a.size > 1 else a[0] for a in arrays]
            grid = self.grid or suggested_grid(self.tm, self.js, point)
            out[k] = integrate_R(self.tm, self.js, point, grid)
        return out if length > 1 else out[0]


def sweep(backend, spec: SweepSpec) -> Trace:
    """Uniformly sample the normalized coincidence along one delay."""
    taus = spec.delay_vectors(backend.n_delays)
    values = np.asarray(backend.response(taus), dtype=float)
    meta = {"fixed": dict(spec.fixed), "swept": spec.swept}
    return Trace(spec.grid(), values, meta)


def envelopes_analytic(model: AnalyticModel, js: JointSpectrum,
                       spec: SweepSpec) -> EnvelopePair:
    """Carrier-free upper/lower envelopes from the term list.

    Terms without a sum-frequency argument pass through unchanged; every
    carrier-bearing term contributes +- its magnitude (the cosine replaced
    by the sign that maximizes or minimizes the sum).
    """
    taus = spec.delay_vectors(model.n_delays)
    grid = spec.grid()
    base = np.zeros_like(grid)
    swing = np.zeros_like(grid)
    for term in model.terms:
        value = float(term.coeff) * np.ones_like(grid)
        if not combo_is_zero(term.minus_arg):
            arg = sum(float(c) * np.asarray(t)
                      for c, t in zip(term.minus_arg, taus) if c)
            value = value * js.minus.corr(arg)
        if combo_is_zero(term.plus_arg):
            base = base + value
        else:
            arg = sum(float(c) * np.asarray(t)
                      for c, t in zip(term.plus_arg, taus) if c)
            swing = swing + np.abs(value * js.plus.corr(arg))
    meta = {"fixed": dict(spec.fixed), "swept": spec.swept}
    return EnvelopePair(
        upper=Trace(grid, base + swing, meta),
        lower=Trace(grid, base - swing, meta),
    )


def envelopes_numeric(trace: Trace, carrier_freq: float) -> EnvelopePair:
    """Envelope extraction by Fourier demodulation of a sampled trace.

    Splits the spectrum at half the carrier frequency into baseband and
    carrier band, takes the analytic-signal magnitude of the carrier band,
    and returns baseband +- magnitude.
    """
    step = trace.taus[1] - trace.taus[0]
    samples_per_period = 2.0 * np.pi / (carrier_freq * step)
    if samples_per_period <= 4.0:
        raise ValueError(
            f"undersampled carrier: {samples_per_period:.2f} samples per "
            "period (need > 4)"
        )
    n = len(trace.values)
    freq = 2.0 * np.pi * np.fft.fftfreq(n, d=step)
    spectrum = np.fft.fft(trace.values)
    cutoff = carrier_freq / 2.0
    baseband = np.fft.ifft(np.where(np.abs(freq) < cutoff, spectrum, 0)).real
    # One-sided carrier band doubled: analytic signal of the fringe part.
    carrier_band = np.where((freq >= cutoff), spectrum * 2.0, 0)
    magnitude = np.abs(np.fft.ifft(carrier_band))
    return EnvelopePair(
        upper=Trace(trace.taus, baseband + magnitude, dict(trace.meta)),
        lower=Trace(trace.taus, baseband - magnitude, dict(trace.meta)),
    )


def _dft_intensity(taus: np.ndarray, signal: np.ndarray):
    """Windowed DFT of a delay-domain signal -> (omega, intensity >= 0)."""
    n = len(signal)
    window = np.hanning(n)
    step = taus[1] - taus[0]
    spectrum = np.abs(np.fft.rfft(signal * window)) * step
    omega = 2.0 * np.pi * np.fft.rfftfreq(n, d=step)
    return omega, spectrum


def _subtract_satellites(taus, signal, separation, iterations=3):
    """Isolate the central lobe of a signal with +-separation replicas.

    The replicas carry half the central amplitude; alternate between
    estimating the central lobe (replica-subtracted signal masked around
    zero) and rebuilding the replicas from that estimate.
    """
    mask = np.abs(taus) <= separation / 2.0
    central = np.where(mask, signal, 0.0)
    for _ in range(iterations):
        left = np.interp(taus + separation, taus, central, left=0.0, right=0.0)
        right = np.interp(taus - separation, taus, central, left=0.0, right=0.0)
        central = signal - 0.5 * (left + right)
        central = np.where(np.abs(taus) <= separation, central, 0.0)
    return central


def reconstruct_spectra(env: EnvelopePair, satellite_delay: Optional[float] = None):
    """Marginal spectral intensities from the envelope sum/difference.

    The envelope sum isolates the difference-frequency content (as
    ``2 - S``), the difference isolates the sum-frequency content with
    satellite replicas at the fixed delay, which are stripped before the
    transform.  Returns ((omega_minus, minus_intensity),
    (omega_plus, plus_intensity)), each peak-normalized.
    """
    taus = env.upper.taus
    s_minus = env.upper.values + env.lower.values
    s_plus = env.upper.values - env.lower.values

    dip = 2.0 - s_minus
    edge = max(abs(dip[0]), abs(dip[-1]), abs(s_plus[0]), abs(s_plus[-1]))
    if edge > 1e-3:
        raise ValueError(
            f"sweep window too short: envelope edge value {edge:.2e} > 1e-3"
        )
    if satellite_delay is None:
        satellite_delay = env.upper.meta.get("fixed", {}).get(0)
    central = (
        _subtract_satellites(taus, s_plus, satellite_delay)
        if satellite_delay
        else s_plus
    )

    omega_m, minus_intensity = _dft_intensity(taus, dip)
    omega_p, plus_intensity = _dft_intensity(taus, central)
    if minus_intensity.max() > 0:
        minus_intensity = minus_intensity / minus_intensity.max()
    if plus_intensity.max() > 0:
        plus_intensity = plus_intensity / plus_intensity.max()
    return (omega_m, minus_intensity), (omega_p, plus_intensity)


def fit_gaussian_sigma(omega: np.ndarray, intensity: np.ndarray) -> float:
    """Linewidth of a peak-normalized spectral intensity exp(-W^2/2 s^2)."""

    def model(w, amp, sig):
        return amp * np.exp(-(w**2) / (2.0 * sig**2))

    weight_cut = intensity > 1e-4 * intensity.max()
    popt, _ = curve_fit(
        model, omega[weight_cut], intensity[weight_cut],
        p0=[intensity.max(), max(abs(omega[np.argmax(intensity < 0.5 * intensity.max())]), 1e-3)],
        maxfev=10000,
    )
    return abs(popt[1])


@dataclass(frozen=True)
class Structure:
    center: float
    visibility: float
    overlapped: bool = False


def detect_structures(trace: Trace, baseline: float,
                      carrier_freq: Optional[float] = None,
                      min_prominence: float = 0.02):
    """Locate localized interference structures and their visibilities.

    A structure shows up either as a baseband shift of the mean away from
    the baseline (a dip or bump) or as a burst of carrier fringes; its
    visibility is the larger of the peak baseband deviation and the peak
    fringe amplitude, divided by the baseline, and the center is the
    deviation-weighted centroid.  ``carrier_freq`` enables demodulation
    for carrier-bearing traces; pass None for traces that are already
    baseband (e.g. the analytic envelope midline).
    """
    if carrier_freq is not None:
        env = envelopes_numeric(trace, carrier_freq)
        midline = 0.5 * (env.upper.values + env.lower.values)
        fringe = 0.5 * (env.upper.values - env.lower.values)
        deviation = np.maximum(np.abs(midline - baseline), fringe)
    else:
        deviation = np.abs(trace.values - baseline)
    noise = float(np.median(deviation)) * 1.4826
    threshold = max(3.0 * noise, min_prominence * float(deviation.max()))
    active = deviation > threshold

    structures = []
    idx = 0
    n = len(active)
    while idx < n:
        if not active[idx]:
            idx += 1
            continue
        start = idx
        while idx < n and active[idx]:
            idx += 1
        seg = slice(start, idx)
        weights = deviation[seg]
        center = float(np.sum(trace.taus[seg] * weights) / np.sum(weights))
        visibility = float(deviation[seg].max()) / baseline
        # Two deviation peaks inside one region indicate unresolved overlap.
        interior = deviation[seg]
        peaks = np.sum(
            (interior[1:-1] > interior[:-2]) & (interior[1:-1] >= interior[2:])
        ) if len(interior) > 2 else 1
        structures.append(Structure(center, visibility, overlapped=peaks > 1))
    return structures


_FLOAT_FMT = "%.17g"


def write_trace_csv(path_or_buffer, trace: Trace,
                    envelopes: Optional[EnvelopePair] = None) -> None:
    """CSV with header tau,value[,upper,lower], 17-significant-digit floats."""
    own = isinstance(path_or_buffer, (str, bytes))
    handle = open(path_or_buffer, "w") if own else path_or_buffer
    try:
        if envelopes is None:
            handle.write("tau,value\n")
            for tau, value in zip(trace.taus, trace.values):
                handle.write(f"{tau:.17g},{value:.17g}\n")
        else:
            handle.write("tau,value,upper,lower\n")
            for tau, value, hi, lo in zip(
                trace.taus, trace.values,
                envelopes.upper.values, envelopes.lower.values,
            ):
                handle.write(f"{tau:.17g},{value:.17g},{hi:.17g},{lo:.17g}\n")
    finally:
        if own:
            handle.close()


def read_trace_csv(path):
    """Read a trace CSV; returns (Trace, EnvelopePair or None)."""
    data = np.genfromtxt(path, delimiter=",", names=True)
    taus = np.atleast_1d(data["tau"])
    trace = Trace(taus, np.atleast_1d(data["value"]))
    names = data.dtype.names
    if "upper" in names and "lower" in names:
        env = EnvelopePair(
            upper=Trace(taus, np.atleast_1d(data["upper"])),
            lower=Trace(taus, np.atleast_1d(data["lower"])),
        )
        return trace, env
    return trace, None
