"""Deterministic regeneration of the six reference figure datasets.

Each figure family (one per preset cascade) is produced for the three
correlation classes, giving 18 trace CSVs plus a thin SVG polyline render
of each.  All data lives in the CSVs; the SVGs are conveniences.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticModel, expand
from .cascade import compose
from .interferogram import (
    AnalyticBackend,
    EnvelopePair,
    SweepSpec,
    Trace,
    envelopes_analytic,
    sweep,
    write_trace_csv,
)
from .presets import CLASS_SIGMAS, make_spectrum, preset_cascade
from .spectra import ExchangeSymmetry

__all__ = ["FIGURES", "generate_figures", "render_svg"]

CLASS_NAMES = ("anticorrelated", "correlated", "uncorrelated")


@dataclass(frozen=True)
class FigureSpec:
    """One figure family: a preset swept over its last delay."""

    preset: str
    fixed: dict
    start: float
    stop: float
    samples: int
    with_envelope: bool


FIGURES = (
    FigureSpec("homi", {}, -50.0, 50.0, 4001, False),
    FigureSpec("noon", {}, -50.0, 50.0, 4001, True),
    FigureSpec("two_param_11", {0: 5.0}, -60.0, 60.0, 4801, True),
    FigureSpec("two_param_2002", {0: 5.0}, -60.0, 60.0, 4801, True),
    FigureSpec("three_param_11", {0: 8.0, 1: 22.0}, -80.0, 80.0, 6401, True),
    FigureSpec("three_param_2002", {0: 8.0, 1: 22.0}, -80.0, 80.0, 6401, True),
)


def _figure_trace(fig: FigureSpec, sigmas):
    cascade = preset_cascade(fig.preset)
    tm = compose(cascade)
    model = expand(tm, ExchangeSymmetry.SYMMETRIC)
    js = make_spectrum(*sigmas)
    spec = SweepSpec(
        fixed=dict(fig.fixed),
        swept=tm.n_delays - 1,
        start=fig.start,
        stop=fig.stop,
        samples=fig.samples,
    )
    trace = sweep(AnalyticBackend(model, js), spec)
    env = envelopes_analytic(model, js, spec) if fig.with_envelope else None
    return trace, env


def generate_figures(out_dir: str) -> list[str]:
    """Write all figure CSVs and SVGs into ``out_dir``; returns CSV paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for fig in FIGURES:
        for class_name in CLASS_NAMES:
            trace, env = _figure_trace(fig, CLASS_SIGMAS[class_name])
            stem = f"{fig.preset}_{class_name}"
            csv_path = os.path.join(out_dir, stem + ".csv")
            write_trace_csv(csv_path, trace, env)
            render_svg(os.path.join(out_dir, stem + ".svg"), trace, env,
                       title=stem)
            written.append(csv_path)
    return written


def _polyline(xs, ys, x0, x1, y0, y1, width, height, pad) -> str:
    sx = (width - 2 * pad) / (x1 - x0)
    sy = (height - 2 * pad) / (y1 - y0)
    pts = " ".join(
        f"{pad + (x - x0) * sx:.2f},{height - pad - (y - y0) * sy:.2f}"
        for x, y in zip(xs, ys)
    )
    return pts


def render_svg(path: str, trace: Trace, env: EnvelopePair = None,
               title: str = "", width: int = 720, height: int = 360) -> None:
    """Minimal line-plot renderer: trace in black, envelopes dashed gray."""
    pad = 40.0
    x0, x1 = float(trace.taus[0]), float(trace.taus[-1])
    series = [trace.values]
    if env is not None:
        series += [env.upper.values, env.lower.values]
    y0 = min(float(s.min()) for s in series)
    y1 = max(float(s.max()) for s in series)
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    margin = 0.05 * (y1 - y0)
    y0, y1 = y0 - margin, y1 + margin

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" '
        f'height="{height - 2 * pad}" fill="none" stroke="black"/>',
    ]
    if env is not None:
        for bound in (env.upper.values, env.lower.values):
            pts = _polyline(trace.taus, bound, x0, x1, y0, y1, width, height, pad)
            lines.append(
                f'<polyline points="{pts}" fill="none" stroke="gray" '
                'stroke-dasharray="4 3" stroke-width="1"/>'
            )
    pts = _polyline(trace.taus, trace.values, x0, x1, y0, y1, width, height, pad)
    lines.append(
        f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1"/>'
    )
    lines.append("</svg>")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")
