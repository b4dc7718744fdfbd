"""Standalone SVG 1.1 scatter plots with bound/box/trend overlays.

The renderer is a pure string builder: no timestamps, no generated ids,
fixed coordinate formatting.  Identical inputs produce byte-identical
documents.  Geometry only moves pixels around; the plotted values come
entirely from the series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union
from xml.sax.saxutils import escape

from ..metrics import jitter_enob_limit, jitter_snr_limit
from ..trends import PowerLawFit, ReferenceTrend, REFERENCE_TRENDS, TrendFit
from ..units import axis_label, sig4, display_value
from .series import (
    FittedTrendOverlay,
    JitterBound,
    LINEAR,
    LOG10,
    PlotSpec,
    ReferenceTrendOverlay,
    RequirementBox,
    SeriesFile,
)

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
OVERLAY_COLOR = "#555555"


@dataclass(frozen=True)
class Geometry:
    width: int = 640
    height: int = 480
    margin_left: int = 72
    margin_right: int = 24
    margin_top: int = 40
    margin_bottom: int = 56

    @property
    def plot_width(self) -> int:
        return self.width - self.margin_left - self.margin_right

    @property
    def plot_height(self) -> int:
        return self.height - self.margin_top - self.margin_bottom


# Requirement-spec thresholds mapped onto plottable metric keys, with the
# side of the axis the admitted region sits on.
_BOX_THRESHOLDS = {
    "bandwidth": ("min", "min_bandwidth"),
    "nyquist_rate": ("min", "min_nyquist"),
    "enob": ("min", "min_enob"),
    "area": ("max", "max_area"),
    "single_bit_energy": ("max", "max_energy_per_bit"),
}


def requirement_box_bounds(spec_box: RequirementBox, x_key: str, y_key: str,
                           x_range: tuple[float, float],
                           y_range: tuple[float, float],
                           ) -> tuple[float, float, float, float]:
    """Data-space (x0, x1, y0, y1) of the admitted region on these axes."""
    bounds = []
    for key, axis_range in ((x_key, x_range), (y_key, y_range)):
        if key not in _BOX_THRESHOLDS:
            raise ValueError(f"requirement box cannot be drawn on axis {key!r}")
        side, attr = _BOX_THRESHOLDS[key]
        threshold = getattr(spec_box.spec, attr)
        if side == "min":
            bounds.append((threshold, axis_range[1]))
        else:
            bounds.append((axis_range[0], threshold))
    (x0, x1), (y0, y1) = bounds
    return x0, x1, y0, y1


def jitter_overlay_points(bound: JitterBound, y_key: str,
                          x_range: tuple[float, float], log_x: bool,
                          n: int = 64) -> list[tuple[float, float]]:
    """Sampled (frequency, ceiling) curve for an aperture-jitter overlay."""
    if y_key == "enob":
        limit = lambda f: jitter_enob_limit(f, bound.jitter_rms)
    elif y_key in ("sndr", "schreier_fom"):
        limit = lambda f: jitter_snr_limit(f, bound.jitter_rms)
    else:
        raise ValueError(f"jitter bound overlay needs enob or sndr on y, got {y_key!r}")
    points = []
    for f in _sample_axis(x_range, log_x, n):
        if f <= 0:
            continue
        points.append((f, limit(f)))
    return points


def trend_overlay_points(fit: Union[TrendFit, PowerLawFit],
                         x_range: tuple[float, float], log_x: bool,
                         n: int = 64) -> list[tuple[float, float]]:
    points = []
    for x in _sample_axis(x_range, log_x, n):
        if isinstance(fit, TrendFit):
            y = 2.0 ** (fit.intercept + fit.slope * (x - fit.reference_year))
        else:
            if x <= 0:
                continue
            y = 10.0 ** (fit.log_coefficient + fit.exponent * math.log10(x))
        points.append((x, y))
    return points


def reference_overlay_points(trend: ReferenceTrend, anchor: tuple[float, float],
                             x_range: tuple[float, float], log_x: bool,
                             n: int = 64) -> list[tuple[float, float]]:
    """Published tendency through ``anchor`` = (x0, y0)."""
    x0, y0 = anchor
    if trend.kind == "doubling_years":
        slope = 1.0 / trend.value
    elif trend.kind == "halving_years":
        slope = -1.0 / trend.value
    else:
        slope = None
    points = []
    for x in _sample_axis(x_range, log_x, n):
        if slope is not None:
            y = y0 * 2.0 ** (slope * (x - x0))
        else:
            if x <= 0:
                continue
            y = y0 * (x / x0) ** trend.value
        points.append((x, y))
    return points


def _sample_axis(axis_range: tuple[float, float], log: bool, n: int) -> list[float]:
    lo, hi = axis_range
    if log:
        return [lo * (hi / lo) ** (i / (n - 1)) for i in range(n)]
    return [lo + (hi - lo) * (i / (n - 1)) for i in range(n)]


# ---------------------------------------------------------------------------
# Scales and ticks
# ---------------------------------------------------------------------------

class _Scale:
    def __init__(self, lo: float, hi: float, pixel_lo: float, pixel_hi: float,
                 log: bool):
        self.lo, self.hi = lo, hi
        self.pixel_lo, self.pixel_hi = pixel_lo, pixel_hi
        self.log = log

    def __call__(self, value: float) -> float:
        if self.log:
            t = (math.log10(value) - math.log10(self.lo)) / \
                (math.log10(self.hi) - math.log10(self.lo))
        else:
            t = (value - self.lo) / (self.hi - self.lo)
        return self.pixel_lo + t * (self.pixel_hi - self.pixel_lo)

    def ticks(self) -> list[float]:
        if self.log:
            first = math.ceil(math.log10(self.lo) - 1e-9)
            last = math.floor(math.log10(self.hi) + 1e-9)
            return [10.0 ** d for d in range(first, last + 1)]
        span = self.hi - self.lo
        raw = span / 5.0
        magnitude = 10.0 ** math.floor(math.log10(raw))
        for mult in (1.0, 2.0, 5.0, 10.0):
            step = mult * magnitude
            if span / step <= 6:
                break
        first = math.ceil(self.lo / step - 1e-9)
        last = math.floor(self.hi / step + 1e-9)
        return [i * step for i in range(first, last + 1)]


def _padded_range(values: Sequence[float], log: bool) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if log:
        if lo == hi:
            return lo / 2.0, hi * 2.0
        ratio = (hi / lo) ** 0.05
        return lo / ratio, hi * ratio
    if lo == hi:
        pad = abs(lo) * 0.05 or 1.0
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _fmt(value: float) -> str:
    return f"{value:.2f}"


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def emit_scatter_svg(series: SeriesFile, spec: PlotSpec,
                     geometry: Geometry = Geometry()) -> str:
    """Render a standalone SVG document for the series under ``spec``.

    Raises ValueError when a log-scaled axis receives non-positive data
    (the offending record ids are listed).
    """
    if not series.rows:
        raise ValueError("cannot render an empty series")
    _check_log_positivity(series, spec)

    xs = [r.x for r in series.rows]
    ys = [r.y for r in series.rows]
    # Axis ranges must cover requirement-box thresholds or the box would
    # fall outside the drawable area.
    for box in (o for o in spec.overlays if isinstance(o, RequirementBox)):
        for key, values, scale_kind in ((spec.x_key, xs, spec.x_scale),
                                        (spec.y_key, ys, spec.y_scale)):
            if key not in _BOX_THRESHOLDS:
                raise ValueError(f"requirement box cannot be drawn on axis {key!r}")
            threshold = getattr(box.spec, _BOX_THRESHOLDS[key][1])
            if scale_kind == LOG10 and threshold <= 0:
                continue
            values.append(threshold)

    log_x = spec.x_scale == LOG10
    log_y = spec.y_scale == LOG10
    x_lo, x_hi = _padded_range(xs, log_x)
    y_lo, y_hi = _padded_range(ys, log_y)

    g = geometry
    x_scale = _Scale(x_lo, x_hi, g.margin_left, g.margin_left + g.plot_width, log_x)
    y_scale = _Scale(y_lo, y_hi, g.margin_top + g.plot_height, g.margin_top, log_y)

    parts: list[str] = []
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{g.width}" height="{g.height}" '
        f'viewBox="0 0 {g.width} {g.height}">')
    parts.append(f'<rect width="{g.width}" height="{g.height}" fill="#ffffff"/>')
    if spec.title:
        parts.append(
            f'<text x="{g.width / 2:.1f}" y="{g.margin_top - 16}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="14">'
            f'{escape(spec.title)}</text>')

    _render_axes(parts, spec, g, x_scale, y_scale)
    _render_overlays(parts, series, spec, x_scale, y_scale, (x_lo, x_hi), (y_lo, y_hi))
    _render_markers(parts, series, x_scale, y_scale)
    _render_legend(parts, series, g)

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _check_log_positivity(series: SeriesFile, spec: PlotSpec) -> None:
    offenders = []
    if spec.x_scale == LOG10:
        offenders += [r.record_id for r in series.rows if r.x <= 0]
    if spec.y_scale == LOG10:
        offenders += [r.record_id for r in series.rows if r.y <= 0]
    if offenders:
        raise ValueError(
            "log scale requires positive data; offending ids: "
            + ", ".join(sorted(set(offenders))))


def _render_axes(parts, spec, g: Geometry, x_scale: _Scale, y_scale: _Scale) -> None:
    x0, x1 = g.margin_left, g.margin_left + g.plot_width
    y0, y1 = g.margin_top, g.margin_top + g.plot_height
    parts.append(f'<rect x="{x0}" y="{y0}" width="{g.plot_width}" '
                 f'height="{g.plot_height}" fill="none" stroke="#000000"/>')

    for tick in x_scale.ticks():
        px = x_scale(tick)
        parts.append(f'<line x1="{_fmt(px)}" y1="{y1}" x2="{_fmt(px)}" '
                     f'y2="{y1 + 5}" stroke="#000000"/>')
        label = sig4(display_value(tick, spec.x_key))
        parts.append(f'<text x="{_fmt(px)}" y="{y1 + 18}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{escape(label)}</text>')
    for tick in y_scale.ticks():
        py = y_scale(tick)
        parts.append(f'<line x1="{x0 - 5}" y1="{_fmt(py)}" x2="{x0}" '
                     f'y2="{_fmt(py)}" stroke="#000000"/>')
        label = sig4(display_value(tick, spec.y_key))
        parts.append(f'<text x="{x0 - 8}" y="{_fmt(py + 4)}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{escape(label)}</text>')

    parts.append(f'<text x="{(x0 + x1) / 2:.1f}" y="{y1 + 40}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="12">'
                 f'{escape(axis_label(spec.x_key))}</text>')
    parts.append(f'<text x="18" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="12" '
                 f'transform="rotate(-90 18 {(y0 + y1) / 2:.1f})">'
                 f'{escape(axis_label(spec.y_key))}</text>')


def _clip_points(points, x_range, y_range):
    return [(x, y) for x, y in points
            if x_range[0] <= x <= x_range[1] and y_range[0] <= y <= y_range[1]]


def _polyline(points, x_scale, y_scale, dash: str) -> str:
    coords = " ".join(f"{_fmt(x_scale(x))},{_fmt(y_scale(y))}" for x, y in points)
    return (f'<polyline points="{coords}" fill="none" stroke="{OVERLAY_COLOR}" '
            f'stroke-width="1.5" stroke-dasharray="{dash}"/>')


def _render_overlays(parts, series, spec, x_scale, y_scale, x_range, y_range) -> None:
    log_x = spec.x_scale == LOG10
    for overlay in spec.overlays:
        if isinstance(overlay, RequirementBox):
            x0, x1, y0, y1 = requirement_box_bounds(
                overlay, spec.x_key, spec.y_key, x_range, y_range)
            px0, px1 = x_scale(x0), x_scale(x1)
            py0, py1 = y_scale(y1), y_scale(y0)   # pixel y grows downward
            parts.append(
                f'<rect x="{_fmt(px0)}" y="{_fmt(py0)}" '
                f'width="{_fmt(px1 - px0)}" height="{_fmt(py1 - py0)}" '
                f'fill="none" stroke="{OVERLAY_COLOR}" stroke-width="1.5" '
                f'stroke-dasharray="2,3"/>')
        elif isinstance(overlay, JitterBound):
            points = jitter_overlay_points(overlay, spec.y_key, x_range, log_x)
            points = _clip_points(points, x_range, y_range)
            if points:
                parts.append(_polyline(points, x_scale, y_scale, "6,3"))
        elif isinstance(overlay, FittedTrendOverlay):
            points = trend_overlay_points(overlay.fit, x_range, log_x)
            points = _clip_points(points, x_range, y_range)
            if points:
                parts.append(_polyline(points, x_scale, y_scale, "5,4"))
        elif isinstance(overlay, ReferenceTrendOverlay):
            trend = REFERENCE_TRENDS.get(overlay.name)
            if trend is None:
                raise ValueError(f"unknown reference trend: {overlay.name!r}")
            anchor = (series.rows[0].x, series.rows[0].y)
            points = reference_overlay_points(trend, anchor, x_range, log_x)
            points = _clip_points(points, x_range, y_range)
            if points:
                parts.append(_polyline(points, x_scale, y_scale, "8,4"))
        else:
            raise ValueError(f"unsupported overlay: {overlay!r}")


def _render_markers(parts, series, x_scale, y_scale) -> None:
    labels = series.split_labels()
    color_of = {label: PALETTE[i % len(PALETTE)] for i, label in enumerate(labels)}
    for row in series.rows:
        color = color_of.get(row.split, PALETTE[0])
        parts.append(f'<circle cx="{_fmt(x_scale(row.x))}" cy="{_fmt(y_scale(row.y))}" '
                     f'r="3.5" fill="{color}" fill-opacity="0.75" '
                     f'stroke="#333333" stroke-width="0.5"/>')


def _render_legend(parts, series, g: Geometry) -> None:
    labels = series.split_labels()
    if not labels:
        return
    x = g.margin_left + 10
    y = g.margin_top + 14
    for i, label in enumerate(labels):
        color = PALETTE[i % len(PALETTE)]
        parts.append(f'<circle cx="{x}" cy="{y + i * 16}" r="4" fill="{color}"/>')
        parts.append(f'<text x="{x + 10}" y="{y + i * 16 + 4}" '
                     f'font-family="sans-serif" font-size="11">{escape(label)}</text>')
