"""Display-unit conversions and significant-digit formatting.

Stored values are canonical (Hz, W, J, mm^2); reports and axis labels use
the units the field's community plots in.  Display rounding is fixed at 4
significant digits; files carry full precision.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DisplayUnit:
    label: str
    scale: float     # canonical units per display unit


DISPLAY_UNITS = {
    "year": DisplayUnit("", 1.0),
    "power": DisplayUnit("mW", 1e-3),
    "sample_rate": DisplayUnit("GS/s", 1e9),
    "tech_node": DisplayUnit("nm", 1.0),
    "area": DisplayUnit("mm2", 1.0),
    "sndr": DisplayUnit("dB", 1.0),
    "enob": DisplayUnit("bits", 1.0),
    "bandwidth": DisplayUnit("GHz", 1e9),
    "nyquist_rate": DisplayUnit("GHz", 1e9),
    "single_bit_energy": DisplayUnit("pJ/bit", 1e-12),
    "sampling_density": DisplayUnit("GHz/mm2", 1e9),
    "schreier_fom": DisplayUnit("dB", 1.0),
    "speed_resolution": DisplayUnit("GHz", 1e9),
}


def sig4(value: float) -> str:
    """Format with 4 significant digits."""
    return f"{value:.4g}"


def display_value(value: float, metric_key: str) -> float:
    unit = DISPLAY_UNITS.get(metric_key)
    return value / unit.scale if unit else value


def format_quantity(value: float, metric_key: str) -> str:
    """Render a canonical value in display units, e.g. 1.2e10 Hz -> '12 GHz'."""
    unit = DISPLAY_UNITS.get(metric_key)
    if unit is None or not unit.label:
        return sig4(value)
    return f"{sig4(value / unit.scale)} {unit.label}"


def axis_label(metric_key: str) -> str:
    unit = DISPLAY_UNITS.get(metric_key)
    name = metric_key.replace("_", " ")
    if unit is None or not unit.label:
        return name
    return f"{name} [{unit.label}]"
