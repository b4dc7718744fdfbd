"""Human-readable text reports (4 significant digits, display units)."""

from __future__ import annotations

from typing import Optional

from ..budget import AllocationPolicy, BudgetCascade, DensityComparison, PlatformSpec
from ..gap import (
    CRITERIA,
    FeasibilityAssessment,
    GapReport,
    RequirementSpec,
    ScenarioSpec,
)
from ..trends import PowerLawFit, TrendFit
from ..units import format_quantity, sig4


def budget_text(platform: PlatformSpec, policy: AllocationPolicy,
                result: BudgetCascade) -> str:
    rate = policy.target_datarate
    lines = [
        "budget cascade",
        "==============",
        f"platform: {sig4(platform.chip_area)} mm2 chip, {sig4(platform.tdp)} W TDP, "
        f"{platform.core_count} cores",
        f"policy: noc fraction {sig4(policy.noc_fraction)}, wireless share "
        f"{sig4(policy.wireless_share_of_noc)}, conversion share "
        f"{sig4(policy.conversion_share_of_wireless)}, "
        f"target datarate {format_quantity(rate, 'bandwidth').replace('GHz', 'Gb/s')}",
        "",
        f"per core:   {sig4(result.per_core_area)} mm2, {format_quantity(result.per_core_power, 'power')}",
        f"noc:        {sig4(result.noc_area)} mm2, {format_quantity(result.noc_power, 'power')}",
        f"wireless:   {sig4(result.wireless_area)} mm2, {format_quantity(result.wireless_power, 'power')}, "
        f"{format_quantity(result.wireless_energy_per_bit, 'single_bit_energy')}",
        f"converter:  {sig4(result.converter_area_target)} mm2, "
        f"{format_quantity(result.converter_power_target, 'power')}, "
        f"{format_quantity(result.converter_energy_per_bit_target, 'single_bit_energy')}",
        "",
        "note: the requirement preset 'table2-adc' keeps the rounded targets",
        "(0.1 mm2, 1 pJ/bit); the cascade output above is the exact chain.",
    ]
    return "\n".join(lines) + "\n"


def density_text(comparison: DensityComparison) -> str:
    lines = [
        "area-efficiency comparison",
        "==========================",
        f"best converter sampling density:  {format_quantity(comparison.converter_density, 'sampling_density')} "
        f"({comparison.converter_id})",
        f"best transceiver bitrate density: {sig4(comparison.transceiver_density / 1e9)} Gb/s/mm2 "
        f"({comparison.transceiver_id})",
        f"ratio (converter / transceiver):  {sig4(comparison.ratio)}x",
    ]
    return "\n".join(lines) + "\n"


def trend_text(fit, projection: Optional[dict] = None) -> str:
    lines = ["trend fit", "========="]
    if isinstance(fit, TrendFit):
        lines.append(f"slope: {sig4(fit.slope)} log2/year "
                     f"(reference year {fit.reference_year}, intercept {sig4(fit.intercept)})")
        if fit.doubling_time is not None:
            lines.append(f"doubling time: {sig4(fit.doubling_time)} years")
        if fit.halving_time is not None:
            lines.append(f"halving time: {sig4(fit.halving_time)} years")
    elif isinstance(fit, PowerLawFit):
        lines.append(f"power-law exponent: {sig4(fit.exponent)} "
                     f"(log10 prefactor {sig4(fit.log_coefficient)})")
    lines.append(f"r^2: {sig4(fit.r_squared)} over {fit.n_points} points")
    if projection is not None:
        if projection.get("year") is not None:
            lines.append(
                f"threshold {sig4(projection['threshold'])} reached around "
                f"{projection['year']:.1f} "
                f"(anchor {projection['anchor_year']:.0f}, {sig4(projection['anchor_value'])})")
        else:
            lines.append(
                f"threshold {sig4(projection['threshold'])} unreachable along this trend")
    return "\n".join(lines) + "\n"


def gap_text(report: GapReport,
             assessment: Optional[FeasibilityAssessment] = None) -> str:
    lines = [
        f"gap report vs '{report.spec.name}' (osr {sig4(report.osr)}, "
        f"{report.n_records} records)",
        "=" * 60,
        "",
        "criterion     pass  fail  unknown  best candidate",
    ]
    for name in CRITERIA:
        counts = report.counts[name]
        best = report.best[name]
        best_txt = (f"{best.record_id} (margin {sig4(best.margin)})"
                    if best else "-")
        lines.append(f"{name:<13} {counts.passed:>4}  {counts.failed:>4}  "
                     f"{counts.unknown:>7}  {best_txt}")
    lines.append("")
    if report.overall_passes:
        lines.append(f"records passing every criterion: {', '.join(report.overall_passes)}")
    else:
        lines.append("records passing every criterion: none")
    if report.nearest_miss is not None:
        nm = report.nearest_miss
        lines.append(f"nearest miss: {nm.record_id} "
                     f"({nm.shortfalls} criterion shortfall(s), "
                     f"worst margin {sig4(nm.worst_margin)})")
    if assessment is not None:
        lines.append("")
        lines.append("feasibility projections")
        lines.append("-----------------------")
        for p in assessment.projections:
            if p.unreachable:
                lines.append(f"{p.criterion}: unreachable along the fitted trend")
            else:
                lines.append(
                    f"{p.criterion}: threshold {sig4(p.threshold)} around {p.year:.1f} "
                    f"(anchored {p.anchor_year:.0f} at {sig4(p.anchor_value)})")
        if assessment.overall_year is not None:
            lines.append(f"overall feasibility year: {assessment.overall_year:.1f}")
    return "\n".join(lines) + "\n"


def scenario_text(spec: ScenarioSpec) -> str:
    rows = [
        ("transmission range", spec.transmission_range_cm, "cm", 1.0),
        ("node density", spec.node_density_per_cm2, "nodes/cm2", 1.0),
        ("network throughput", spec.network_throughput_bps, "Gb/s", 1e9),
        ("latency", spec.latency_s, "ns", 1e-9),
        ("bit error rate", spec.bit_error_rate, "", 1.0),
        ("transceiver energy", spec.transceiver_energy_per_bit, "pJ/bit", 1e-12),
        ("transceiver area", spec.transceiver_area_mm2, "mm2", 1.0),
    ]
    lines = [f"scenario envelope '{spec.name}'", "=" * 30]
    for label, value_range, unit, scale in rows:
        low, high = value_range.low / scale, value_range.high / scale
        if low == high:
            span = sig4(low)
        else:
            span = f"{sig4(low)} - {sig4(high)}"
        lines.append(f"{label:<20} {span} {unit}".rstrip())
    return "\n".join(lines) + "\n"


def requirement_text(spec: RequirementSpec) -> str:
    lines = [
        f"requirement spec '{spec.name}'",
        "=" * 30,
        f"signal bandwidth  >= {format_quantity(spec.min_bandwidth, 'bandwidth')}",
        f"nyquist rate      >= {format_quantity(spec.min_nyquist, 'nyquist_rate')}",
        f"oversampling      <= {sig4(spec.max_osr)}",
        f"enob              >= {sig4(spec.min_enob)} bits",
        f"area              <= {sig4(spec.max_area)} mm2",
        f"energy            <= {format_quantity(spec.max_energy_per_bit, 'single_bit_energy')}",
    ]
    return "\n".join(lines) + "\n"
