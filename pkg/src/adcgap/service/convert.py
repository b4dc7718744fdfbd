"""Conversions between core dataclasses and wire models."""

from __future__ import annotations

from typing import Optional

from ..budget import BudgetCascade
from ..dataset import Dataset
from ..frontier import _quiet_derive
from ..gap import CRITERIA, FeasibilityAssessment, GapReport, RequirementSpec, ScenarioSpec
from ..trends import PowerLawFit, TrendFit
from . import schemas


def to_record_models(dataset: Dataset) -> list[schemas.SurveyRecordModel]:
    return [
        schemas.SurveyRecordModel(
            id=r.id, year=r.year, power_w=r.power, fs_hz=r.sample_rate,
            venue=r.venue, architecture=r.architecture, tech_nm=r.tech_node,
            sndr_db=r.sndr, enob=r.enob, area_mm2=r.area, notes=r.notes)
        for r in dataset.records
    ]


def to_transceiver_models(dataset: Dataset) -> list[schemas.TransceiverRecordModel]:
    return [
        schemas.TransceiverRecordModel(
            id=t.id, year=t.year, bitrate_bps=t.bitrate, power_w=t.power,
            area_mm2=t.area)
        for t in dataset.transceivers
    ]


def derive_metrics_rows(dataset: Dataset, osr: float) -> list[schemas.MetricsRow]:
    rows = []
    for record in dataset.records:
        m = _quiet_derive(record, osr)
        rows.append(schemas.MetricsRow(
            id=record.id, year=record.year, enob=m.enob, sndr_db=m.sndr,
            bandwidth_hz=m.bandwidth, nyquist_hz=m.nyquist_rate,
            single_bit_energy_j=m.single_bit_energy,
            sampling_density_hz_mm2=m.sampling_density,
            schreier_fom_db=m.schreier_fom))
    return rows


def to_cascade_model(result: BudgetCascade) -> schemas.CascadeModel:
    return schemas.CascadeModel(
        per_core_area_mm2=result.per_core_area,
        per_core_power_w=result.per_core_power,
        noc_area_mm2=result.noc_area,
        noc_power_w=result.noc_power,
        wireless_area_mm2=result.wireless_area,
        wireless_power_w=result.wireless_power,
        wireless_energy_per_bit_j=result.wireless_energy_per_bit,
        converter_area_target_mm2=result.converter_area_target,
        converter_power_target_w=result.converter_power_target,
        converter_energy_per_bit_target_j=result.converter_energy_per_bit_target)


def to_fit_model(fit) -> schemas.TrendFitModel:
    if isinstance(fit, TrendFit):
        return schemas.TrendFitModel(
            kind="doubling", r_squared=fit.r_squared, n_points=fit.n_points,
            slope=fit.slope, intercept=fit.intercept,
            reference_year=fit.reference_year,
            doubling_time_years=fit.doubling_time,
            halving_time_years=fit.halving_time)
    assert isinstance(fit, PowerLawFit)
    return schemas.TrendFitModel(
        kind="power_law", r_squared=fit.r_squared, n_points=fit.n_points,
        exponent=fit.exponent, log_coefficient=fit.log_coefficient)


def to_requirement_model(spec: RequirementSpec) -> schemas.RequirementModel:
    return schemas.RequirementModel(
        name=spec.name,
        min_bandwidth_hz=spec.min_bandwidth,
        min_nyquist_hz=spec.min_nyquist,
        max_osr=spec.max_osr,
        min_enob_bits=spec.min_enob,
        max_area_mm2=spec.max_area,
        max_energy_per_bit_j=spec.max_energy_per_bit)


def to_requirement_spec(model: schemas.RequirementModel) -> RequirementSpec:
    return RequirementSpec(
        name=model.name,
        min_bandwidth=model.min_bandwidth_hz,
        min_nyquist=model.min_nyquist_hz,
        max_osr=model.max_osr,
        min_enob=model.min_enob_bits,
        max_area=model.max_area_mm2,
        max_energy_per_bit=model.max_energy_per_bit_j)


def to_scenario_model(spec: ScenarioSpec) -> schemas.ScenarioModel:
    def vr(value_range):
        return schemas.ValueRangeModel(low=value_range.low, high=value_range.high)

    return schemas.ScenarioModel(
        name=spec.name,
        transmission_range_cm=vr(spec.transmission_range_cm),
        node_density_per_cm2=vr(spec.node_density_per_cm2),
        network_throughput_bps=vr(spec.network_throughput_bps),
        latency_s=vr(spec.latency_s),
        bit_error_rate=vr(spec.bit_error_rate),
        transceiver_energy_per_bit_j=vr(spec.transceiver_energy_per_bit),
        transceiver_area_mm2=vr(spec.transceiver_area_mm2))


def to_gap_response(report: GapReport,
                    assessment: Optional[FeasibilityAssessment],
                    artifacts: dict[str, str]) -> schemas.GapResponse:
    counts = {
        name: schemas.CriterionCountModel(
            passed=report.counts[name].passed,
            failed=report.counts[name].failed,
            unknown=report.counts[name].unknown)
        for name in CRITERIA
    }
    best = {
        name: None if report.best[name] is None else schemas.BestCandidateModel(
            id=report.best[name].record_id,
            margin=report.best[name].margin,
            measured=report.best[name].measured)
        for name in CRITERIA
    }
    verdicts = [
        schemas.VerdictModel(
            id=v.record_id,
            overall="pass" if v.overall_pass else "fail",
            outcomes={name: v.criteria[name].outcome for name in CRITERIA},
            margins={name: v.criteria[name].margin for name in CRITERIA})
        for v in report.verdicts
    ]
    nearest = None
    if report.nearest_miss is not None:
        nearest = schemas.NearestMissModel(
            id=report.nearest_miss.record_id,
            shortfalls=report.nearest_miss.shortfalls,
            worst_margin=report.nearest_miss.worst_margin)
    projections = None
    overall_year = None
    if assessment is not None:
        projections = [
            schemas.GapProjectionModel(
                criterion=p.criterion, threshold=p.threshold, year=p.year,
                unreachable=p.unreachable, anchor_year=p.anchor_year,
                anchor_value=p.anchor_value)
            for p in assessment.projections
        ]
        overall_year = assessment.overall_year
    return schemas.GapResponse(
        spec=to_requirement_model(report.spec), osr=report.osr,
        n_records=report.n_records, counts=counts, best=best,
        overall_passes=list(report.overall_passes), nearest_miss=nearest,
        verdicts=verdicts, projections=projections, overall_year=overall_year,
        artifacts=artifacts)
