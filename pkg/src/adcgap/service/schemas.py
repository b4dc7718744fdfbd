"""Pydantic request/response models for the analytics service.

Wire field names follow the CSV schema conventions (power_w, fs_hz,
area_mm2, ...) so payloads and files read the same.  Responses that
correspond to output files carry them in ``artifacts`` keyed by file name;
clients write them verbatim.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class ParseIssueModel(BaseModel):
    row: int
    column: str
    severity: str
    message: str


class SurveyRecordModel(BaseModel):
    id: str
    year: int
    power_w: float
    fs_hz: float
    venue: Optional[str] = None
    architecture: Optional[str] = None
    tech_nm: Optional[float] = None
    sndr_db: Optional[float] = None
    enob: Optional[float] = None
    area_mm2: Optional[float] = None
    notes: Optional[str] = None


class TransceiverRecordModel(BaseModel):
    id: str
    year: int
    bitrate_bps: float
    power_w: float
    area_mm2: float


class HealthResponse(BaseModel):
    status: str
    version: str


# -- ingest -----------------------------------------------------------------

class IngestRequest(BaseModel):
    converter_csv: Optional[str] = None
    transceiver_csv: Optional[str] = None


class IngestResponse(BaseModel):
    converters: list[SurveyRecordModel] = Field(default_factory=list)
    transceivers: list[TransceiverRecordModel] = Field(default_factory=list)
    issues: list[ParseIssueModel] = Field(default_factory=list)
    artifacts: dict[str, str] = Field(default_factory=dict)


# -- metrics ------------------------------------------------------------------

class MetricsRequest(BaseModel):
    converter_csv: str
    osr: float = 1.0


class MetricsRow(BaseModel):
    id: str
    year: int
    enob: Optional[float] = None
    sndr_db: Optional[float] = None
    bandwidth_hz: float
    nyquist_hz: float
    single_bit_energy_j: float
    sampling_density_hz_mm2: Optional[float] = None
    schreier_fom_db: Optional[float] = None


class MetricsResponse(BaseModel):
    rows: list[MetricsRow]
    artifacts: dict[str, str] = Field(default_factory=dict)


# -- budget -------------------------------------------------------------------

class PlatformModel(BaseModel):
    chip_area_mm2: float = 450.0
    tdp_w: float = 210.0
    core_count: int = 100


class PolicyModel(BaseModel):
    compute_fraction: float = 1.0 / 3.0
    memory_fraction: float = 1.0 / 3.0
    noc_fraction: float = 1.0 / 3.0
    wireless_share_of_noc: float = 0.5
    conversion_share_of_wireless: float = 0.1
    target_datarate_bps: float = 100e9


class BudgetRequest(BaseModel):
    platform: PlatformModel = Field(default_factory=PlatformModel)
    policy: PolicyModel = Field(default_factory=PolicyModel)
    converter_csv: Optional[str] = None
    transceiver_csv: Optional[str] = None
    osr: float = 1.0


class CascadeModel(BaseModel):
    per_core_area_mm2: float
    per_core_power_w: float
    noc_area_mm2: float
    noc_power_w: float
    wireless_area_mm2: float
    wireless_power_w: float
    wireless_energy_per_bit_j: float
    converter_area_target_mm2: float
    converter_power_target_w: float
    converter_energy_per_bit_target_j: float


class DensityModel(BaseModel):
    ratio: float
    converter_id: str
    converter_density_hz_mm2: float
    transceiver_id: str
    transceiver_density_bps_mm2: float


class BudgetResponse(BaseModel):
    cascade: CascadeModel
    density: Optional[DensityModel] = None
    artifacts: dict[str, str] = Field(default_factory=dict)


# -- frontier -------------------------------------------------------------------

class ObjectiveModel(BaseModel):
    metric: str
    direction: str = "maximize"


class FrontierRequest(BaseModel):
    converter_csv: str
    objectives: list[ObjectiveModel]
    osr: float = 1.0


class FrontierResponse(BaseModel):
    ids: list[str]
    excluded: list[str]
    artifacts: dict[str, str] = Field(default_factory=dict)


# -- trend ----------------------------------------------------------------------

class TrendRequest(BaseModel):
    converter_csv: str
    metric: str
    axis: str = "year"
    selector: str = "yearly_best"
    direction: Optional[str] = None
    osr: float = 1.0
    threshold: Optional[float] = None
    goal: str = "at_most"
    anchor_year: Optional[float] = None
    anchor_value: Optional[float] = None


class TrendFitModel(BaseModel):
    kind: str                        # "doubling" | "power_law"
    r_squared: float
    n_points: int
    slope: Optional[float] = None
    intercept: Optional[float] = None
    reference_year: Optional[int] = None
    doubling_time_years: Optional[float] = None
    halving_time_years: Optional[float] = None
    exponent: Optional[float] = None
    log_coefficient: Optional[float] = None


class ProjectionModel(BaseModel):
    threshold: float
    goal: str
    year: Optional[float] = None
    unreachable: bool = False
    anchor_year: float
    anchor_value: float


class TrendResponse(BaseModel):
    fit: TrendFitModel
    projection: Optional[ProjectionModel] = None
    artifacts: dict[str, str] = Field(default_factory=dict)


# -- gap --------------------------------------------------------------------------

class RequirementModel(BaseModel):
    name: str
    min_bandwidth_hz: float
    min_nyquist_hz: float
    max_osr: float
    min_enob_bits: float
    max_area_mm2: float
    max_energy_per_bit_j: float


class ValueRangeModel(BaseModel):
    low: float
    high: float


class ScenarioModel(BaseModel):
    name: str
    transmission_range_cm: ValueRangeModel
    node_density_per_cm2: ValueRangeModel
    network_throughput_bps: ValueRangeModel
    latency_s: ValueRangeModel
    bit_error_rate: ValueRangeModel
    transceiver_energy_per_bit_j: ValueRangeModel
    transceiver_area_mm2: ValueRangeModel


class GapRequest(BaseModel):
    converter_csv: str
    spec_name: str = "table2-adc"
    spec: Optional[RequirementModel] = None
    osr: float = 1.0
    project: bool = False


class CriterionCountModel(BaseModel):
    passed: int
    failed: int
    unknown: int


class BestCandidateModel(BaseModel):
    id: str
    margin: float
    measured: float


class NearestMissModel(BaseModel):
    id: str
    shortfalls: int
    worst_margin: float


class VerdictModel(BaseModel):
    id: str
    overall: str
    outcomes: dict[str, str]
    margins: dict[str, Optional[float]]


class GapProjectionModel(BaseModel):
    criterion: str
    threshold: float
    year: Optional[float] = None
    unreachable: bool = False
    anchor_year: float
    anchor_value: float


class GapResponse(BaseModel):
    spec: RequirementModel
    osr: float
    n_records: int
    counts: dict[str, CriterionCountModel]
    best: dict[str, Optional[BestCandidateModel]]
    overall_passes: list[str]
    nearest_miss: Optional[NearestMissModel] = None
    verdicts: list[VerdictModel]
    projections: Optional[list[GapProjectionModel]] = None
    overall_year: Optional[float] = None
    artifacts: dict[str, str] = Field(default_factory=dict)


# -- plot ---------------------------------------------------------------------------

class PlotRequest(BaseModel):
    converter_csv: str
    x: str
    y: str
    x_scale: str = "linear"
    y_scale: str = "linear"
    selector: str = "all"                     # "all" | "yearly_best"
    direction: Optional[str] = None           # for yearly_best; default per metric
    split: Optional[str] = None
    jitter_overlays_s: list[float] = Field(default_factory=list)
    requirement_box: Optional[str] = None     # preset name
    reference_trends: list[str] = Field(default_factory=list)
    osr: float = 1.0
    title: Optional[str] = None
    width: int = 640
    height: int = 480


class PlotResponse(BaseModel):
    points: int
    series_csv: str
    svg: str
    artifacts: dict[str, str] = Field(default_factory=dict)


# -- presets --------------------------------------------------------------------------

class PresetListResponse(BaseModel):
    requirements: list[str]
    scenarios: list[str]


class PresetResponse(BaseModel):
    kind: str
    requirement: Optional[RequirementModel] = None
    scenario: Optional[ScenarioModel] = None
