"""Requirement evaluation, gap reports and feasibility projections.

Verdicts are pure functions of (record metrics, requirement spec).  All
thresholds are inclusive.  Criterion margins are orientation-normalized so
that a margin >= 1 always means pass, whichever way the threshold points.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from .dataset import Dataset, SurveyRecord
from .metrics import DerivedMetrics, IncompleteRecordWarning, derive_all
from .trends import AT_LEAST, AT_MOST, TrendFit, threshold_year

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"

# Evaluation order is also the reporting order.
CRITERIA = ("bandwidth", "nyquist", "resolution", "area", "energy", "oversampling")

# Whether a criterion caps its metric from above or demands a floor.
CRITERION_GOALS = {
    "bandwidth": AT_LEAST,
    "nyquist": AT_LEAST,
    "resolution": AT_LEAST,
    "area": AT_MOST,
    "energy": AT_MOST,
    "oversampling": AT_MOST,
}

# Metric fitted when projecting a failing criterion forward in time.
CRITERION_METRICS = {
    "bandwidth": "bandwidth",
    "nyquist": "nyquist_rate",
    "resolution": "enob",
    "area": "area",
    "energy": "single_bit_energy",
}


@dataclass(frozen=True)
class RequirementSpec:
    """Threshold set a candidate converter is judged against."""

    name: str
    min_bandwidth: float        # Hz
    min_nyquist: float          # Hz
    max_osr: float
    min_enob: float             # bits
    max_area: float             # mm^2
    max_energy_per_bit: float   # J/bit

    def __post_init__(self):
        for field_name in ("min_bandwidth", "min_nyquist", "max_osr",
                           "min_enob", "max_area", "max_energy_per_bit"):
            if getattr(self, field_name) <= 0:
                raise ValueError(f"{field_name} must be positive")

    def threshold(self, criterion: str) -> float:
        return {
            "bandwidth": self.min_bandwidth,
            "nyquist": self.min_nyquist,
            "resolution": self.min_enob,
            "area": self.max_area,
            "energy": self.max_energy_per_bit,
            "oversampling": self.max_osr,
        }[criterion]


@dataclass(frozen=True)
class ValueRange:
    low: float
    high: float

    def __post_init__(self):
        if self.low > self.high:
            raise ValueError(f"range low {self.low} exceeds high {self.high}")


@dataclass(frozen=True)
class ScenarioSpec:
    """Scenario-level envelope carried for reporting only; no converter
    criterion is derived from it."""

    name: str
    transmission_range_cm: ValueRange
    node_density_per_cm2: ValueRange
    network_throughput_bps: ValueRange
    latency_s: ValueRange
    bit_error_rate: ValueRange
    transceiver_energy_per_bit: ValueRange    # J/bit
    transceiver_area_mm2: ValueRange


# Converter requirement presets.  The demand-side "ENOB <= 4 bits" becomes a
# capability floor when testing a device; a one-bit variant is kept alongside
# because the scenario may need as little as a single bit per sample.
TABLE2_ADC = RequirementSpec(
    name="table2-adc",
    min_bandwidth=10e9,
    min_nyquist=20e9,
    max_osr=4.0,
    min_enob=4.0,
    max_area=0.1,
    max_energy_per_bit=1e-12,
)

TABLE2_ADC_ENOB1 = replace(TABLE2_ADC, name="table2-adc-enob1", min_enob=1.0)

REQUIREMENT_PRESETS = {
    TABLE2_ADC.name: TABLE2_ADC,
    TABLE2_ADC_ENOB1.name: TABLE2_ADC_ENOB1,
}

TABLE1_SCENARIO = ScenarioSpec(
    name="table1-scenario",
    transmission_range_cm=ValueRange(0.1, 10.0),
    node_density_per_cm2=ValueRange(10.0, 1000.0),
    network_throughput_bps=ValueRange(10e9, 100e9),
    latency_s=ValueRange(1e-9, 100e-9),
    bit_error_rate=ValueRange(1e-15, 1e-15),
    transceiver_energy_per_bit=ValueRange(1e-12, 10e-12),
    transceiver_area_mm2=ValueRange(0.01, 1.0),
)

SCENARIO_PRESETS = {TABLE1_SCENARIO.name: TABLE1_SCENARIO}


@dataclass(frozen=True)
class CriterionResult:
    outcome: str                     # pass | fail | unknown
    margin: Optional[float]          # normalized, >= 1 means pass; None if unknown
    measured: Optional[float]
    threshold: float

    @property
    def exceedance(self) -> Optional[float]:
        """How far past the threshold a failing value sits (1/margin)."""
        if self.margin is None or self.margin == 0:
            return None
        return 1.0 / self.margin


@dataclass(frozen=True)
class RecordVerdict:
    record_id: str
    criteria: Mapping[str, CriterionResult]
    overall_pass: bool

    def failures(self) -> tuple[str, ...]:
        return tuple(c for c in CRITERIA if self.criteria[c].outcome == FAIL)

    def unknowns(self) -> tuple[str, ...]:
        return tuple(c for c in CRITERIA if self.criteria[c].outcome == UNKNOWN)


def _criterion(measured: Optional[float], threshold: float, goal: str) -> CriterionResult:
    if measured is None:
        return CriterionResult(UNKNOWN, None, None, threshold)
    margin = (threshold / measured) if goal == AT_MOST else (measured / threshold)
    outcome = PASS if margin >= 1.0 else FAIL
    return CriterionResult(outcome, margin, measured, threshold)


def evaluate_record(record: SurveyRecord, spec: RequirementSpec,
                    osr: float = 1.0,
                    metrics: Optional[DerivedMetrics] = None) -> RecordVerdict:
    """Judge one record against a requirement spec.

    Missing inputs produce an ``unknown`` outcome for the affected criterion,
    which never counts as a pass.
    """
    if metrics is None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IncompleteRecordWarning)
            metrics = derive_all(record, osr)

    measured = {
        "bandwidth": metrics.bandwidth,
        "nyquist": metrics.nyquist_rate,
        "resolution": metrics.enob,
        "area": record.area,
        "energy": metrics.single_bit_energy,
        "oversampling": osr,
    }
    criteria = {
        name: _criterion(measured[name], spec.threshold(name), CRITERION_GOALS[name])
        for name in CRITERIA
    }
    overall = all(criteria[name].outcome == PASS for name in CRITERIA)
    return RecordVerdict(record_id=record.id, criteria=criteria, overall_pass=overall)


@dataclass(frozen=True)
class CriterionCounts:
    passed: int
    failed: int
    unknown: int

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.unknown


@dataclass(frozen=True)
class BestCandidate:
    record_id: str
    margin: float
    measured: float


@dataclass(frozen=True)
class NearestMiss:
    record_id: str
    shortfalls: int          # failed + unknown criteria
    worst_margin: float      # smallest known margin


@dataclass(frozen=True)
class GapReport:
    spec: RequirementSpec
    osr: float
    n_records: int
    counts: Mapping[str, CriterionCounts]
    best: Mapping[str, Optional[BestCandidate]]
    overall_passes: tuple[str, ...]
    nearest_miss: Optional[NearestMiss]
    verdicts: tuple[RecordVerdict, ...]

    def failing_criteria(self) -> tuple[str, ...]:
        """Criteria no surveyed record meets."""
        return tuple(c for c in CRITERIA if self.counts[c].passed == 0)


def gap_report(dataset: Dataset, spec: RequirementSpec, osr: float = 1.0) -> GapReport:
    """Aggregate per-record verdicts over the dataset.

    The nearest miss is the non-passing record with the fewest shortfalls
    (failed or unknown criteria), ties broken by the largest worst-margin
    and then by id.
    """
    if not dataset.records:
        raise ValueError("gap report requires a non-empty dataset")

    verdicts = tuple(evaluate_record(r, spec, osr) for r in dataset.records)

    counts = {}
    best: dict[str, Optional[BestCandidate]] = {}
    for name in CRITERIA:
        outcomes = [v.criteria[name].outcome for v in verdicts]
        counts[name] = CriterionCounts(
            passed=outcomes.count(PASS),
            failed=outcomes.count(FAIL),
            unknown=outcomes.count(UNKNOWN),
        )
        candidates = [(v.criteria[name].margin, v.record_id, v.criteria[name].measured)
                      for v in verdicts if v.criteria[name].margin is not None]
        if candidates:
            # largest margin wins; equal margins go to the smallest id
            margin, record_id, measured = min(candidates,
                                              key=lambda c: (-c[0], c[1]))
            best[name] = BestCandidate(record_id=record_id, margin=margin, measured=measured)
        else:
            best[name] = None

    passes = tuple(v.record_id for v in verdicts if v.overall_pass)

    nearest: Optional[NearestMiss] = None
    misses = [v for v in verdicts if not v.overall_pass]
    if misses:
        def miss_key(v: RecordVerdict):
            known = [c.margin for c in v.criteria.values() if c.margin is not None]
            worst = min(known) if known else 0.0
            return (len(v.failures()) + len(v.unknowns()), -worst, v.record_id)

        v = min(misses, key=miss_key)
        known = [c.margin for c in v.criteria.values() if c.margin is not None]
        nearest = NearestMiss(record_id=v.record_id,
                              shortfalls=len(v.failures()) + len(v.unknowns()),
                              worst_margin=min(known) if known else 0.0)

    return GapReport(spec=spec, osr=osr, n_records=len(dataset.records),
                     counts=counts, best=best, overall_passes=passes,
                     nearest_miss=nearest, verdicts=verdicts)


@dataclass(frozen=True)
class CriterionProjection:
    criterion: str
    anchor_year: float
    anchor_value: float
    threshold: float
    year: Optional[float]      # None when the trend moves away
    unreachable: bool


@dataclass(frozen=True)
class FeasibilityAssessment:
    projections: tuple[CriterionProjection, ...]
    overall_year: Optional[float]   # latest projected year; None if any unreachable


def feasibility_assessment(report: GapReport,
                           fits: Mapping[str, TrendFit],
                           anchors: Mapping[str, tuple[float, float]],
                           ) -> FeasibilityAssessment:
    """Project when each supplied criterion's trend reaches its threshold.

    ``fits`` and ``anchors`` are keyed by criterion name; the caller chooses
    which criteria to project (typically those no record passes).  The
    overall feasibility year is the latest criterion year.
    """
    projections = []
    overall: Optional[float] = None
    any_unreachable = False
    for criterion in sorted(fits):
        if criterion not in CRITERION_GOALS:
            raise ValueError(f"unknown criterion: {criterion!r}")
        if criterion not in anchors:
            raise ValueError(f"no anchor supplied for criterion {criterion!r}")
        anchor = anchors[criterion]
        threshold = report.spec.threshold(criterion)
        year = threshold_year(fits[criterion], anchor, threshold,
                              goal=CRITERION_GOALS[criterion])
        unreachable = year is None
        any_unreachable = any_unreachable or unreachable
        projections.append(CriterionProjection(
            criterion=criterion, anchor_year=anchor[0], anchor_value=anchor[1],
            threshold=threshold, year=year, unreachable=unreachable))
        if year is not None and (overall is None or year > overall):
            overall = year

    return FeasibilityAssessment(
        projections=tuple(projections),
        overall_year=None if any_unreachable else overall,
    )
