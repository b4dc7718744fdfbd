"""Survey analytics for high-speed data converters in area-constrained
wireless systems: derived metrics, budget cascades, Pareto frontiers,
scaling-law trends and feasibility gap reports."""

__version__ = "0.1.0"

from .dataset import (
    Dataset,
    ParseIssue,
    SurveyRecord,
    TransceiverRecord,
    filter_records,
    parse_converter_csv,
    parse_transceiver_csv,
)
from .metrics import DerivedMetrics, derive_all
from .budget import AllocationPolicy, BudgetCascade, PlatformSpec, cascade
from .frontier import Objective, pareto_frontier, yearly_envelope
from .trends import PowerLawFit, TrendFit, fit_doubling, fit_power_law
from .gap import RequirementSpec, evaluate_record, gap_report

__all__ = [
    "__version__",
    "Dataset", "ParseIssue", "SurveyRecord", "TransceiverRecord",
    "filter_records", "parse_converter_csv", "parse_transceiver_csv",
    "DerivedMetrics", "derive_all",
    "AllocationPolicy", "BudgetCascade", "PlatformSpec", "cascade",
    "Objective", "pareto_frontier", "yearly_envelope",
    "PowerLawFit", "TrendFit", "fit_doubling", "fit_power_law",
    "RequirementSpec", "evaluate_record", "gap_report",
]
