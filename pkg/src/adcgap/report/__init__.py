"""Figure-reproduction artifacts: series CSV, SVG scatter plots, text reports."""

from .series import (
    FittedTrendOverlay,
    JitterBound,
    LINEAR,
    LOG10,
    PlotSpec,
    ReferenceTrendOverlay,
    RequirementBox,
    SeriesFile,
    SeriesRow,
    emit_series,
    series_to_csv,
)
from .svg import (
    Geometry,
    emit_scatter_svg,
    jitter_overlay_points,
    requirement_box_bounds,
)
from .tables import (
    cascade_table_csv,
    frontier_table_csv,
    issues_table_csv,
    metrics_table_csv,
    verdicts_table_csv,
)
from .text import (
    budget_text,
    density_text,
    gap_text,
    requirement_text,
    scenario_text,
    trend_text,
)

__all__ = [
    "FittedTrendOverlay", "JitterBound", "LINEAR", "LOG10", "PlotSpec",
    "ReferenceTrendOverlay", "RequirementBox", "SeriesFile", "SeriesRow",
    "emit_series", "series_to_csv",
    "Geometry", "emit_scatter_svg", "jitter_overlay_points",
    "requirement_box_bounds",
    "cascade_table_csv", "frontier_table_csv", "issues_table_csv",
    "metrics_table_csv", "verdicts_table_csv",
    "budget_text", "density_text", "gap_text", "requirement_text",
    "scenario_text", "trend_text",
]
