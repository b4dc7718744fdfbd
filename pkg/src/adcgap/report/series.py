"""Deterministic series extraction for figure reproduction.

A SeriesFile is the numeric content of one scatter plot: one row per
plotted point, stable row order, floats rendered with full round-trip
precision.  Re-running on identical inputs yields byte-identical CSV.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass
from typing import Optional, Union

from ..dataset import (
    Dataset,
    UnknownFieldError,
    _OPERATORS,
    to_converter_csv,
)
from ..frontier import EnvelopeSeries, _quiet_derive
from ..gap import RequirementSpec
from ..metrics import (
    UnknownMetricError,
    canonical_metric_key,
    metric_value,
)
from ..trends import PowerLawFit, TrendFit

LINEAR = "linear"
LOG10 = "log10"


@dataclass(frozen=True)
class JitterBound:
    """Aperture-jitter ceiling overlay for a given RMS jitter in seconds."""

    jitter_rms: float


@dataclass(frozen=True)
class RequirementBox:
    """Dotted box delimiting the region a requirement spec admits."""

    spec: RequirementSpec


@dataclass(frozen=True)
class ReferenceTrendOverlay:
    """Published tendency drawn through the first plotted point."""

    name: str


@dataclass(frozen=True)
class FittedTrendOverlay:
    """A trend fitted by this library, drawn across the x range."""

    fit: Union[TrendFit, PowerLawFit]


Overlay = Union[JitterBound, RequirementBox, ReferenceTrendOverlay, FittedTrendOverlay]


@dataclass(frozen=True)
class PlotSpec:
    x_key: str
    y_key: str
    x_scale: str = LINEAR
    y_scale: str = LINEAR
    overlays: tuple[Overlay, ...] = ()
    split: Optional[str] = None    # field name or condition like "enob<=4"
    title: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "x_key", canonical_metric_key(self.x_key))
        object.__setattr__(self, "y_key", canonical_metric_key(self.y_key))
        for name in ("x_scale", "y_scale"):
            if getattr(self, name) not in (LINEAR, LOG10):
                raise ValueError(f"{name} must be linear or log10")


@dataclass(frozen=True)
class SeriesRow:
    x: float
    y: float
    record_id: str
    year: int
    split: Optional[str] = None


@dataclass(frozen=True)
class SeriesFile:
    header: tuple[str, ...]
    rows: tuple[SeriesRow, ...]
    provenance: str

    def split_labels(self) -> tuple[str, ...]:
        return tuple(sorted({r.split for r in self.rows if r.split is not None}))


@dataclass(frozen=True)
class _SplitCondition:
    field: str
    op: str
    value: Union[float, str]

    @property
    def negated_text(self) -> str:
        flipped = {"<=": ">", ">=": "<", "<": ">=", ">": "<=", "==": "!=", "!=": "=="}
        rendered = f"{self.value:g}" if isinstance(self.value, float) else str(self.value)
        return f"{self.field}{flipped[self.op]}{rendered}"


def _parse_split(split: str) -> Optional[_SplitCondition]:
    """Split specs are either a bare field name or ``field <op> value``.

    Condition fields may be any metric key (so ``enob<=4`` classifies via
    the derived value even when the record stores only sndr).
    """
    for op in ("<=", ">=", "!=", "==", "<", ">"):
        if op in split:
            field_name, raw = split.split(op, 1)
            field_name = field_name.strip()
            raw = raw.strip()
            try:
                field_name = canonical_metric_key(field_name)
                value: Union[float, str] = float(raw)
            except UnknownMetricError:
                if field_name not in ("id", "venue", "architecture", "notes"):
                    raise UnknownFieldError(field_name)
                if op not in ("==", "!="):
                    raise ValueError(f"string field {field_name!r} supports only == and !=")
                value = raw
            return _SplitCondition(field_name, op, value)
    return None


def _split_value(record, derived, field_name: str):
    try:
        return metric_value(record, derived, field_name)
    except UnknownMetricError:
        if field_name in record.__dataclass_fields__:
            return getattr(record, field_name)
        raise UnknownFieldError(field_name)


def _split_label(record, derived, split: str) -> str:
    condition = _parse_split(split)
    if condition is not None:
        value = _split_value(record, derived, condition.field)
        if value is None:
            return "unknown"
        return split if _OPERATORS[condition.op](value, condition.value) \
            else condition.negated_text
    value = _split_value(record, derived, split)
    return "unknown" if value is None else str(value)


def emit_series(data: Union[Dataset, EnvelopeSeries], spec: PlotSpec,
                osr: float = 1.0) -> SeriesFile:
    """Extract the plotted points for ``spec`` from a dataset or envelope.

    Records that do not resolve both keys are skipped.  Rows are ordered by
    (year, id).  Raises ValueError when nothing remains to plot.
    """
    rows: list[SeriesRow] = []
    if isinstance(data, EnvelopeSeries):
        if spec.x_key != "year":
            raise ValueError("envelope series plot on the year axis only")
        if spec.y_key != data.metric_key:
            raise ValueError(f"envelope carries {data.metric_key!r}, "
                             f"plot spec asks for {spec.y_key!r}")
        for point in data.points:
            rows.append(SeriesRow(x=float(point.year), y=point.value,
                                  record_id=point.record_id, year=point.year))
        dataset_hash = hashlib.sha256(
            ",".join(f"{p.year}:{p.value!r}:{p.record_id}" for p in data.points)
            .encode("utf-8")).hexdigest()
    else:
        for record in data.records:
            derived = _quiet_derive(record, osr)
            x = metric_value(record, derived, spec.x_key)
            y = metric_value(record, derived, spec.y_key)
            if x is None or y is None:
                continue
            label = _split_label(record, derived, spec.split) if spec.split else None
            rows.append(SeriesRow(x=x, y=y, record_id=record.id,
                                  year=record.year, split=label))
        dataset_hash = hashlib.sha256(to_converter_csv(data).encode("utf-8")).hexdigest()

    if not rows:
        raise ValueError(f"nothing to plot for x={spec.x_key} y={spec.y_key}")
    rows.sort(key=lambda r: (r.year, r.record_id))

    header = (spec.x_key, spec.y_key, "id")
    if "year" not in (spec.x_key, spec.y_key):
        header = header + ("year",)
    if spec.split:
        header = header + ("split",)
    provenance = (f"x={spec.x_key} y={spec.y_key} osr={osr!r} "
                  f"split={spec.split or '-'} dataset_sha256={dataset_hash}")
    return SeriesFile(header=header, rows=tuple(rows), provenance=provenance)


def series_to_csv(series: SeriesFile) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(series.header)
    for row in series.rows:
        cells = []
        for position, column in enumerate(series.header):
            if position == 0:
                cells.append(repr(row.x))
            elif position == 1:
                cells.append(repr(row.y))
            elif column == "id":
                cells.append(row.record_id)
            elif column == "year":
                cells.append(str(row.year))
            else:
                cells.append(row.split if row.split is not None else "")
        writer.writerow(cells)
    return out.getvalue()
