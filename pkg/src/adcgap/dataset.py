"""Survey dataset ingestion, validation and filtering.

CSV schemas (header row required, comma separated, "." decimal, UTF-8,
LF or CRLF):

    converters:   id,year,venue,architecture,tech_nm,power_w,fs_hz,sndr_db,enob,area_mm2,notes
    transceivers: id,year,bitrate_bps,power_w,area_mm2

An empty cell is an absent optional field.  All quantities are held in
canonical units: hertz, watts, mm^2, dB, nanometers.  Display layers are
responsible for GHz/mW/pJ conversions.

Row-level invariant violations are fatal for that row only (the row is
skipped and reported); unknown extra columns are warnings.  A missing or
incomplete header aborts the whole document with :class:`CsvFormatError`.
"""

from __future__ import annotations

import csv
import io
import math
import operator
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable, Iterable, Optional, Union

CONVERTER_COLUMNS = (
    "id", "year", "venue", "architecture", "tech_nm",
    "power_w", "fs_hz", "sndr_db", "enob", "area_mm2", "notes",
)
TRANSCEIVER_COLUMNS = ("id", "year", "bitrate_bps", "power_w", "area_mm2")

# Architectures commonly used in converter surveys; anything else is kept
# verbatim (lowercased) but flagged with a warning.
KNOWN_ARCHITECTURES = frozenset(
    {"sar", "flash", "pipeline", "time-interleaved", "sigma-delta", "other"}
)

YEAR_MIN = 1970
YEAR_MAX = 2100

WARNING = "warning"
FATAL = "fatal"


class CsvFormatError(ValueError):
    """The document as a whole cannot be parsed (missing/invalid header)."""


class UnknownFieldError(ValueError):
    """A filter predicate referenced a field that records do not have."""

    def __init__(self, field_name: str):
        super().__init__(f"unknown record field: {field_name!r}")
        self.field_name = field_name


@dataclass(frozen=True)
class ParseIssue:
    """One problem found while parsing.

    ``row`` is the 1-based data-row ordinal (header excluded); header-level
    issues use row 0.  Fatal issues imply the row was excluded.
    """

    row: int
    column: str
    severity: str
    message: str


@dataclass(frozen=True)
class SurveyRecord:
    """One published converter design in canonical units."""

    id: str
    year: int
    power: float          # W
    sample_rate: float    # Hz (f_s)
    venue: Optional[str] = None
    architecture: Optional[str] = None
    tech_node: Optional[float] = None   # nm
    sndr: Optional[float] = None        # dB, high-frequency (near-Nyquist)
    enob: Optional[float] = None        # effective bits
    area: Optional[float] = None        # mm^2
    notes: Optional[str] = None

    @property
    def resolution_complete(self) -> bool:
        return self.sndr is not None or self.enob is not None


@dataclass(frozen=True)
class TransceiverRecord:
    """One published short-range transceiver design (antenna excluded)."""

    id: str
    year: int
    bitrate: float   # bit/s
    power: float     # W
    area: float      # mm^2


@dataclass(frozen=True)
class Provenance:
    source: str
    parsed_at: datetime


@dataclass(frozen=True)
class Dataset:
    """Immutable collection of survey records; safe to share across readers."""

    records: tuple[SurveyRecord, ...] = ()
    transceivers: tuple[TransceiverRecord, ...] = ()
    provenance: Optional[Provenance] = None

    def __len__(self) -> int:
        return len(self.records) + len(self.transceivers)


# ---------------------------------------------------------------------------
# Cell-level parsing helpers
# ---------------------------------------------------------------------------

def _clean(cell: Optional[str]) -> Optional[str]:
    if cell is None:
        return None
    cell = cell.strip()
    return cell or None


def _parse_float(raw: str, column: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{column} is not a number: {raw!r}")
    if not math.isfinite(value):
        raise ValueError(f"{column} must be finite: {raw!r}")
    return value


def _parse_positive(raw: str, column: str) -> float:
    value = _parse_float(raw, column)
    if value <= 0:
        raise ValueError(f"{column} must be positive: {raw!r}")
    return value


def _parse_year(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"year is not an integer: {raw!r}")
    if not YEAR_MIN <= value <= YEAR_MAX:
        raise ValueError(f"year out of range [{YEAR_MIN}, {YEAR_MAX}]: {value}")
    return value


def _check_header(header: Optional[list[str]], required: tuple[str, ...],
                  issues: list[ParseIssue]) -> list[str]:
    if header is None:
        raise CsvFormatError("document is empty: header row required")
    names = [h.strip() for h in header]
    missing = [c for c in required if c not in names]
    if missing:
        raise CsvFormatError(f"header is missing required columns: {', '.join(missing)}")
    for name in names:
        if name not in required:
            issues.append(ParseIssue(0, name, WARNING, f"unknown column {name!r} ignored"))
    return names


# ---------------------------------------------------------------------------
# Document parsing
# ---------------------------------------------------------------------------

def parse_converter_csv(text: str, source: str = "<string>") -> tuple[Dataset, list[ParseIssue]]:
    """Parse a converter survey CSV into an immutable :class:`Dataset`.

    Well-formed rows become records; rows violating an invariant yield a
    fatal :class:`ParseIssue` and are skipped.  Raises
    :class:`CsvFormatError` if the header is missing or incomplete.
    """
    issues: list[ParseIssue] = []
    reader = csv.reader(io.StringIO(text, newline=""))
    rows = list(reader)
    header = _check_header(rows[0] if rows else None, CONVERTER_COLUMNS, issues)
    records: list[SurveyRecord] = []
    seen_ids: set[str] = set()

    for row_no, row in enumerate(rows[1:], start=1):
        if not any(cell.strip() for cell in row):
            continue
        cells = dict(zip(header, (_clean(c) for c in row)))
        try:
            record = _converter_record(cells, row_no, issues)
        except ValueError as exc:
            issues.append(ParseIssue(row_no, _failing_column(exc), FATAL, str(exc)))
            continue
        if record.id in seen_ids:
            issues.append(ParseIssue(row_no, "id", FATAL, f"duplicate id {record.id!r}"))
            continue
        seen_ids.add(record.id)
        records.append(record)

    dataset = Dataset(
        records=tuple(records),
        provenance=Provenance(source, datetime.now(timezone.utc)),
    )
    return dataset, issues


def _failing_column(exc: ValueError) -> str:
    return str(exc).split(" ", 1)[0]


def _converter_record(cells: dict[str, Optional[str]], row_no: int,
                      issues: list[ParseIssue]) -> SurveyRecord:
    record_id = cells.get("id")
    if record_id is None:
        raise ValueError("id is required")
    for required in ("year", "power_w", "fs_hz"):
        if cells.get(required) is None:
            raise ValueError(f"{required} is required")

    architecture = cells.get("architecture")
    if architecture is not None:
        architecture = architecture.lower()
        if architecture not in KNOWN_ARCHITECTURES:
            issues.append(ParseIssue(
                row_no, "architecture", WARNING,
                f"architecture {architecture!r} is not a recognized class"))

    tech_node = cells.get("tech_nm")
    sndr = cells.get("sndr_db")
    enob = cells.get("enob")
    area = cells.get("area_mm2")

    record = SurveyRecord(
        id=record_id,
        year=_parse_year(cells["year"]),
        venue=cells.get("venue"),
        architecture=architecture,
        tech_node=None if tech_node is None else _parse_positive(tech_node, "tech_nm"),
        power=_parse_positive(cells["power_w"], "power_w"),
        sample_rate=_parse_positive(cells["fs_hz"], "fs_hz"),
        sndr=None if sndr is None else _parse_float(sndr, "sndr_db"),
        enob=None if enob is None else _parse_float(enob, "enob"),
        area=None if area is None else _parse_positive(area, "area_mm2"),
        notes=cells.get("notes"),
    )
    if not record.resolution_complete:
        issues.append(ParseIssue(
            row_no, "sndr_db", WARNING,
            f"record {record.id!r} has neither sndr_db nor enob "
            "(kept, but excluded from resolution-dependent analyses)"))
    return record


def parse_transceiver_csv(text: str, source: str = "<string>") -> tuple[Dataset, list[ParseIssue]]:
    """Parse a transceiver survey CSV; same policy as :func:`parse_converter_csv`."""
    issues: list[ParseIssue] = []
    reader = csv.reader(io.StringIO(text, newline=""))
    rows = list(reader)
    header = _check_header(rows[0] if rows else None, TRANSCEIVER_COLUMNS, issues)
    transceivers: list[TransceiverRecord] = []
    seen_ids: set[str] = set()

    for row_no, row in enumerate(rows[1:], start=1):
        if not any(cell.strip() for cell in row):
            continue
        cells = dict(zip(header, (_clean(c) for c in row)))
        try:
            record_id = cells.get("id")
            if record_id is None:
                raise ValueError("id is required")
            for required in ("year", "bitrate_bps", "power_w", "area_mm2"):
                if cells.get(required) is None:
                    raise ValueError(f"{required} is required")
            record = TransceiverRecord(
                id=record_id,
                year=_parse_year(cells["year"]),
                bitrate=_parse_positive(cells["bitrate_bps"], "bitrate_bps"),
                power=_parse_positive(cells["power_w"], "power_w"),
                area=_parse_positive(cells["area_mm2"], "area_mm2"),
            )
        except ValueError as exc:
            issues.append(ParseIssue(row_no, _failing_column(exc), FATAL, str(exc)))
            continue
        if record.id in seen_ids:
            issues.append(ParseIssue(row_no, "id", FATAL, f"duplicate id {record.id!r}"))
            continue
        seen_ids.add(record.id)
        transceivers.append(record)

    dataset = Dataset(
        transceivers=tuple(transceivers),
        provenance=Provenance(source, datetime.now(timezone.utc)),
    )
    return dataset, issues


# ---------------------------------------------------------------------------
# Serialization (canonical form; floats use shortest round-trip repr)
# ---------------------------------------------------------------------------

def _cell(value: Union[str, int, float, None]) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_converter_csv(dataset: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CONVERTER_COLUMNS)
    for r in dataset.records:
        writer.writerow([
            _cell(r.id), _cell(r.year), _cell(r.venue), _cell(r.architecture),
            _cell(r.tech_node), _cell(r.power), _cell(r.sample_rate),
            _cell(r.sndr), _cell(r.enob), _cell(r.area), _cell(r.notes),
        ])
    return out.getvalue()


def to_transceiver_csv(dataset: Dataset) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRANSCEIVER_COLUMNS)
    for t in dataset.transceivers:
        writer.writerow([
            _cell(t.id), _cell(t.year), _cell(t.bitrate), _cell(t.power), _cell(t.area),
        ])
    return out.getvalue()


# ---------------------------------------------------------------------------
# Filtering
# ---------------------------------------------------------------------------

_NUMERIC_FIELDS = frozenset(
    {"year", "power", "sample_rate", "tech_node", "sndr", "enob", "area"}
)
_STRING_FIELDS = frozenset({"id", "venue", "architecture", "notes"})

_OPERATORS: dict[str, Callable] = {
    "<=": operator.le,
    ">=": operator.ge,
    "!=": operator.ne,
    "==": operator.eq,
    "<": operator.lt,
    ">": operator.gt,
}


@dataclass(frozen=True)
class FieldCondition:
    """A single ``field <op> value`` predicate over record fields."""

    field: str
    op: str
    value: Union[float, str]

    def matches(self, record: SurveyRecord) -> bool:
        if self.field not in _NUMERIC_FIELDS | _STRING_FIELDS:
            raise UnknownFieldError(self.field)
        actual = getattr(record, self.field)
        if actual is None:
            return False
        return _OPERATORS[self.op](actual, self.value)


def parse_condition(text: str) -> FieldCondition:
    """Parse a condition like ``"year>=2014"`` or ``"architecture==sar"``."""
    for op in ("<=", ">=", "!=", "==", "<", ">"):
        if op in text:
            field_name, raw = text.split(op, 1)
            field_name = field_name.strip()
            raw = raw.strip()
            if field_name not in _NUMERIC_FIELDS | _STRING_FIELDS:
                raise UnknownFieldError(field_name)
            if field_name in _NUMERIC_FIELDS:
                value: Union[float, str] = float(raw)
            else:
                if op not in ("==", "!="):
                    raise ValueError(f"string field {field_name!r} supports only == and !=")
                value = raw
            return FieldCondition(field_name, op, value)
    raise ValueError(f"no comparison operator in condition: {text!r}")


def filter_records(dataset: Dataset,
                   conditions: Iterable[Union[FieldCondition, str]],
                   invert: bool = False) -> Dataset:
    """Return a new Dataset with the records satisfying all ``conditions``.

    ``invert=True`` returns the complement set, so that the filtered and
    inverted datasets always partition the input.  Records missing a
    referenced optional field do not satisfy the condition.
    """
    parsed = [c if isinstance(c, FieldCondition) else parse_condition(c)
              for c in conditions]
    for cond in parsed:
        if cond.field not in _NUMERIC_FIELDS | _STRING_FIELDS:
            raise UnknownFieldError(cond.field)
    selected = tuple(
        r for r in dataset.records
        if all(c.matches(r) for c in parsed) != invert
    )
    return Dataset(records=selected, transceivers=dataset.transceivers,
                   provenance=dataset.provenance)
