"""CSV artifact builders (full precision, deterministic row order)."""

from __future__ import annotations

import csv
import io
from typing import Iterable, Optional, Sequence

from ..dataset import Dataset, ParseIssue
from ..frontier import ParetoResult, _quiet_derive
from ..gap import CRITERIA, GapReport
from ..metrics import metric_value


def _write_rows(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return out.getvalue()


def _num(value: Optional[float]) -> str:
    return "" if value is None else repr(value)


def metrics_table_csv(dataset: Dataset, osr: float = 1.0) -> str:
    """Per-record derived metrics in dataset order."""
    header = ("id", "year", "enob", "sndr_db", "bandwidth_hz", "nyquist_hz",
              "single_bit_energy_j", "sampling_density_hz_mm2", "schreier_fom_db")
    rows = []
    for record in dataset.records:
        m = _quiet_derive(record, osr)
        rows.append((record.id, str(record.year), _num(m.enob), _num(m.sndr),
                     _num(m.bandwidth), _num(m.nyquist_rate),
                     _num(m.single_bit_energy), _num(m.sampling_density),
                     _num(m.schreier_fom)))
    return _write_rows(header, rows)


def issues_table_csv(issues: Sequence[ParseIssue]) -> str:
    header = ("row", "column", "severity", "message")
    rows = [(str(i.row), i.column, i.severity, i.message) for i in issues]
    return _write_rows(header, rows)


def frontier_table_csv(dataset: Dataset, result: ParetoResult,
                       objective_keys: Sequence[str], osr: float = 1.0) -> str:
    """Frontier members with their objective values, in frontier order."""
    by_id = {r.id: r for r in dataset.records}
    header = ("id", "year") + tuple(objective_keys)
    rows = []
    for record_id in result.ids:
        record = by_id[record_id]
        derived = _quiet_derive(record, osr)
        values = [_num(metric_value(record, derived, k)) for k in objective_keys]
        rows.append((record.id, str(record.year), *values))
    return _write_rows(header, rows)


def verdicts_table_csv(report: GapReport) -> str:
    header = ("id", "overall") + tuple(
        f"{name}_{suffix}" for name in CRITERIA for suffix in ("outcome", "margin"))
    rows = []
    for verdict in report.verdicts:
        cells = [verdict.record_id, "pass" if verdict.overall_pass else "fail"]
        for name in CRITERIA:
            criterion = verdict.criteria[name]
            cells.append(criterion.outcome)
            cells.append(_num(criterion.margin))
        rows.append(cells)
    return _write_rows(header, rows)


def cascade_table_csv(result) -> str:
    header = ("quantity", "value", "unit")
    rows = (
        ("per_core_area", repr(result.per_core_area), "mm2"),
        ("per_core_power", repr(result.per_core_power), "W"),
        ("noc_area", repr(result.noc_area), "mm2"),
        ("noc_power", repr(result.noc_power), "W"),
        ("wireless_area", repr(result.wireless_area), "mm2"),
        ("wireless_power", repr(result.wireless_power), "W"),
        ("wireless_energy_per_bit", repr(result.wireless_energy_per_bit), "J/bit"),
        ("converter_area_target", repr(result.converter_area_target), "mm2"),
        ("converter_power_target", repr(result.converter_power_target), "W"),
        ("converter_energy_per_bit_target",
         repr(result.converter_energy_per_bit_target), "J/bit"),
    )
    return _write_rows(header, rows)
