"""Pareto frontier extraction and yearly-best envelopes.

Datasets here are small (hundreds of designs), so dominance filtering is a
plain O(n^2) pass over numpy rows; no spatial data structures.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .dataset import Dataset, SurveyRecord
from .metrics import (
    DerivedMetrics,
    IncompleteRecordWarning,
    canonical_metric_key,
    derive_all,
    metric_value,
)

MAXIMIZE = "maximize"
MINIMIZE = "minimize"


@dataclass(frozen=True)
class Objective:
    """One optimization axis: a metric key plus a direction."""

    metric_key: str
    direction: str

    def __post_init__(self):
        object.__setattr__(self, "metric_key", canonical_metric_key(self.metric_key))
        if self.direction not in (MAXIMIZE, MINIMIZE):
            raise ValueError(f"direction must be maximize or minimize, got {self.direction!r}")

    @property
    def sense(self) -> float:
        return 1.0 if self.direction == MAXIMIZE else -1.0


def dominates(a: Mapping[str, float], b: Mapping[str, float],
              objectives: Sequence[Objective]) -> bool:
    """True iff ``a`` is at least as good as ``b`` everywhere and strictly
    better somewhere.  Both vectors must carry every objective key."""
    if not objectives:
        raise ValueError("at least one objective required")
    at_least_as_good = True
    strictly_better = False
    for objective in objectives:
        key = objective.metric_key
        if key not in a or key not in b:
            raise KeyError(f"metric {key!r} missing from a vector")
        diff = objective.sense * (a[key] - b[key])
        if diff < 0:
            at_least_as_good = False
            break
        if diff > 0:
            strictly_better = True
    return at_least_as_good and strictly_better


def non_dominated_mask(values: np.ndarray, senses: Sequence[float]) -> np.ndarray:
    """Boolean mask over rows of ``values`` that no other row dominates.

    ``senses`` is +1 for maximized columns, -1 for minimized ones.  Rows
    with identical vectors are all kept (dominance requires a strict
    improvement somewhere).
    """
    oriented = np.asarray(values, dtype=float) * np.asarray(senses, dtype=float)
    n = oriented.shape[0]
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        ge = (oriented >= oriented[i]).all(axis=1)
        gt = (oriented > oriented[i]).any(axis=1)
        if (ge & gt).any():
            keep[i] = False
    return keep


@dataclass(frozen=True)
class ParetoResult:
    """Frontier member ids (ordered by year then id) plus the ids excluded
    for missing objective values."""

    ids: tuple[str, ...]
    excluded: tuple[str, ...]


def pareto_frontier(dataset: Dataset, objectives: Sequence[Objective],
                    osr: float = 1.0) -> ParetoResult:
    """Extract exactly the non-dominated records under ``objectives``.

    Records missing any objective value are reported in ``excluded`` rather
    than treated as worst-case.
    """
    if not objectives:
        raise ValueError("at least one objective required")
    usable: list[tuple[SurveyRecord, list[float]]] = []
    excluded: list[str] = []
    for record in dataset.records:
        derived = _quiet_derive(record, osr)
        vector = [metric_value(record, derived, o.metric_key) for o in objectives]
        if any(v is None for v in vector):
            excluded.append(record.id)
        else:
            usable.append((record, vector))

    if not usable:
        return ParetoResult(ids=(), excluded=tuple(excluded))

    values = np.array([vec for _, vec in usable], dtype=float)
    keep = non_dominated_mask(values, [o.sense for o in objectives])
    members = [rec for (rec, _), k in zip(usable, keep) if k]
    members.sort(key=lambda r: (r.year, r.id))
    return ParetoResult(ids=tuple(r.id for r in members), excluded=tuple(excluded))


@dataclass(frozen=True)
class EnvelopePoint:
    year: int
    value: float
    record_id: str


@dataclass(frozen=True)
class EnvelopeSeries:
    """Per-year extremum of one metric; years strictly increasing."""

    points: tuple[EnvelopePoint, ...]
    metric_key: str
    direction: str

    def years(self) -> tuple[int, ...]:
        return tuple(p.year for p in self.points)

    def values(self) -> tuple[float, ...]:
        return tuple(p.value for p in self.points)


def yearly_envelope(dataset: Dataset, metric_key: str, direction: str,
                    eligibility: Optional[Callable[[SurveyRecord], bool]] = None,
                    osr: float = 1.0) -> EnvelopeSeries:
    """Best value of ``metric_key`` per calendar year.

    Only years with at least one eligible record that resolves the metric
    appear.  Ties within a year go to the lexicographically smallest id.
    """
    metric_key = canonical_metric_key(metric_key)
    if direction not in (MAXIMIZE, MINIMIZE):
        raise ValueError(f"direction must be maximize or minimize, got {direction!r}")
    best: dict[int, tuple[float, str]] = {}
    for record in dataset.records:
        if eligibility is not None and not eligibility(record):
            continue
        derived = _quiet_derive(record, osr)
        value = metric_value(record, derived, metric_key)
        if value is None:
            continue
        current = best.get(record.year)
        if current is None or _improves(value, current[0], direction) \
                or (value == current[0] and record.id < current[1]):
            best[record.year] = (value, record.id)
    if not best:
        raise ValueError(f"no eligible records resolve metric {metric_key!r}")
    points = tuple(EnvelopePoint(year, best[year][0], best[year][1])
                   for year in sorted(best))
    return EnvelopeSeries(points=points, metric_key=metric_key, direction=direction)


def _improves(candidate: float, incumbent: float, direction: str) -> bool:
    if direction == MAXIMIZE:
        return candidate > incumbent
    return candidate < incumbent


def _quiet_derive(record: SurveyRecord, osr: float) -> DerivedMetrics:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IncompleteRecordWarning)
        return derive_all(record, osr)
