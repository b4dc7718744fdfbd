"""Temporal doubling laws, technology power laws, and threshold projections.

Fits are ordinary least squares in log space (log2 against years, log10
against feature size), matching the straight-line tendencies such survey
plots exhibit.  Goodness of fit is reported as r^2 only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .dataset import Dataset, SurveyRecord
from .frontier import (
    MAXIMIZE,
    MINIMIZE,
    Objective,
    _quiet_derive,
    pareto_frontier,
    yearly_envelope,
)
from .metrics import canonical_metric_key, metric_value


@dataclass(frozen=True)
class TrendFit:
    """Exponential-in-time fit: value(t) = 2^(intercept + slope*(t - reference_year))."""

    slope: float            # per-year change of log2(value)
    intercept: float        # log2(value) at reference_year
    reference_year: int
    r_squared: float
    n_points: int

    @property
    def doubling_time(self) -> Optional[float]:
        """Years per doubling; None when the trend is flat or decreasing."""
        return 1.0 / self.slope if self.slope > 0 else None

    @property
    def halving_time(self) -> Optional[float]:
        """Years per halving; None when the trend is flat or increasing."""
        return -1.0 / self.slope if self.slope < 0 else None


@dataclass(frozen=True)
class PowerLawFit:
    """Power law in feature size: value = 10^log_coefficient * nm^exponent."""

    exponent: float
    log_coefficient: float   # log10 of the prefactor
    r_squared: float
    n_points: int


def fit_doubling(series: Iterable[tuple[float, float]]) -> TrendFit:
    """OLS of log2(value) against year.

    Requires at least three points with positive values.  Fractional years
    are accepted.
    """
    points = sorted(series)
    _check_fit_points(points, "year")
    years = np.array([p[0] for p in points], dtype=float)
    logs = np.log2([p[1] for p in points])
    slope, mean_x, mean_z, r_squared = _ols(years, logs)
    reference_year = int(math.floor(years[0]))
    intercept = mean_z + slope * (reference_year - mean_x)
    return TrendFit(slope=slope, intercept=intercept, reference_year=reference_year,
                    r_squared=r_squared, n_points=len(points))


def fit_power_law(points: Iterable[tuple[float, float]]) -> PowerLawFit:
    """OLS of log10(value) against log10(feature size in nm)."""
    points = sorted(points)
    _check_fit_points(points, "feature size", positive_x=True)
    log_x = np.log10([p[0] for p in points])
    log_y = np.log10([p[1] for p in points])
    slope, mean_x, mean_z, r_squared = _ols(log_x, log_y)
    return PowerLawFit(exponent=slope, log_coefficient=mean_z - slope * mean_x,
                       r_squared=r_squared, n_points=len(points))


def _check_fit_points(points: Sequence[tuple[float, float]], axis_name: str,
                      positive_x: bool = False) -> None:
    if len(points) < 3:
        raise ValueError(f"need at least 3 points for a fit, got {len(points)}")
    for x, y in points:
        if y <= 0:
            raise ValueError(f"values must be positive for a log fit, got {y}")
        if positive_x and x <= 0:
            raise ValueError(f"{axis_name} must be positive, got {x}")
    xs = {x for x, _ in points}
    if len(xs) < 2:
        raise ValueError(f"all points share the same {axis_name}; slope undefined")


def _ols(x: np.ndarray, z: np.ndarray) -> tuple[float, float, float, float]:
    mean_x = float(np.mean(x))
    mean_z = float(np.mean(z))
    dx = x - mean_x
    dz = z - mean_z
    slope = float(np.dot(dx, dz) / np.dot(dx, dx))
    residuals = dz - slope * dx
    ss_res = float(np.dot(residuals, residuals))
    ss_tot = float(np.dot(dz, dz))
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    return slope, mean_x, mean_z, r_squared


# ---------------------------------------------------------------------------
# Dataset-level fitting
# ---------------------------------------------------------------------------

YEAR_AXIS = "year"
NODE_AXIS = "tech_node"

SELECTOR_ALL = "all"
SELECTOR_FRONTIER = "frontier"
SELECTOR_YEARLY_BEST = "yearly_best"

# Improvement direction used when the caller does not state one.
DEFAULT_DIRECTIONS = {
    "single_bit_energy": MINIMIZE,
    "area": MINIMIZE,
    "tech_node": MINIMIZE,
    "power": MINIMIZE,
    "bandwidth": MAXIMIZE,
    "nyquist_rate": MAXIMIZE,
    "sample_rate": MAXIMIZE,
    "sampling_density": MAXIMIZE,
    "schreier_fom": MAXIMIZE,
    "speed_resolution": MAXIMIZE,
    "enob": MAXIMIZE,
    "sndr": MAXIMIZE,
    "year": MAXIMIZE,
}

# Orientation of the axis objective when tracing a frontier: a design is a
# record-setter if nothing at an earlier year (or an older, larger node)
# already matched it.
_AXIS_FRONTIER_DIRECTION = {YEAR_AXIS: MINIMIZE, NODE_AXIS: MAXIMIZE}


def select_points(dataset: Dataset, metric_key: str, axis: str = YEAR_AXIS,
                  selector: str = SELECTOR_YEARLY_BEST,
                  direction: Optional[str] = None, osr: float = 1.0,
                  eligibility: Optional[Callable[[SurveyRecord], bool]] = None,
                  ) -> list[tuple[float, float]]:
    """(axis value, metric value) pairs for the chosen record subset.

    selector:
        all          every record resolving both axis and metric
        yearly_best  per-year extremum (year axis only)
        frontier     record-setters: the Pareto front of (axis, metric)
    """
    if axis not in (YEAR_AXIS, NODE_AXIS):
        raise ValueError(f"axis must be year or tech_node, got {axis!r}")
    metric_key = canonical_metric_key(metric_key)
    if direction is None:
        direction = DEFAULT_DIRECTIONS[metric_key]

    if selector == SELECTOR_YEARLY_BEST:
        if axis != YEAR_AXIS:
            raise ValueError("yearly_best selector requires the year axis")
        envelope = yearly_envelope(dataset, metric_key, direction,
                                   eligibility=eligibility, osr=osr)
        return [(float(p.year), p.value) for p in envelope.points]

    if selector in (SELECTOR_ALL, SELECTOR_FRONTIER):
        subset = dataset
        if selector == SELECTOR_FRONTIER:
            objectives = (Objective(axis, _AXIS_FRONTIER_DIRECTION[axis]),
                          Objective(metric_key, direction))
            member_ids = set(pareto_frontier(dataset, objectives, osr=osr).ids)
            subset = Dataset(records=tuple(r for r in dataset.records
                                           if r.id in member_ids),
                             transceivers=dataset.transceivers,
                             provenance=dataset.provenance)
        return _collect_points(subset, metric_key, axis, osr, eligibility)

    raise ValueError(f"unknown selector: {selector!r}")


def fit_on_subset(dataset: Dataset, metric_key: str, axis: str = YEAR_AXIS,
                  selector: str = SELECTOR_YEARLY_BEST,
                  direction: Optional[str] = None, osr: float = 1.0,
                  eligibility: Optional[Callable[[SurveyRecord], bool]] = None,
                  ) -> Union[TrendFit, PowerLawFit]:
    """Fit ``metric_key`` against ``axis`` on the subset chosen by ``selector``."""
    points = select_points(dataset, metric_key, axis, selector, direction,
                           osr, eligibility)
    if len(points) < 3:
        raise ValueError(
            f"selector {selector!r} yields {len(points)} usable points; need >= 3")
    if axis == YEAR_AXIS:
        return fit_doubling(points)
    return fit_power_law(points)


def _collect_points(dataset: Dataset, metric_key: str, axis: str, osr: float,
                    eligibility: Optional[Callable[[SurveyRecord], bool]],
                    ) -> list[tuple[float, float]]:
    points = []
    for record in dataset.records:
        if eligibility is not None and not eligibility(record):
            continue
        derived = _quiet_derive(record, osr)
        x = metric_value(record, derived, axis)
        y = metric_value(record, derived, metric_key)
        if x is not None and y is not None and y > 0:
            points.append((x, y))
    return points


# ---------------------------------------------------------------------------
# Extrapolation
# ---------------------------------------------------------------------------

AT_MOST = "at_most"
AT_LEAST = "at_least"


def extrapolate(fit: TrendFit, year: float) -> float:
    """Value on the fitted line at ``year`` (fractional years allowed)."""
    return 2.0 ** (fit.intercept + fit.slope * (year - fit.reference_year))


def threshold_year(fit: TrendFit, anchor: tuple[float, float], threshold: float,
                   goal: str = AT_MOST) -> Optional[float]:
    """Year at which the trend anchored at (year, value) reaches ``threshold``.

    ``goal`` states the target orientation: reach a value at most (or at
    least) the threshold.  Returns the anchor year when the threshold is
    already met, and None when the trend moves away from it.
    """
    anchor_year, anchor_value = anchor
    if anchor_value <= 0 or threshold <= 0:
        raise ValueError("anchor value and threshold must be positive")
    if goal not in (AT_MOST, AT_LEAST):
        raise ValueError(f"goal must be at_most or at_least, got {goal!r}")

    if goal == AT_MOST:
        if anchor_value <= threshold:
            return anchor_year
        if fit.slope >= 0:
            return None
    else:
        if anchor_value >= threshold:
            return anchor_year
        if fit.slope <= 0:
            return None
    return anchor_year + math.log2(threshold / anchor_value) / fit.slope


# ---------------------------------------------------------------------------
# Published reference tendencies (overlaid on reports, never substituted
# for fitted values)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReferenceTrend:
    name: str
    kind: str     # "doubling_years" | "halving_years" | "node_exponent"
    value: float
    description: str


REFERENCE_TRENDS = {
    t.name: t for t in (
        ReferenceTrend("speed-resolution-doubling", "doubling_years", 4.0,
                       "speed-resolution product doubles every 4 years"),
        ReferenceTrend("fom-corner-doubling", "doubling_years", 1.8,
                       "sampling rate at constant Schreier FOM doubles every 1.8 years"),
        ReferenceTrend("ebit-halving", "halving_years", 1.8,
                       "best single-bit energy halves every 1.8 years"),
        ReferenceTrend("density-doubling", "doubling_years", 1.8,
                       "best sampling density doubles every 1.8 years"),
        ReferenceTrend("energy-node-scaling", "node_exponent", 1.7,
                       "average conversion energy scales as nm^1.7"),
        ReferenceTrend("sar-energy-node-scaling", "node_exponent", 2.3,
                       "SAR conversion energy scales as nm^2.3"),
        ReferenceTrend("area-node-scaling-quadratic", "node_exponent", 2.0,
                       "average converter area scales as nm^2"),
        ReferenceTrend("area-node-scaling-sublinear", "node_exponent", 1.6,
                       "average converter area scales as nm^1.6"),
    )
}
