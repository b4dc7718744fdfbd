"""FastAPI service wrapping the analytics package.

Every operation is stateless: datasets travel as CSV text in the request
body, results come back as structured JSON plus ready-to-write artifact
files.  Domain validation failures map to HTTP 400 with a detail string.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..budget import AllocationPolicy, PlatformSpec, cascade, density_comparison
from ..dataset import (
    Dataset,
    ParseIssue,
    parse_converter_csv,
    parse_transceiver_csv,
    to_converter_csv,
    to_transceiver_csv,
)
from ..frontier import Objective, pareto_frontier, yearly_envelope
from ..gap import (
    CRITERION_GOALS,
    CRITERION_METRICS,
    REQUIREMENT_PRESETS,
    SCENARIO_PRESETS,
    RequirementSpec,
    feasibility_assessment,
    gap_report,
)
from ..report import (
    Geometry,
    JitterBound,
    PlotSpec,
    ReferenceTrendOverlay,
    RequirementBox,
    budget_text,
    cascade_table_csv,
    density_text,
    emit_scatter_svg,
    emit_series,
    frontier_table_csv,
    gap_text,
    issues_table_csv,
    metrics_table_csv,
    series_to_csv,
    trend_text,
    verdicts_table_csv,
)
from ..trends import (
    AT_LEAST,
    AT_MOST,
    DEFAULT_DIRECTIONS,
    MINIMIZE,
    TrendFit,
    fit_doubling,
    fit_power_law,
    select_points,
    threshold_year,
)
from . import schemas
from .convert import (
    derive_metrics_rows,
    to_cascade_model,
    to_fit_model,
    to_gap_response,
    to_record_models,
    to_requirement_model,
    to_requirement_spec,
    to_scenario_model,
    to_transceiver_models,
)


def create_app() -> FastAPI:
    app = FastAPI(title="adcgap service", version=__version__,
                  description="Converter survey analytics: metrics, budget "
                              "cascades, Pareto frontiers, scaling trends and "
                              "feasibility gap reports.")

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/ingest", response_model=schemas.IngestResponse)
    def ingest(request: schemas.IngestRequest):
        if request.converter_csv is None and request.transceiver_csv is None:
            raise HTTPException(400, "provide converter_csv and/or transceiver_csv")
        response = schemas.IngestResponse()
        if request.converter_csv is not None:
            dataset, issues = parse_converter_csv(request.converter_csv)
            response.converters = to_record_models(dataset)
            response.issues += [schemas.ParseIssueModel(**vars(i)) for i in issues]
            response.artifacts["converters.csv"] = to_converter_csv(dataset)
        if request.transceiver_csv is not None:
            dataset, issues = parse_transceiver_csv(request.transceiver_csv)
            response.transceivers = to_transceiver_models(dataset)
            response.issues += [schemas.ParseIssueModel(**vars(i)) for i in issues]
            response.artifacts["transceivers.csv"] = to_transceiver_csv(dataset)
        response.artifacts["issues.csv"] = issues_table_csv(
            [i for i in _issue_objects(response.issues)])
        return response

    @app.post("/metrics", response_model=schemas.MetricsResponse)
    def metrics(request: schemas.MetricsRequest):
        dataset = _converters(request.converter_csv)
        rows = derive_metrics_rows(dataset, request.osr)
        return schemas.MetricsResponse(
            rows=rows,
            artifacts={"metrics.csv": metrics_table_csv(dataset, request.osr)})

    @app.post("/budget", response_model=schemas.BudgetResponse)
    def budget(request: schemas.BudgetRequest):
        platform = PlatformSpec(chip_area=request.platform.chip_area_mm2,
                                tdp=request.platform.tdp_w,
                                core_count=request.platform.core_count)
        policy = AllocationPolicy(
            compute_fraction=request.policy.compute_fraction,
            memory_fraction=request.policy.memory_fraction,
            noc_fraction=request.policy.noc_fraction,
            wireless_share_of_noc=request.policy.wireless_share_of_noc,
            conversion_share_of_wireless=request.policy.conversion_share_of_wireless,
            target_datarate=request.policy.target_datarate_bps)
        result = cascade(platform, policy)
        artifacts = {
            "budget.txt": budget_text(platform, policy, result),
            "budget.csv": cascade_table_csv(result),
        }
        density = None
        if request.converter_csv is not None and request.transceiver_csv is not None:
            converters = _converters(request.converter_csv)
            transceivers = _transceivers(request.transceiver_csv)
            comparison = density_comparison(converters, transceivers, request.osr)
            density = schemas.DensityModel(
                ratio=comparison.ratio,
                converter_id=comparison.converter_id,
                converter_density_hz_mm2=comparison.converter_density,
                transceiver_id=comparison.transceiver_id,
                transceiver_density_bps_mm2=comparison.transceiver_density)
            artifacts["density.txt"] = density_text(comparison)
        return schemas.BudgetResponse(cascade=to_cascade_model(result),
                                      density=density, artifacts=artifacts)

    @app.post("/frontier", response_model=schemas.FrontierResponse)
    def frontier(request: schemas.FrontierRequest):
        dataset = _converters(request.converter_csv)
        objectives = [Objective(o.metric, o.direction) for o in request.objectives]
        result = pareto_frontier(dataset, objectives, osr=request.osr)
        keys = [o.metric_key for o in objectives]
        return schemas.FrontierResponse(
            ids=list(result.ids), excluded=list(result.excluded),
            artifacts={"frontier.csv": frontier_table_csv(
                dataset, result, keys, request.osr)})

    @app.post("/trend", response_model=schemas.TrendResponse)
    def trend(request: schemas.TrendRequest):
        dataset = _converters(request.converter_csv)
        points = select_points(dataset, request.metric, request.axis,
                               request.selector, request.direction, request.osr)
        if len(points) < 3:
            raise HTTPException(400, f"selector {request.selector!r} yields "
                                     f"{len(points)} usable points; need >= 3")
        fit = fit_doubling(points) if request.axis == "year" else fit_power_law(points)

        projection = None
        if request.threshold is not None:
            if not isinstance(fit, TrendFit):
                raise HTTPException(
                    400, "threshold projection requires a year-axis trend")
            anchor = _default_anchor(points, request.goal)
            if request.anchor_year is not None:
                anchor = (request.anchor_year, anchor[1])
            if request.anchor_value is not None:
                anchor = (anchor[0], request.anchor_value)
            year = threshold_year(fit, anchor, request.threshold, goal=request.goal)
            projection = schemas.ProjectionModel(
                threshold=request.threshold, goal=request.goal, year=year,
                unreachable=year is None,
                anchor_year=anchor[0], anchor_value=anchor[1])

        fit_model = to_fit_model(fit)
        report = trend_text(fit, None if projection is None else projection.model_dump())
        return schemas.TrendResponse(fit=fit_model, projection=projection,
                                     artifacts={"trend.txt": report})

    @app.post("/gap", response_model=schemas.GapResponse)
    def gap(request: schemas.GapRequest):
        dataset = _converters(request.converter_csv)
        if request.spec is not None:
            spec = to_requirement_spec(request.spec)
        elif request.spec_name in REQUIREMENT_PRESETS:
            spec = REQUIREMENT_PRESETS[request.spec_name]
        else:
            raise HTTPException(404, f"unknown requirement preset "
                                     f"{request.spec_name!r}")
        report = gap_report(dataset, spec, request.osr)

        assessment = None
        if request.project:
            assessment = _project_failing_criteria(dataset, report, request.osr)

        artifacts = {
            "gap.txt": gap_text(report, assessment),
            "verdicts.csv": verdicts_table_csv(report),
        }
        return to_gap_response(report, assessment, artifacts)

    @app.post("/plot", response_model=schemas.PlotResponse)
    def plot(request: schemas.PlotRequest):
        dataset = _converters(request.converter_csv)
        overlays = []
        for sigma in request.jitter_overlays_s:
            overlays.append(JitterBound(sigma))
        if request.requirement_box is not None:
            if request.requirement_box not in REQUIREMENT_PRESETS:
                raise HTTPException(404, f"unknown requirement preset "
                                         f"{request.requirement_box!r}")
            overlays.append(RequirementBox(REQUIREMENT_PRESETS[request.requirement_box]))
        for name in request.reference_trends:
            overlays.append(ReferenceTrendOverlay(name))
        spec = PlotSpec(x_key=request.x, y_key=request.y,
                        x_scale=request.x_scale, y_scale=request.y_scale,
                        overlays=tuple(overlays), split=request.split,
                        title=request.title)
        if request.selector == "yearly_best":
            if spec.x_key != "year":
                raise HTTPException(400, "yearly_best plots require x=year")
            if spec.split is not None:
                raise HTTPException(400, "yearly_best plots cannot be split")
            direction = request.direction or DEFAULT_DIRECTIONS[spec.y_key]
            envelope = yearly_envelope(dataset, spec.y_key, direction,
                                       osr=request.osr)
            series = emit_series(envelope, spec, request.osr)
        elif request.selector == "all":
            series = emit_series(dataset, spec, request.osr)
        else:
            raise HTTPException(400, f"unknown plot selector {request.selector!r}")
        svg = emit_scatter_svg(series, spec,
                               Geometry(width=request.width, height=request.height))
        csv_text = series_to_csv(series)
        return schemas.PlotResponse(
            points=len(series.rows), series_csv=csv_text, svg=svg,
            artifacts={"series.csv": csv_text, "plot.svg": svg})

    @app.get("/presets", response_model=schemas.PresetListResponse)
    def presets():
        return schemas.PresetListResponse(
            requirements=sorted(REQUIREMENT_PRESETS),
            scenarios=sorted(SCENARIO_PRESETS))

    @app.get("/presets/{name}", response_model=schemas.PresetResponse)
    def preset(name: str):
        if name in REQUIREMENT_PRESETS:
            return schemas.PresetResponse(
                kind="requirement",
                requirement=to_requirement_model(REQUIREMENT_PRESETS[name]))
        if name in SCENARIO_PRESETS:
            return schemas.PresetResponse(
                kind="scenario", scenario=to_scenario_model(SCENARIO_PRESETS[name]))
        raise HTTPException(404, f"unknown preset {name!r}")

    return app


def _converters(text: str) -> Dataset:
    dataset, issues = parse_converter_csv(text)
    if not dataset.records:
        fatal = "; ".join(i.message for i in issues if i.severity == "fatal")
        raise HTTPException(400, f"no usable converter records ({fatal or 'empty'})")
    return dataset


def _transceivers(text: str) -> Dataset:
    dataset, _ = parse_transceiver_csv(text)
    if not dataset.transceivers:
        raise HTTPException(400, "no usable transceiver records")
    return dataset


def _issue_objects(models):
    return [ParseIssue(m.row, m.column, m.severity, m.message) for m in models]


def _default_anchor(points, goal: str) -> tuple[float, float]:
    """Latest axis point paired with the best value achieved so far."""
    latest = max(x for x, _ in points)
    values = [v for _, v in points]
    best = min(values) if goal == AT_MOST else max(values)
    return (latest, best)


def _project_failing_criteria(dataset, report, osr):
    """Fit a yearly-best trend for every criterion nothing passes."""
    fits, anchors = {}, {}
    for criterion in report.failing_criteria():
        metric = CRITERION_METRICS.get(criterion)
        if metric is None:
            continue
        goal = CRITERION_GOALS[criterion]
        direction = MINIMIZE if goal == AT_MOST else "maximize"
        try:
            points = select_points(dataset, metric, "year", "yearly_best",
                                   direction, osr)
        except ValueError:
            continue
        if len(points) < 3:
            continue
        fits[criterion] = fit_doubling(points)
        anchors[criterion] = _default_anchor(points, goal)
    if not fits:
        return None
    return feasibility_assessment(report, fits, anchors)


app = create_app()
