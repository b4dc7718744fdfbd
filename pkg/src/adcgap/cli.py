"""Command-line client for the analytics service.

The CLI is a thin client: it reads local files, sends them to the service,
prints a short summary and writes the returned artifacts under ``--out``.
By default it talks to an in-process instance of the service (no server
needed); pass ``--server http://host:port`` to use a running one.

Exit codes: 0 success, 1 usage error, 2 data error.

Dataset arguments accept ``@converters`` / ``@transceivers`` to use the
bundled sample files.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path
from typing import Optional

import httpx

from .units import sig4

USAGE_EXIT = 1
DATA_EXIT = 2

_ARTIFACT_SUFFIXES = {"csv": ".csv", "svg": ".svg", "text": ".txt"}


class ApiError(Exception):
    def __init__(self, status_code: int, detail: str):
        super().__init__(f"HTTP {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class ApiClient:
    """Requests against a remote server or an in-process service instance."""

    def __init__(self, server: Optional[str] = None):
        self._server = server

    def get(self, path: str) -> dict:
        return self._request("GET", path, None)

    def post(self, path: str, payload: dict) -> dict:
        return self._request("POST", path, payload)

    def _request(self, method: str, path: str, payload: Optional[dict]) -> dict:
        if self._server is None:
            return asyncio.run(self._in_process(method, path, payload))
        with httpx.Client(base_url=self._server, timeout=120.0) as client:
            response = client.request(method, path, json=payload)
        return _handle(response)

    async def _in_process(self, method: str, path: str, payload: Optional[dict]) -> dict:
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://adcgap.internal") as client:
            response = await client.request(method, path, json=payload)
        return _handle(response)


def _handle(response: httpx.Response) -> dict:
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise ApiError(response.status_code, str(detail))
    return response.json()


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _add_common(parser: argparse.ArgumentParser, data_required: bool = True,
                with_transceivers: bool = False) -> None:
    parser.add_argument("--data", required=data_required,
                        help="converter CSV path (or @converters for the bundled sample)")
    if with_transceivers:
        parser.add_argument("--transceivers", default=None,
                            help="transceiver CSV path (or @transceivers)")
    parser.add_argument("--config", default=None, help="flat key/value config file")
    parser.add_argument("--out", default="out", help="directory for artifact files")
    parser.add_argument("--format", choices=sorted(_ARTIFACT_SUFFIXES), default=None,
                        help="write only artifacts of this kind (default: all)")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    parser.add_argument("--osr", type=float, default=1.0, help="oversampling ratio")


def build_parser() -> _Parser:
    parser = _Parser(prog="adcgap",
                     description="Converter survey analytics: metrics, budgets, "
                                 "frontiers, trends, gap reports and plots.")
    subparsers = parser.add_subparsers(dest="command", required=True,
                                       parser_class=_Parser)

    p = subparsers.add_parser("ingest",
                              help="parse and validate survey CSV files")
    _add_common(p, data_required=False, with_transceivers=True)

    p = subparsers.add_parser("metrics",
                              help="derive per-record metrics")
    _add_common(p)

    p = subparsers.add_parser("budget",
                              help="platform-to-converter budget cascade")
    _add_common(p, data_required=False, with_transceivers=True)

    p = subparsers.add_parser("frontier",
                              help="extract the Pareto-optimal records")
    _add_common(p)
    p.add_argument("--objective", action="append", default=None,
                   metavar="METRIC:DIRECTION",
                   help="objective, e.g. ebit:minimize (repeatable; default "
                        "ebit:minimize bandwidth:maximize)")

    p = subparsers.add_parser("trend",
                              help="fit scaling trends and project thresholds")
    _add_common(p)
    p.add_argument("--metric", required=True)
    p.add_argument("--axis", choices=["year", "tech_node"], default="year")
    p.add_argument("--selector", choices=["all", "frontier", "yearly_best"],
                   default="yearly_best")
    p.add_argument("--direction", choices=["maximize", "minimize"], default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--goal", choices=["at_most", "at_least"], default="at_most")
    p.add_argument("--anchor-year", type=float, default=None)
    p.add_argument("--anchor-value", type=float, default=None)

    p = subparsers.add_parser("gap",
                              help="judge records against a requirement spec")
    _add_common(p)
    p.add_argument("--spec", default="table2-adc",
                   help="requirement preset name (default table2-adc); "
                        "--config with requirement.* keys overrides it")
    p.add_argument("--project", action="store_true",
                   help="project feasibility years for criteria nothing passes")

    p = subparsers.add_parser("plot",
                              help="emit a series CSV and SVG scatter plot")
    _add_common(p)
    p.add_argument("--x", required=True, help="x metric key (e.g. bandwidth)")
    p.add_argument("--y", required=True, help="y metric key (e.g. ebit)")
    p.add_argument("--x-scale", choices=["linear", "log10"], default="linear")
    p.add_argument("--y-scale", choices=["linear", "log10"], default="linear")
    p.add_argument("--selector", choices=["all", "yearly_best"], default="all",
                   help="plot every record or the per-year best (x must be year)")
    p.add_argument("--direction", choices=["maximize", "minimize"], default=None,
                   help="what counts as best for --selector yearly_best")
    p.add_argument("--split", default=None,
                   help="split series by field or condition, e.g. enob<=4")
    p.add_argument("--jitter", action="append", type=float, default=None,
                   metavar="SECONDS", help="aperture-jitter overlay (repeatable)")
    p.add_argument("--box", default=None, help="requirement box preset name")
    p.add_argument("--ref-trend", action="append", default=None,
                   help="published tendency overlay name (repeatable)")
    p.add_argument("--title", default=None)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)

    p = subparsers.add_parser("serve",
                              help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _read_dataset_arg(value: str) -> str:
    if value == "@converters":
        from .samples import sample_converters_text
        return sample_converters_text()
    if value == "@transceivers":
        from .samples import sample_transceivers_text
        return sample_transceivers_text()
    return Path(value).read_text(encoding="utf-8")


def _read_config(args) -> dict[str, str]:
    if not getattr(args, "config", None):
        return {}
    from .config import parse_config_text
    return parse_config_text(Path(args.config).read_text(encoding="utf-8"))


def _write_artifacts(args, artifacts: dict[str, str]) -> list[str]:
    wanted = _ARTIFACT_SUFFIXES.get(args.format) if args.format else None
    out_dir = Path(args.out)
    written = []
    for name in sorted(artifacts):
        if wanted is not None and not name.endswith(wanted):
            continue
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / name).write_bytes(artifacts[name].encode("utf-8"))
        written.append(str(out_dir / name))
    for path in written:
        print(f"wrote {path}")
    return written


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_ingest(client: ApiClient, args) -> None:
    if args.data is None and args.transceivers is None:
        raise ApiError(400, "ingest needs --data and/or --transceivers")
    payload = {}
    if args.data is not None:
        payload["converter_csv"] = _read_dataset_arg(args.data)
    if args.transceivers is not None:
        payload["transceiver_csv"] = _read_dataset_arg(args.transceivers)
    result = client.post("/ingest", payload)
    fatal = sum(1 for i in result["issues"] if i["severity"] == "fatal")
    warnings = len(result["issues"]) - fatal
    print(f"converters: {len(result['converters'])}  "
          f"transceivers: {len(result['transceivers'])}  "
          f"issues: {fatal} fatal, {warnings} warning")
    _write_artifacts(args, result["artifacts"])


def _cmd_metrics(client: ApiClient, args) -> None:
    payload = {"converter_csv": _read_dataset_arg(args.data), "osr": args.osr}
    result = client.post("/metrics", payload)
    print(f"derived metrics for {len(result['rows'])} records (osr {sig4(args.osr)})")
    _write_artifacts(args, result["artifacts"])


def _cmd_budget(client: ApiClient, args) -> None:
    values = _read_config(args)
    payload: dict = {"osr": args.osr}
    platform_keys = {"platform.chip_area_mm2": "chip_area_mm2",
                     "platform.tdp_w": "tdp_w",
                     "platform.core_count": "core_count"}
    if any(k in values for k in platform_keys):
        payload["platform"] = {v: float(values[k]) if v != "core_count" else int(values[k])
                               for k, v in platform_keys.items() if k in values}
    policy_keys = {"policy.compute_fraction": "compute_fraction",
                   "policy.memory_fraction": "memory_fraction",
                   "policy.noc_fraction": "noc_fraction",
                   "policy.wireless_share_of_noc": "wireless_share_of_noc",
                   "policy.conversion_share_of_wireless": "conversion_share_of_wireless",
                   "policy.target_datarate_bps": "target_datarate_bps"}
    if any(k in values for k in policy_keys):
        payload["policy"] = {v: float(values[k])
                             for k, v in policy_keys.items() if k in values}
    if args.data is not None:
        payload["converter_csv"] = _read_dataset_arg(args.data)
    if args.transceivers is not None:
        payload["transceiver_csv"] = _read_dataset_arg(args.transceivers)
    result = client.post("/budget", payload)
    c = result["cascade"]
    print(f"converter targets: {sig4(c['converter_area_target_mm2'])} mm2, "
          f"{sig4(c['converter_power_target_w'] * 1e3)} mW, "
          f"{sig4(c['converter_energy_per_bit_target_j'] * 1e12)} pJ/bit")
    if result.get("density"):
        print(f"density ratio (converter/transceiver): {sig4(result['density']['ratio'])}x")
    _write_artifacts(args, result["artifacts"])


def _parse_objectives(raw: Optional[list[str]]) -> list[dict]:
    if not raw:
        raw = ["ebit:minimize", "bandwidth:maximize"]
    objectives = []
    for item in raw:
        metric, _, direction = item.partition(":")
        objectives.append({"metric": metric, "direction": direction or "maximize"})
    return objectives


def _cmd_frontier(client: ApiClient, args) -> None:
    payload = {"converter_csv": _read_dataset_arg(args.data),
               "objectives": _parse_objectives(args.objective), "osr": args.osr}
    result = client.post("/frontier", payload)
    print(f"frontier: {len(result['ids'])} records "
          f"({len(result['excluded'])} excluded for missing fields)")
    print(", ".join(result["ids"]))
    _write_artifacts(args, result["artifacts"])


def _cmd_trend(client: ApiClient, args) -> None:
    payload = {"converter_csv": _read_dataset_arg(args.data),
               "metric": args.metric, "axis": args.axis,
               "selector": args.selector, "direction": args.direction,
               "osr": args.osr, "threshold": args.threshold, "goal": args.goal,
               "anchor_year": args.anchor_year, "anchor_value": args.anchor_value}
    result = client.post("/trend", payload)
    fit = result["fit"]
    if fit["kind"] == "doubling":
        if fit["halving_time_years"] is not None:
            print(f"halving time: {sig4(fit['halving_time_years'])} years "
                  f"(r2 {sig4(fit['r_squared'])}, {fit['n_points']} points)")
        elif fit["doubling_time_years"] is not None:
            print(f"doubling time: {sig4(fit['doubling_time_years'])} years "
                  f"(r2 {sig4(fit['r_squared'])}, {fit['n_points']} points)")
        else:
            print(f"flat trend (r2 {sig4(fit['r_squared'])})")
    else:
        print(f"power-law exponent: {sig4(fit['exponent'])} "
              f"(r2 {sig4(fit['r_squared'])}, {fit['n_points']} points)")
    projection = result.get("projection")
    if projection:
        if projection["year"] is not None:
            print(f"threshold {sig4(projection['threshold'])} projected around "
                  f"{projection['year']:.1f}")
        else:
            print("threshold unreachable along this trend")
    _write_artifacts(args, result["artifacts"])


def _cmd_gap(client: ApiClient, args) -> None:
    payload = {"converter_csv": _read_dataset_arg(args.data),
               "spec_name": args.spec, "osr": args.osr, "project": args.project}
    values = _read_config(args)
    if "requirement.name" in values:
        from .config import requirement_from_config
        spec = requirement_from_config(values)
        payload["spec"] = {
            "name": spec.name,
            "min_bandwidth_hz": spec.min_bandwidth,
            "min_nyquist_hz": spec.min_nyquist,
            "max_osr": spec.max_osr,
            "min_enob_bits": spec.min_enob,
            "max_area_mm2": spec.max_area,
            "max_energy_per_bit_j": spec.max_energy_per_bit,
        }
    result = client.post("/gap", payload)
    passes = result["overall_passes"]
    print(f"gap vs '{result['spec']['name']}': "
          f"{len(passes)}/{result['n_records']} records pass overall")
    if result.get("nearest_miss"):
        nm = result["nearest_miss"]
        print(f"nearest miss: {nm['id']} ({nm['shortfalls']} shortfall(s), "
              f"worst margin {sig4(nm['worst_margin'])})")
    for projection in result.get("projections") or []:
        if projection["unreachable"]:
            print(f"{projection['criterion']}: unreachable along fitted trend")
        else:
            print(f"{projection['criterion']}: projected around "
                  f"{projection['year']:.1f}")
    _write_artifacts(args, result["artifacts"])


def _cmd_plot(client: ApiClient, args) -> None:
    payload = {"converter_csv": _read_dataset_arg(args.data),
               "x": args.x, "y": args.y,
               "x_scale": args.x_scale, "y_scale": args.y_scale,
               "selector": args.selector, "direction": args.direction,
               "split": args.split,
               "jitter_overlays_s": args.jitter or [],
               "requirement_box": args.box,
               "reference_trends": args.ref_trend or [],
               "osr": args.osr, "title": args.title,
               "width": args.width, "height": args.height}
    result = client.post("/plot", payload)
    print(f"plotted {result['points']} points")
    _write_artifacts(args, result["artifacts"])


def _cmd_serve(args) -> None:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)


_COMMANDS = {
    "ingest": _cmd_ingest,
    "metrics": _cmd_metrics,
    "budget": _cmd_budget,
    "frontier": _cmd_frontier,
    "trend": _cmd_trend,
    "gap": _cmd_gap,
    "plot": _cmd_plot,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT

    if args.command == "serve":
        _cmd_serve(args)
        return 0

    client = ApiClient(server=args.server)
    try:
        _COMMANDS[args.command](client, args)
    except (ApiError, OSError, ValueError) as exc:
        print(f"adcgap {args.command}: {exc}", file=sys.stderr)
        return DATA_EXIT
    except httpx.HTTPError as exc:
        print(f"adcgap {args.command}: transport failure: {exc}", file=sys.stderr)
        return DATA_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
