"""Command-line front end: optimize, sweep, export-ampl, synth.

Exit codes: 0 success, 1 input/config error, 2 infeasible model (diagnostics
are still written). All output files are UTF-8 with LF line endings, and
identical inputs and flags produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import reports
from .analysis import consolidation_report, project_costs, run_sweep, utilization_report
from .catalog import load_catalog
from .errors import ConfigError, RightsizerError
from .metrics import build_fleet, ingest_metrics, load_bindings
from .model import UtilizationPolicy, build_model, export_ampl, load_policy
from .solve import Infeasible, solve_exact
from .synth import SynthSpec, generate

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INFEASIBLE = 2

DEFAULT_DELTA = 1.5
DEFAULT_SWEEP_SPEC = "1.0:4.0:0.1"
FORMATS = ("json", "text", "csv")
_EXTENSIONS = {"json": "json", "text": "txt", "csv": "csv"}


@dataclass(frozen=True)
class RunConfig:
    catalog_path: Path
    metrics_path: Path | None
    bindings_path: Path | None
    output_dir: Path
    delta: float
    sweep_deltas: tuple[float, ...] | None
    policy_path: Path | None
    hours_per_year: int
    format: str


def parse_sweep_spec(spec: str) -> tuple[float, ...]:
    """Expand 'start:end:step' into an inclusive, strictly increasing factor list."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"sweep spec {spec!r} must be start:end:step")
    try:
        start, end, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"sweep spec {spec!r} has a non-numeric part") from None
    if not (math.isfinite(start) and math.isfinite(end) and math.isfinite(step)):
        raise ConfigError(f"sweep spec {spec!r} has a non-finite part")
    if start < 1.0:
        raise ConfigError("sweep start must be >= 1 (utilization factors are >= 1)")
    if step <= 0.0:
        raise ConfigError("sweep step must be > 0")
    if end < start:
        raise ConfigError("sweep end must be >= start")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return tuple(round(start + k * step, 10) for k in range(count))


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; 2 means "infeasible" here,
    # so route usage errors through ConfigError -> exit 1 instead.
    def error(self, message):
        raise ConfigError(message)


def _build_config(args, sweep: bool) -> RunConfig:
    if not sweep and not args.delta >= 1.0:
        raise ConfigError(f"--delta must be >= 1 (utilization factor), got {args.delta}")
    if args.hours_per_year < 1:
        raise ConfigError(f"--hours-per-year must be >= 1, got {args.hours_per_year}")
    return RunConfig(
        catalog_path=Path(args.catalog),
        metrics_path=Path(args.metrics),
        bindings_path=Path(args.bindings),
        output_dir=Path(args.out),
        delta=DEFAULT_DELTA if sweep else args.delta,
        sweep_deltas=parse_sweep_spec(args.sweep) if sweep else None,
        policy_path=Path(args.policy) if getattr(args, "policy", None) else None,
        hours_per_year=args.hours_per_year,
        format=args.format,
    )


def _load_inputs(config: RunConfig):
    with open(config.catalog_path, "rb") as fh:
        catalog = load_catalog(fh)
    with open(config.metrics_path, "rb") as fh:
        metrics = ingest_metrics(fh)
    with open(config.bindings_path, "rb") as fh:
        bindings = load_bindings(fh)
    return catalog, build_fleet(metrics, catalog, bindings)


def _load_run_policy(config: RunConfig) -> UtilizationPolicy:
    if config.policy_path is None:
        return UtilizationPolicy.uniform(config.delta)
    with open(config.policy_path, "rb") as fh:
        return load_policy(fh, default=config.delta)


def _write(path: Path, text: str) -> None:
    path.write_bytes(text.encode("utf-8"))


def _emit(out_dir: Path, stem: str, fmt: str, json_payload, text: str, csv_body: str) -> None:
    rendered = {"json": reports.to_json(json_payload), "text": text, "csv": csv_body}[fmt]
    _write(out_dir / f"{stem}.{_EXTENSIONS[fmt]}", rendered)


def cmd_optimize(args) -> int:
    config = _build_config(args, sweep=False)
    catalog, fleet = _load_inputs(config)
    policy = _load_run_policy(config)
    model = build_model(fleet, catalog, policy)
    config.output_dir.mkdir(parents=True, exist_ok=True)

    result = solve_exact(model)
    if isinstance(result, Infeasible):
        _emit(config.output_dir, "assignment", config.format,
              reports.infeasible_payload(result, config.delta),
              reports.infeasible_text(result),
              reports.infeasible_csv(result))
        ids = ", ".join(r.workload_id for r in result.rows)
        print(f"infeasible: no catalog type fits {ids} at the requested factor", file=sys.stderr)
        return EXIT_INFEASIBLE

    costs = project_costs(fleet, catalog, result, config.hours_per_year)
    utilization = utilization_report(fleet, catalog, result)
    consolidation = consolidation_report(fleet, catalog, result)

    _emit(config.output_dir, "assignment", config.format,
          reports.assignment_payload(fleet, catalog, result, config.delta),
          reports.assignment_text(fleet, catalog, result),
          reports.assignment_csv(fleet, catalog, result))
    _emit(config.output_dir, "cost_report", config.format,
          costs, reports.cost_report_text(costs), reports.cost_plot_csv(costs))
    _emit(config.output_dir, "utilization_report", config.format,
          utilization, reports.utilization_report_text(utilization),
          reports.utilization_plot_csv(utilization))
    _emit(config.output_dir, "consolidation_report", config.format,
          consolidation, reports.consolidation_report_text(consolidation),
          reports.flow_plot_csv(consolidation))
    _write(config.output_dir / "plot_costs.csv", reports.cost_plot_csv(costs))
    _write(config.output_dir / "plot_utilization.csv", reports.utilization_plot_csv(utilization))
    _write(config.output_dir / "plot_flow.csv", reports.flow_plot_csv(consolidation))
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _build_config(args, sweep=True)
    catalog, fleet = _load_inputs(config)
    result = run_sweep(fleet, catalog, config.sweep_deltas, config.hours_per_year)
    config.output_dir.mkdir(parents=True, exist_ok=True)

    _emit(config.output_dir, "sweep_report", config.format,
          reports.sweep_report_payload(result),
          reports.sweep_report_text(result),
          reports.sweep_plot_csv(result))
    for k, case in enumerate(result.cases, start=1):
        _write(config.output_dir / f"case-{k}.json",
               reports.to_json(reports.sweep_case_payload(k, case)))
    _write(config.output_dir / "plot_annual_cost.csv", reports.sweep_plot_csv(result))
    return EXIT_OK


def cmd_export_ampl(args) -> int:
    config = _build_config(args, sweep=False)
    catalog, fleet = _load_inputs(config)
    policy = _load_run_policy(config)
    model = build_model(fleet, catalog, policy)
    exported = export_ampl(model)
    config.output_dir.mkdir(parents=True, exist_ok=True)
    _write(config.output_dir / "model.mod", exported.model_text)
    _write(config.output_dir / "model.dat", exported.data_text)
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.count < 1:
        raise ConfigError(f"--count must be >= 1, got {args.count}")
    if args.samples < 2:
        raise ConfigError(f"--samples must be >= 2, got {args.samples}")
    with open(args.catalog, "rb") as fh:
        catalog = load_catalog(fh)
    output = generate(SynthSpec(args.seed, args.count, args.samples, catalog))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "metrics.csv").write_bytes(output.metrics_csv)
    (out_dir / "bindings.csv").write_bytes(output.bindings_csv)
    return EXIT_OK


def _add_common_inputs(parser, with_policy: bool) -> None:
    parser.add_argument("--catalog", required=True, help="catalog CSV path")
    parser.add_argument("--metrics", required=True, help="metrics CSV path")
    parser.add_argument("--bindings", required=True, help="bindings CSV path")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--hours-per-year", type=int, default=8760, dest="hours_per_year",
                        help="hours used for annual projections (default 8760)")
    parser.add_argument("--format", choices=FORMATS, default="json",
                        help="report rendering (default json)")
    if with_policy:
        parser.add_argument("--policy", help="per-workload factor CSV (workload_id,delta)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rightsizer",
                     description="Assign cloud workloads to the cheapest instance types "
                                 "that fit their observed demand.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="solve one assignment and write reports")
    _add_common_inputs(p, with_policy=True)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA,
                   help=f"uniform utilization factor, >= 1 (default {DEFAULT_DELTA})")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="solve one case per utilization factor")
    _add_common_inputs(p, with_policy=False)
    p.add_argument("--sweep", default=DEFAULT_SWEEP_SPEC, metavar="START:END:STEP",
                   help=f"factor range (default {DEFAULT_SWEEP_SPEC}, 31 cases)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export-ampl", help="write the model/data files for an external solver")
    _add_common_inputs(p, with_policy=True)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA,
                   help=f"uniform utilization factor, >= 1 (default {DEFAULT_DELTA})")
    p.set_defaults(func=cmd_export_ampl)

    p = sub.add_parser("synth", help="generate deterministic synthetic metrics and bindings")
    p.add_argument("--catalog", required=True, help="catalog CSV path")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=8, help="number of workloads")
    p.add_argument("--samples", type=int, default=24, help="samples per series")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except RightsizerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
