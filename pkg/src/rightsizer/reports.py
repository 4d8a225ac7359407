"""Report serialization: stable JSON, aligned-column text, and plot-data CSVs."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from enum import Enum

from .analysis import (
    ConsolidationReport,
    CostReport,
    SweepResult,
    TTestResult,
    UtilizationReport,
)
from .catalog import Catalog
from .metrics import Fleet
from .solve import AssignmentSolution, Infeasible


def _plain(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def to_json(payload) -> str:
    """Deterministic JSON rendering of a report dataclass or plain structure."""
    return json.dumps(_plain(payload), indent=2) + "\n"


def csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _table(header: tuple[str, ...], rows: list[tuple[str, ...]],
           left: frozenset[int] = frozenset({0})) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]

    def fmt(cells):
        out = []
        for c, cell in enumerate(cells):
            out.append(cell.ljust(widths[c]) if c in left else cell.rjust(widths[c]))
        return "  ".join(out).rstrip()

    return [fmt(header)] + [fmt(row) for row in rows]


def _ttest_line(result: TTestResult | None) -> str:
    if result is None:
        return "not computed"
    return f"t = {result.t_statistic:.4f}, df = {result.degrees_of_freedom:g} ({result.variant})"


# --- cost report ---------------------------------------------------------

def cost_report_text(report: CostReport) -> str:
    lines = [
        "cost report",
        f"  hours per year   {report.hours_per_year}",
        f"  baseline hourly  {report.baseline_hourly:.4f} USD/h",
        f"  target hourly    {report.target_hourly:.4f} USD/h",
        f"  baseline annual  {report.baseline_annual:.2f} USD/y",
        f"  target annual    {report.target_annual:.2f} USD/y",
        f"  savings          {100.0 * report.savings_fraction:.2f} %",
        "",
    ]
    lines += _table(
        ("workload", "source $/h", "target $/h", "delta $/h"),
        [(w.id, f"{w.source_hourly:.4f}", f"{w.target_hourly:.4f}", f"{w.delta:+.4f}")
         for w in report.per_workload])
    return "\n".join(lines) + "\n"


def cost_plot_csv(report: CostReport) -> str:
    rows = [("workload_id", "source_hourly", "target_hourly", "delta")]
    rows += [(w.id, w.source_hourly, w.target_hourly, w.delta) for w in report.per_workload]
    return csv_text(rows)


# --- utilization report --------------------------------------------------

def utilization_report_text(report: UtilizationReport) -> str:
    m = report.means
    lines = [
        "utilization report",
        f"  mean cpu util    {100.0 * m.source_cpu:.2f} % -> {100.0 * m.target_cpu:.2f} %",
        f"  mean mem util    {100.0 * m.source_mem:.2f} % -> {100.0 * m.target_mem:.2f} %",
        f"  cpu t-test       {_ttest_line(report.cpu_ttest)}",
        f"  mem t-test       {_ttest_line(report.mem_ttest)}",
        "",
    ]
    lines += _table(
        ("workload", "src cpu %", "tgt cpu %", "src mem %", "tgt mem %"),
        [(r.id,
          f"{100.0 * r.source_cpu_util:.2f}", f"{100.0 * r.target_cpu_util:.2f}",
          f"{100.0 * r.source_mem_util:.2f}", f"{100.0 * r.target_mem_util:.2f}")
         for r in report.per_workload])
    return "\n".join(lines) + "\n"


def utilization_plot_csv(report: UtilizationReport) -> str:
    rows = [("workload_id", "source_cpu_util", "target_cpu_util",
             "source_mem_util", "target_mem_util")]
    rows += [(r.id, r.source_cpu_util, r.target_cpu_util, r.source_mem_util, r.target_mem_util)
             for r in report.per_workload]
    return csv_text(rows)


# --- consolidation report ------------------------------------------------

def consolidation_report_text(report: ConsolidationReport) -> str:
    lines = [
        "consolidation report",
        f"  source types  {report.source_type_count}",
        f"  target types  {report.target_type_count}",
        "",
    ]
    lines += _table(
        ("source_type", "target_type", "workloads"),
        [(e.source_type, e.target_type, str(e.workload_count)) for e in report.flow_edges],
        left=frozenset({0, 1}))
    return "\n".join(lines) + "\n"


def flow_plot_csv(report: ConsolidationReport) -> str:
    rows = [("source_type", "target_type", "workload_count")]
    rows += [(e.source_type, e.target_type, e.workload_count) for e in report.flow_edges]
    return csv_text(rows)


# --- sweep report --------------------------------------------------------

def sweep_report_payload(result: SweepResult) -> dict:
    """JSON payload for the sweep summary (per-case assignments live in case files)."""
    return {
        "hours_per_year": result.hours_per_year,
        "baseline_hourly": result.baseline_hourly,
        "baseline_annual": result.baseline_annual,
        "break_even": None if result.break_even is None else {
            "last_saving_delta": result.break_even.last_saving_delta,
            "first_exceeding_delta": result.break_even.first_exceeding_delta,
        },
        "cases": [
            {
                "delta": c.delta,
                "total_hourly": c.total_hourly,
                "total_annual": c.total_annual,
                "infeasible_ids": list(c.infeasible_ids),
            }
            for c in result.cases
        ],
    }


def sweep_report_text(result: SweepResult) -> str:
    if result.break_even is None:
        break_even = "not reached"
    else:
        break_even = (f"between {result.break_even.last_saving_delta:g} "
                      f"and {result.break_even.first_exceeding_delta:g}")
    lines = [
        "sweep report",
        f"  hours per year   {result.hours_per_year}",
        f"  baseline hourly  {result.baseline_hourly:.4f} USD/h",
        f"  baseline annual  {result.baseline_annual:.2f} USD/y",
        f"  break-even       {break_even}",
        "",
    ]
    rows = []
    for c in result.cases:
        if c.total_hourly is None:
            rows.append((f"{c.delta:g}", "-", "-", ",".join(c.infeasible_ids)))
        else:
            rows.append((f"{c.delta:g}", f"{c.total_hourly:.4f}", f"{c.total_annual:.2f}", ""))
    lines += _table(("delta", "total $/h", "total $/y", "unplaceable"), rows,
                    left=frozenset({3}))
    return "\n".join(lines) + "\n"


def sweep_plot_csv(result: SweepResult) -> str:
    rows = [("delta", "total_hourly", "total_annual", "baseline_annual")]
    for c in result.cases:
        rows.append((c.delta,
                     "" if c.total_hourly is None else c.total_hourly,
                     "" if c.total_annual is None else c.total_annual,
                     result.baseline_annual))
    return csv_text(rows)


def sweep_case_payload(case_number: int, case) -> dict:
    return {
        "case": case_number,
        "delta": case.delta,
        "status": "optimal" if case.total_hourly is not None else "infeasible",
        "total_hourly": case.total_hourly,
        "total_annual": case.total_annual,
        "infeasible_ids": list(case.infeasible_ids),
        "assignment": case.assignment,
    }


# --- assignment artifact -------------------------------------------------

def assignment_records(fleet: Fleet, catalog: Catalog, solution: AssignmentSolution) -> list[dict]:
    records = []
    for i, w in enumerate(fleet.workloads, start=1):
        target = catalog.entries[solution.assignment[i] - 1]
        records.append({
            "workload_id": w.id,
            "current_type": w.current_type,
            "target_type": target.key,
            "target_hourly": target.hourly_cost,
        })
    return records


def assignment_payload(fleet: Fleet, catalog: Catalog, solution: AssignmentSolution,
                       default_delta: float) -> dict:
    return {
        "status": "optimal",
        "default_delta": default_delta,
        "total_hourly_cost": solution.total_hourly_cost,
        "assignments": assignment_records(fleet, catalog, solution),
    }


def assignment_text(fleet: Fleet, catalog: Catalog, solution: AssignmentSolution) -> str:
    lines = [
        "assignment",
        f"  total hourly cost  {solution.total_hourly_cost:.4f} USD/h",
        "",
    ]
    lines += _table(
        ("workload", "current type", "target type", "target $/h"),
        [(r["workload_id"], r["current_type"], r["target_type"], f"{r['target_hourly']:.4f}")
         for r in assignment_records(fleet, catalog, solution)],
        left=frozenset({0, 1, 2}))
    return "\n".join(lines) + "\n"


def assignment_csv(fleet: Fleet, catalog: Catalog, solution: AssignmentSolution) -> str:
    rows = [("workload_id", "current_type", "target_type", "target_hourly")]
    rows += [(r["workload_id"], r["current_type"], r["target_type"], r["target_hourly"])
             for r in assignment_records(fleet, catalog, solution)]
    return csv_text(rows)


def infeasible_payload(result: Infeasible, default_delta: float) -> dict:
    return {
        "status": "infeasible",
        "default_delta": default_delta,
        "infeasible": [
            {
                "workload_id": r.workload_id,
                "cpu_required": r.cpu_required,
                "mem_required": r.mem_required,
            }
            for r in result.rows
        ],
    }


def infeasible_text(result: Infeasible) -> str:
    lines = ["assignment", "  status: infeasible (no catalog type fits the scaled demand)", ""]
    lines += _table(
        ("workload", "needs ECU", "needs GiB"),
        [(r.workload_id, f"{r.cpu_required:.4f}", f"{r.mem_required:.4f}") for r in result.rows])
    return "\n".join(lines) + "\n"


def infeasible_csv(result: Infeasible) -> str:
    rows = [("workload_id", "cpu_required", "mem_required")]
    rows += [(r.workload_id, r.cpu_required, r.mem_required) for r in result.rows]
    return csv_text(rows)
