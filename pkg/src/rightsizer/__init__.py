"""Assign running cloud workloads to the cheapest instance types that fit
their observed resource demand, and analyze the cost, utilization, and
consolidation effects of doing so."""

from .analysis import (
    HOURS_PER_YEAR,
    BreakEven,
    ConsolidationReport,
    CostReport,
    FlowEdge,
    SweepCase,
    SweepResult,
    TTestResult,
    UtilizationMeans,
    UtilizationReport,
    WorkloadCost,
    WorkloadUtilization,
    consolidation_report,
    default_sweep_deltas,
    project_costs,
    run_sweep,
    t_test,
    utilization_report,
)
from .catalog import Catalog, InstanceType, dump_catalog, load_catalog
from .metrics import (
    DemandStats,
    Fleet,
    Metric,
    MetricSample,
    WorkloadProfile,
    build_fleet,
    compute_demand_stats,
    ingest_metrics,
    load_bindings,
)
from .model import (
    AmplExport,
    AssignmentModel,
    UtilizationPolicy,
    build_model,
    export_ampl,
    feasible_set,
    load_policy,
)
from .solve import (
    AssignmentSolution,
    Infeasible,
    InfeasibleRow,
    Violation,
    solve_bruteforce,
    solve_exact,
    validate_solution,
)
from .synth import SynthOutput, SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "HOURS_PER_YEAR",
    "AmplExport",
    "AssignmentModel",
    "AssignmentSolution",
    "BreakEven",
    "Catalog",
    "ConsolidationReport",
    "CostReport",
    "DemandStats",
    "Fleet",
    "FlowEdge",
    "Infeasible",
    "InfeasibleRow",
    "InstanceType",
    "Metric",
    "MetricSample",
    "SweepCase",
    "SweepResult",
    "SynthOutput",
    "SynthSpec",
    "TTestResult",
    "UtilizationMeans",
    "UtilizationPolicy",
    "UtilizationReport",
    "Violation",
    "WorkloadCost",
    "WorkloadProfile",
    "WorkloadUtilization",
    "build_fleet",
    "build_model",
    "compute_demand_stats",
    "consolidation_report",
    "default_sweep_deltas",
    "dump_catalog",
    "export_ampl",
    "feasible_set",
    "generate",
    "ingest_metrics",
    "load_bindings",
    "load_catalog",
    "load_policy",
    "project_costs",
    "run_sweep",
    "solve_bruteforce",
    "solve_exact",
    "t_test",
    "utilization_report",
    "validate_solution",
]
