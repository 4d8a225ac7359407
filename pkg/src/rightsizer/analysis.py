"""Post-solve analyses: cost projection, headroom sweep, utilization, consolidation.

Annual figures are hourly figures times a configurable hours-per-year
(8760 by default). The sweep solves the model once per utilization factor
and brackets the break-even point where the optimized fleet's projected
annual cost first exceeds the baseline.
"""

from __future__ import annotations

import math
import statistics
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .catalog import Catalog
from .errors import (
    DegenerateVarianceError,
    InsufficientSamplesError,
    InvalidDeltasError,
    RowMismatchError,
)
from .metrics import Fleet
from .model import UtilizationPolicy, build_model
from .solve import AssignmentSolution, Infeasible, solve_exact

HOURS_PER_YEAR = 8760


def default_sweep_deltas() -> tuple[float, ...]:
    """Utilization factors 1.0 through 4.0 in 0.1 steps: 31 sweep cases."""
    return tuple(round(1.0 + k * 0.1, 10) for k in range(31))


def _check_coverage(fleet: Fleet, solution: AssignmentSolution) -> None:
    expected = set(range(1, len(fleet.workloads) + 1))
    if set(solution.assignment) != expected:
        raise RowMismatchError(
            f"solution covers rows {sorted(solution.assignment)}, fleet has rows 1..{len(fleet.workloads)}")


@dataclass(frozen=True)
class WorkloadCost:
    id: str
    source_hourly: float
    target_hourly: float
    delta: float  # target minus source, USD/hour


@dataclass(frozen=True)
class CostReport:
    baseline_hourly: float
    target_hourly: float
    baseline_annual: float
    target_annual: float
    savings_fraction: float  # 1 - target_annual / baseline_annual
    hours_per_year: int
    per_workload: tuple[WorkloadCost, ...]


def project_costs(fleet: Fleet, catalog: Catalog, solution: AssignmentSolution,
                  hours_per_year: int = HOURS_PER_YEAR) -> CostReport:
    """Hourly and projected annual cost of the current fleet versus its assignment."""
    _check_coverage(fleet, solution)
    per_workload = []
    baseline_hourly = 0.0
    target_hourly = 0.0
    for i, w in enumerate(fleet.workloads, start=1):
        target = catalog.entries[solution.assignment[i] - 1]
        per_workload.append(WorkloadCost(
            w.id, w.current_cost, target.hourly_cost, target.hourly_cost - w.current_cost))
        baseline_hourly += w.current_cost
        target_hourly += target.hourly_cost
    baseline_annual = baseline_hourly * hours_per_year
    target_annual = target_hourly * hours_per_year
    return CostReport(
        baseline_hourly=baseline_hourly,
        target_hourly=target_hourly,
        baseline_annual=baseline_annual,
        target_annual=target_annual,
        savings_fraction=1.0 - target_annual / baseline_annual,
        hours_per_year=hours_per_year,
        per_workload=tuple(per_workload),
    )


@dataclass(frozen=True)
class SweepCase:
    delta: float
    total_hourly: float | None   # None when the case is infeasible
    total_annual: float | None
    infeasible_ids: tuple[str, ...]
    assignment: dict[str, str] | None  # workload id -> assigned type key


@dataclass(frozen=True)
class BreakEven:
    last_saving_delta: float
    first_exceeding_delta: float


@dataclass(frozen=True)
class SweepResult:
    cases: tuple[SweepCase, ...]
    break_even: BreakEven | None
    baseline_hourly: float
    baseline_annual: float
    hours_per_year: int


def run_sweep(fleet: Fleet, catalog: Catalog, deltas: Sequence[float] | None = None,
              hours_per_year: int = HOURS_PER_YEAR) -> SweepResult:
    """Solve once per utilization factor with a uniform policy.

    Factors must be strictly increasing and all >= 1; the 31-case default
    covers 1.0..4.0 in 0.1 steps. Cases with unplaceable workloads record the
    offending ids and no totals, without aborting the sweep. The break-even
    bracket is the pair of consecutive feasible factors between which
    total_annual first exceeds baseline_annual; it is absent when the
    baseline is never exceeded or is exceeded from the first feasible case.
    """
    sweep = default_sweep_deltas() if deltas is None else tuple(deltas)
    if not sweep:
        raise InvalidDeltasError("at least one utilization factor required")
    if not (math.isfinite(sweep[0]) and sweep[0] >= 1.0):
        raise InvalidDeltasError(f"factors must be >= 1, got {sweep[0]}")
    for a, b in zip(sweep, sweep[1:]):
        if not b > a:
            raise InvalidDeltasError(f"factors must be strictly increasing, got {a} then {b}")

    baseline_hourly = 0.0
    for w in fleet.workloads:
        baseline_hourly += w.current_cost
    baseline_annual = baseline_hourly * hours_per_year

    cases = []
    for delta in sweep:
        model = build_model(fleet, catalog, UtilizationPolicy.uniform(delta))
        result = solve_exact(model)
        if isinstance(result, Infeasible):
            cases.append(SweepCase(
                delta, None, None, tuple(r.workload_id for r in result.rows), None))
        else:
            assigned = {w.id: catalog.entries[result.assignment[i] - 1].key
                        for i, w in enumerate(fleet.workloads, start=1)}
            cases.append(SweepCase(
                delta, result.total_hourly_cost, result.total_hourly_cost * hours_per_year,
                (), assigned))

    break_even = None
    previous = None
    for case in cases:
        if case.total_annual is None:
            continue
        if case.total_annual > baseline_annual:
            if previous is not None:
                break_even = BreakEven(previous.delta, case.delta)
            break
        previous = case
    return SweepResult(tuple(cases), break_even, baseline_hourly, baseline_annual, hours_per_year)


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    degrees_of_freedom: float
    variant: str = "student_pooled"


def t_test(sample_a: Sequence[float], sample_b: Sequence[float]) -> TTestResult:
    """Two-sample Student's t with pooled variance; df = n_a + n_b - 2.

    The sign follows mean_a - mean_b, so t < 0 when sample_a's mean is the
    smaller one. Raises DegenerateVarianceError when the pooled variance is
    zero while the means differ; zero variance with equal means gives t = 0.
    """
    n_a, n_b = len(sample_a), len(sample_b)
    if n_a < 2 or n_b < 2:
        raise InsufficientSamplesError(f"each sample needs >= 2 values, got {n_a} and {n_b}")
    mean_a = statistics.mean(sample_a)
    mean_b = statistics.mean(sample_b)
    df = n_a + n_b - 2
    pooled = ((n_a - 1) * statistics.variance(sample_a)
              + (n_b - 1) * statistics.variance(sample_b)) / df
    if pooled == 0.0:
        if mean_a != mean_b:
            raise DegenerateVarianceError("pooled variance is zero but the means differ")
        return TTestResult(0.0, float(df))
    t = (mean_a - mean_b) / math.sqrt(pooled * (1.0 / n_a + 1.0 / n_b))
    return TTestResult(t, float(df))


@dataclass(frozen=True)
class WorkloadUtilization:
    id: str
    source_cpu_util: float  # demand / capacity of the current type, 0..1
    target_cpu_util: float  # demand / capacity of the assigned type
    source_mem_util: float
    target_mem_util: float


@dataclass(frozen=True)
class UtilizationMeans:
    source_cpu: float
    target_cpu: float
    source_mem: float
    target_mem: float


@dataclass(frozen=True)
class UtilizationReport:
    per_workload: tuple[WorkloadUtilization, ...]
    means: UtilizationMeans
    cpu_ttest: TTestResult | None  # None when under two workloads or degenerate spread
    mem_ttest: TTestResult | None


def _safe_t_test(a: list[float], b: list[float]) -> TTestResult | None:
    try:
        return t_test(a, b)
    except (InsufficientSamplesError, DegenerateVarianceError):
        return None


def utilization_report(fleet: Fleet, catalog: Catalog,
                       solution: AssignmentSolution) -> UtilizationReport:
    """Demand/capacity fractions before and after reassignment, with t-tests."""
    _check_coverage(fleet, solution)
    rows = []
    for i, w in enumerate(fleet.workloads, start=1):
        current = catalog.lookup(w.current_type)
        target = catalog.entries[solution.assignment[i] - 1]
        rows.append(WorkloadUtilization(
            id=w.id,
            source_cpu_util=w.cpu_demand / current.cpu_capacity,
            target_cpu_util=w.cpu_demand / target.cpu_capacity,
            source_mem_util=w.mem_demand / current.mem_capacity,
            target_mem_util=w.mem_demand / target.mem_capacity,
        ))
    source_cpu = [r.source_cpu_util for r in rows]
    target_cpu = [r.target_cpu_util for r in rows]
    source_mem = [r.source_mem_util for r in rows]
    target_mem = [r.target_mem_util for r in rows]
    means = UtilizationMeans(
        statistics.mean(source_cpu), statistics.mean(target_cpu),
        statistics.mean(source_mem), statistics.mean(target_mem))
    return UtilizationReport(
        per_workload=tuple(rows),
        means=means,
        cpu_ttest=_safe_t_test(source_cpu, target_cpu),
        mem_ttest=_safe_t_test(source_mem, target_mem),
    )


@dataclass(frozen=True)
class FlowEdge:
    source_type: str
    target_type: str
    workload_count: int


@dataclass(frozen=True)
class ConsolidationReport:
    source_type_count: int
    target_type_count: int
    flow_edges: tuple[FlowEdge, ...]


def consolidation_report(fleet: Fleet, catalog: Catalog,
                         solution: AssignmentSolution) -> ConsolidationReport:
    """Distinct-type shrinkage and the source-to-target migration flow.

    Edge counts over all edges sum to the fleet size; edges are sorted by
    (source_type, target_type) for stable output.
    """
    _check_coverage(fleet, solution)
    edges: Counter[tuple[str, str]] = Counter()
    sources: set[str] = set()
    targets: set[str] = set()
    for i, w in enumerate(fleet.workloads, start=1):
        target_key = catalog.entries[solution.assignment[i] - 1].key
        sources.add(w.current_type)
        targets.add(target_key)
        edges[(w.current_type, target_key)] += 1
    flow = tuple(FlowEdge(s, t, c) for (s, t), c in sorted(edges.items()))
    return ConsolidationReport(len(sources), len(targets), flow)
