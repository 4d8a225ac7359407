"""Utilization telemetry: CSV ingestion and per-workload demand attributes.

A workload's demand on each resource is its mean utilization percentage plus
two standard deviations (clamped to 100), scaled against the published
capacity of the instance type it currently runs on.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from ._csvio import iter_rows
from .catalog import Catalog
from .errors import (
    DuplicateKeyError,
    DuplicateSampleError,
    InsufficientSamplesError,
    MalformedRowError,
    UnboundWorkloadError,
    UnknownTypeError,
    ValueOutOfRangeError,
)

METRICS_HEADER = ("workload_id", "timestamp", "metric", "value")
BINDINGS_HEADER = ("workload_id", "current_type")


class Metric(str, Enum):
    CPU = "cpu"
    MEM = "mem"


@dataclass(frozen=True)
class MetricSample:
    workload_id: str
    timestamp: int  # seconds since epoch
    metric: Metric
    value: float    # percent of the running instance's capacity, 0..100


@dataclass(frozen=True)
class DemandStats:
    """Summary of one utilization series, in percent of current capacity."""

    mean_pct: float
    stddev_pct: float  # sample standard deviation (n-1 denominator)
    demand_pct: float  # min(mean + 2*stddev, 100)
    sample_count: int


@dataclass(frozen=True)
class WorkloadProfile:
    """One running workload: observed demand in absolute units plus identity."""

    id: str
    current_type: str   # catalog key of the type it runs on today
    cpu_demand: float   # ECU
    mem_demand: float   # GiB
    current_cost: float  # USD/hour of the current type


@dataclass(frozen=True)
class Fleet:
    """Ordered running workloads; order fixes the row order downstream."""

    workloads: tuple[WorkloadProfile, ...]

    def __post_init__(self):
        if not self.workloads:
            raise ValueError("fleet must contain at least one workload")
        ids = [w.id for w in self.workloads]
        if len(set(ids)) != len(ids):
            raise ValueError("workload ids must be unique")

    def __len__(self) -> int:
        return len(self.workloads)


IngestedMetrics = dict[str, dict[Metric, list[MetricSample]]]


def ingest_metrics(source) -> IngestedMetrics:
    """Parse metrics CSV (``workload_id,timestamp,metric,value``).

    Samples are grouped by (workload, metric) and sorted by timestamp.
    Workloads keep their order of first appearance. Values outside [0, 100]
    and duplicate (workload, metric, timestamp) rows are rejected with the
    offending line number.
    """
    grouped: IngestedMetrics = {}
    seen: set[tuple[str, Metric, int]] = set()
    for line_no, row in iter_rows(source, METRICS_HEADER):
        workload_id, ts_text, metric_text, value_text = row
        if not workload_id:
            raise MalformedRowError(line_no, "empty workload_id")
        try:
            timestamp = int(ts_text)
        except ValueError:
            raise MalformedRowError(line_no, f"timestamp {ts_text!r} is not an integer") from None
        try:
            metric = Metric(metric_text)
        except ValueError:
            raise MalformedRowError(line_no, f"metric {metric_text!r} is not one of 'cpu', 'mem'") from None
        try:
            value = float(value_text)
        except ValueError:
            raise MalformedRowError(line_no, f"value {value_text!r} is not a number") from None
        if not 0.0 <= value <= 100.0:
            raise ValueOutOfRangeError(line_no, f"value {value_text} outside [0, 100]")
        dedup = (workload_id, metric, timestamp)
        if dedup in seen:
            raise DuplicateSampleError(
                line_no, f"duplicate sample for {workload_id!r}/{metric.value} at t={timestamp}")
        seen.add(dedup)
        grouped.setdefault(workload_id, {}).setdefault(metric, []).append(
            MetricSample(workload_id, timestamp, metric, value))
    if not grouped:
        raise MalformedRowError(1, "metrics file has no data rows")
    for by_metric in grouped.values():
        for samples in by_metric.values():
            samples.sort(key=lambda s: s.timestamp)
    return grouped


def load_bindings(source) -> dict[str, str]:
    """Parse bindings CSV (``workload_id,current_type``), preserving row order."""
    bindings: dict[str, str] = {}
    for line_no, row in iter_rows(source, BINDINGS_HEADER):
        workload_id, current_type = row
        if not workload_id or not current_type:
            raise MalformedRowError(line_no, "empty field")
        if workload_id in bindings:
            raise DuplicateKeyError(line_no, f"duplicate binding for {workload_id!r}")
        bindings[workload_id] = current_type
    return bindings


def compute_demand_stats(values: Sequence[float]) -> DemandStats:
    """Mean, sample standard deviation, and mean + 2*stddev clamped to 100.

    Requires at least two samples (the n-1 estimator is undefined below that).
    """
    if len(values) < 2:
        raise InsufficientSamplesError(f"need at least 2 samples, got {len(values)}")
    mean = float(statistics.mean(values))
    stddev = float(statistics.stdev(values))
    return DemandStats(mean, stddev, min(mean + 2.0 * stddev, 100.0), len(values))


def build_fleet(metrics: IngestedMetrics, catalog: Catalog, bindings: Mapping[str, str]) -> Fleet:
    """Turn ingested metrics into workload profiles with absolute demands.

    Each workload needs a binding to a catalog key plus cpu and mem series of
    at least two samples; its demand percentages are scaled against the bound
    type's published capacities. Workload order follows the metrics map.
    """
    workloads = []
    for workload_id, by_metric in metrics.items():
        if workload_id not in bindings:
            raise UnboundWorkloadError(f"workload {workload_id!r} has no current_type binding")
        type_key = bindings[workload_id]
        if type_key not in catalog:
            raise UnknownTypeError(f"workload {workload_id!r} is bound to unknown type {type_key!r}")
        current = catalog.lookup(type_key)
        stats: dict[Metric, DemandStats] = {}
        for metric in (Metric.CPU, Metric.MEM):
            samples = by_metric.get(metric, [])
            if len(samples) < 2:
                raise InsufficientSamplesError(
                    f"workload {workload_id!r} needs >= 2 {metric.value} samples, got {len(samples)}")
            stats[metric] = compute_demand_stats([s.value for s in samples])
        workloads.append(WorkloadProfile(
            id=workload_id,
            current_type=type_key,
            cpu_demand=stats[Metric.CPU].demand_pct / 100.0 * current.cpu_capacity,
            mem_demand=stats[Metric.MEM].demand_pct / 100.0 * current.mem_capacity,
            current_cost=current.hourly_cost,
        ))
    return Fleet(tuple(workloads))
