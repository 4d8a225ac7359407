"""Assignment model assembly: cost matrix, feasibility mask, AMPL export.

Rows are fleet workloads, columns are catalog entries. A column j is feasible
for row i when the workload's demand, multiplied by its utilization factor,
fits the column's published capacities on both resources. All row and column
numbers in the public surface are 1-based, matching the exported formulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from ._csvio import iter_rows
from .catalog import Catalog
from .errors import (
    DuplicateKeyError,
    IndexOutOfRangeError,
    InvalidPolicyError,
    MalformedRowError,
    UnknownTypeError,
)
from .metrics import Fleet

POLICY_HEADER = ("workload_id", "delta")


@dataclass(frozen=True)
class UtilizationPolicy:
    """Per-workload headroom multipliers applied to observed demand.

    A factor of 1 means future load is expected to match the observed load;
    larger values reserve growth headroom. Factors below 1 are invalid.
    """

    default: float
    factors: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.default >= 1.0:
            raise InvalidPolicyError(f"default utilization factor {self.default} is < 1")
        for workload_id, factor in self.factors.items():
            if not factor >= 1.0:
                raise InvalidPolicyError(f"utilization factor {factor} for {workload_id!r} is < 1")

    @classmethod
    def uniform(cls, delta: float) -> "UtilizationPolicy":
        return cls(default=delta)

    def delta_for(self, workload_id: str) -> float:
        return self.factors.get(workload_id, self.default)


def load_policy(source, default: float) -> UtilizationPolicy:
    """Parse per-workload factor CSV (``workload_id,delta``) over a default."""
    factors: dict[str, float] = {}
    for line_no, row in iter_rows(source, POLICY_HEADER):
        workload_id, delta_text = row
        try:
            delta = float(delta_text)
        except ValueError:
            raise MalformedRowError(line_no, f"delta {delta_text!r} is not a number") from None
        if not math.isfinite(delta):
            raise MalformedRowError(line_no, f"delta {delta_text!r} is not finite")
        if not delta >= 1.0:
            raise InvalidPolicyError(f"line {line_no}: utilization factor {delta} for {workload_id!r} is < 1")
        if workload_id in factors:
            raise DuplicateKeyError(line_no, f"duplicate factor for {workload_id!r}")
        factors[workload_id] = delta
    return UtilizationPolicy(default=default, factors=factors)


@dataclass(frozen=True)
class AssignmentModel:
    """Immutable matrices for one fleet-to-catalog assignment problem.

    `cost` is column-constant by construction: entry (i, j) is the hourly
    cost of catalog column j regardless of the row. `scaled_cpu`/`scaled_mem`
    cache each row's demand times its utilization factor.
    """

    fleet: Fleet
    catalog: Catalog
    policy: UtilizationPolicy
    cost: tuple[tuple[float, ...], ...]
    feasible: tuple[tuple[bool, ...], ...]
    scaled_cpu: tuple[float, ...]
    scaled_mem: tuple[float, ...]

    @property
    def row_count(self) -> int:
        return len(self.fleet.workloads)

    @property
    def column_count(self) -> int:
        return len(self.catalog.entries)


def build_model(fleet: Fleet, catalog: Catalog, policy: UtilizationPolicy) -> AssignmentModel:
    """Size the M x N cost and feasibility matrices for this fleet and catalog.

    Feasibility uses exact <= comparisons on the scaled demands; ties at
    exact capacity are legitimate assignments. Every workload's current type
    must resolve in the catalog and every factor must be >= 1.
    """
    cost_row = tuple(e.hourly_cost for e in catalog.entries)
    cost = []
    feasible = []
    scaled_cpu = []
    scaled_mem = []
    for w in fleet.workloads:
        if w.current_type not in catalog:
            raise UnknownTypeError(f"workload {w.id!r} has current type {w.current_type!r} not in catalog")
        factor = policy.delta_for(w.id)
        if not factor >= 1.0:
            raise InvalidPolicyError(f"utilization factor {factor} for {w.id!r} is < 1")
        cpu_needed = w.cpu_demand * factor
        mem_needed = w.mem_demand * factor
        scaled_cpu.append(cpu_needed)
        scaled_mem.append(mem_needed)
        feasible.append(tuple(
            cpu_needed <= e.cpu_capacity and mem_needed <= e.mem_capacity
            for e in catalog.entries))
        cost.append(cost_row)
    return AssignmentModel(
        fleet=fleet,
        catalog=catalog,
        policy=policy,
        cost=tuple(cost),
        feasible=tuple(feasible),
        scaled_cpu=tuple(scaled_cpu),
        scaled_mem=tuple(scaled_mem),
    )


def feasible_set(model: AssignmentModel, row: int) -> list[int]:
    """Columns (1-based, catalog order) able to host the given row (1-based)."""
    if not 1 <= row <= model.row_count:
        raise IndexOutOfRangeError(f"row {row} outside 1..{model.row_count}")
    return [j + 1 for j, ok in enumerate(model.feasible[row - 1]) if ok]


@dataclass(frozen=True)
class AmplExport:
    model_text: str
    data_text: str


_MODEL_TEXT = """\
set SERV;   # running servers to be reassigned
set INST;   # candidate instance types

param cpu_s {INST} >= 0;   # CPU capacity supplied, ECU
param mem_s {INST} >= 0;   # memory capacity supplied, GiB
param cpu_d {SERV} >= 0;   # CPU demand observed, ECU
param mem_d {SERV} >= 0;   # memory demand observed, GiB
param d {SERV} >= 1;       # utilization headroom factor
param cost {SERV,INST} >= 0;

var Trans {SERV,INST} >= 0, integer;

minimize Total_Cost:
    sum {i in SERV, j in INST}
        cost[i,j] * Trans[i,j];

subject to CPU{i in SERV, j in INST}:
    Trans[i,j] * cpu_d[i] * d[i] <= cpu_s[j];

subject to Memory{i in SERV, j in INST}:
    Trans[i,j] * mem_d[i] * d[i] <= mem_s[j];

subject to Total{i in SERV}:
    sum {j in INST}
        Trans[i,j] = 1;
"""


def _quoted(name: str) -> str:
    return "'" + name + "'"


def _num(value: float) -> str:
    return repr(float(value))


def _set_statement(name: str, members: list[str]) -> str:
    lines = [f"set {name} :="]
    for i in range(0, len(members), 6):
        lines.append("    " + " ".join(members[i:i + 6]))
    lines.append(";")
    return "\n".join(lines)


def _param_statement(name: str, pairs: list[tuple[str, float]]) -> str:
    lines = [f"param {name} :="]
    for member, value in pairs:
        lines.append(f"    {member} {_num(value)}")
    lines.append(";")
    return "\n".join(lines)


def export_ampl(model: AssignmentModel) -> AmplExport:
    """Render the assignment program as model + data text.

    Both texts use LF line endings and are byte-identical across repeated
    exports of the same model, so they can serve as golden artifacts or be
    fed to an external solver for a cross-check.
    """
    servers = [_quoted(w.id) for w in model.fleet.workloads]
    insts = [_quoted(e.key) for e in model.catalog.entries]
    workloads = model.fleet.workloads

    cost_lines = [f"param cost : {' '.join(insts)} :="]
    for name, row in zip(servers, model.cost):
        cost_lines.append("    " + name + " " + " ".join(_num(c) for c in row))
    cost_lines.append(";")

    parts = [
        _set_statement("SERV", servers),
        _set_statement("INST", insts),
        _param_statement("cpu_d", [(n, w.cpu_demand) for n, w in zip(servers, workloads)]),
        _param_statement("mem_d", [(n, w.mem_demand) for n, w in zip(servers, workloads)]),
        _param_statement("d", [(n, model.policy.delta_for(w.id)) for n, w in zip(servers, workloads)]),
        _param_statement("cpu_s", [(n, e.cpu_capacity) for n, e in zip(insts, model.catalog.entries)]),
        _param_statement("mem_s", [(n, e.mem_capacity) for n, e in zip(insts, model.catalog.entries)]),
        "\n".join(cost_lines),
    ]
    return AmplExport(model_text=_MODEL_TEXT, data_text="\n\n".join(parts) + "\n")
