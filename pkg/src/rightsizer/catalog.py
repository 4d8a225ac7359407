"""Instance type catalog: loading, validation, and keyed lookup.

The catalog is the set of purchasable machine shapes a workload can be
assigned to. It is file-based and immutable after construction; entry order
fixes the column order of every matrix built from it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from ._csvio import iter_rows
from .errors import (
    DuplicateKeyError,
    MalformedRowError,
    NonPositiveCapacityError,
    NotFoundError,
)

CATALOG_HEADER = ("key", "cpu_ecu", "mem_gib", "cost_per_hour")

# keys look like '<os>.<model...>.<region>', e.g. 'rhel.m4.large.us-east'
MIN_KEY_SEGMENTS = 3


@dataclass(frozen=True)
class InstanceType:
    """One machine shape with published capacities and on-demand price."""

    key: str
    cpu_capacity: float  # ECU
    mem_capacity: float  # GiB
    hourly_cost: float   # USD/hour


@dataclass(frozen=True)
class Catalog:
    """Ordered collection of candidate instance types with unique keys."""

    entries: tuple[InstanceType, ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("catalog must contain at least one instance type")
        keys = [e.key for e in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("catalog keys must be unique")

    @cached_property
    def _index(self) -> dict[str, InstanceType]:
        return {e.key: e for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: str) -> bool:
        return key in self._index

    def lookup(self, key: str) -> InstanceType:
        """Return the entry with exactly this key (case-sensitive).

        Raises NotFoundError when the key is absent, which typically means a
        workload's current type is not covered by the catalog.
        """
        try:
            return self._index[key]
        except KeyError:
            raise NotFoundError(f"instance type {key!r} is not in the catalog") from None


def _valid_key(key: str) -> bool:
    segments = key.split(".")
    return len(segments) >= MIN_KEY_SEGMENTS and all(segments)


def load_catalog(source) -> Catalog:
    """Parse catalog CSV (header ``key,cpu_ecu,mem_gib,cost_per_hour``).

    Row order is preserved and becomes the canonical column order. Raises
    MalformedRowError, NonPositiveCapacityError, or DuplicateKeyError, each
    naming the offending line.
    """
    entries: list[InstanceType] = []
    seen: set[str] = set()
    last_line = 1
    for line_no, row in iter_rows(source, CATALOG_HEADER):
        last_line = line_no
        key = row[0]
        if not _valid_key(key):
            raise MalformedRowError(
                line_no, f"key {key!r} must have at least {MIN_KEY_SEGMENTS} non-empty dot-separated segments")
        values = []
        for name, text in zip(CATALOG_HEADER[1:], row[1:]):
            try:
                value = float(text)
            except ValueError:
                raise MalformedRowError(line_no, f"{name} {text!r} is not a number") from None
            if not math.isfinite(value):
                raise MalformedRowError(line_no, f"{name} {text!r} is not finite")
            values.append(value)
        cpu, mem, cost = values
        if cpu <= 0 or mem <= 0 or cost <= 0:
            raise NonPositiveCapacityError(line_no, f"{key!r}: capacities and cost must be positive")
        if key in seen:
            raise DuplicateKeyError(line_no, f"duplicate key {key!r}")
        seen.add(key)
        entries.append(InstanceType(key, cpu, mem, cost))
    if not entries:
        raise MalformedRowError(last_line, "catalog has no data rows")
    return Catalog(tuple(entries))


def dump_catalog(catalog: Catalog) -> bytes:
    """Serialize a catalog back to CSV; loading the result reproduces it."""
    lines = [",".join(CATALOG_HEADER)]
    for e in catalog.entries:
        lines.append(f"{e.key},{e.cpu_capacity!r},{e.mem_capacity!r},{e.hourly_cost!r}")
    return ("\n".join(lines) + "\n").encode("utf-8")
