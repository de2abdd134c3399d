"""Correlate per-key aggregates of a dataset against a reference table.

The reference ("ground truth") table is a CSV keyed by the same identifier
as the dataset (typically a zip code): first column the key, remaining
numeric columns the demographics, an optional column named "population".
Dataset rows are reduced per key (sum/mean/count/per-capita), inner-joined
to the reference keys, and each demographic column gets a Pearson r. The
output splits into positive and negative lists; zero-variance demographics
are reported as undefined and excluded from both.

Keys normalize by trimming whitespace; all-digit keys of up to five digits
are left-padded with zeros to five, so "2138" and "02138" join.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ConfigError, ProfileError
from .ingest import DataTable, parse_number
from .pairs import pearson

AGGREGATES = ("sum", "mean", "count", "per_capita")
POPULATION_COLUMN = "population"
MIN_JOIN_KEYS = 3

_ASCII_WS = " \t\r\n\f\v"


def normalize_key(raw: str) -> str:
    """Trim a join key; left-pad all-digit keys of <= 5 digits to 5 ("2138" -> "02138")."""
    key = raw.strip(_ASCII_WS)
    if key.isdigit() and len(key) <= 5:
        return key.zfill(5)
    return key


@dataclass(frozen=True)
class GroundTruthTable:
    """Reference table with one row per normalized key.

    ``demographics`` maps key -> per-column values aligned with
    ``demographic_columns``; ``population`` is present only when the source
    table had a population column.
    """

    key_column: str
    demographic_columns: tuple[str, ...]
    population_column: str | None
    demographics: Mapping[str, tuple[float, ...]]
    population: Mapping[str, float] | None

    def value(self, key: str, demographic: str) -> float:
        return self.demographics[key][self.demographic_columns.index(demographic)]


def ground_truth_from_table(
    table: DataTable,
    key_column: str | None = None,
    population_column: str | None = None,
) -> GroundTruthTable:
    """Interpret a parsed CSV as a ground-truth table.

    Defaults: the first column is the key; a column literally named
    "population" is the population when present. All demographic and
    population cells must be present and numeric; population must be
    positive; keys must be unique after normalization.
    """
    if not table.columns:
        raise ProfileError(f"{table.source_name}: ground truth table has no columns")
    key_col = key_column or table.columns[0]
    if key_col not in table.columns:
        raise ConfigError(f"ground truth key column {key_col!r} not found")

    if population_column is not None:
        if population_column not in table.columns:
            raise ConfigError(f"population column {population_column!r} not found")
        pop_col: str | None = population_column
    else:
        pop_col = POPULATION_COLUMN if POPULATION_COLUMN in table.columns else None

    demo_cols = tuple(c for c in table.columns if c != key_col and c != pop_col)
    if not demo_cols:
        raise ProfileError(f"{table.source_name}: no demographic columns besides the key")

    key_idx = table.column_index(key_col)
    demo_idx = [table.column_index(c) for c in demo_cols]
    pop_idx = table.column_index(pop_col) if pop_col else None

    demographics: dict[str, tuple[float, ...]] = {}
    population: dict[str, float] = {}
    for i, (row, mask) in enumerate(zip(table.cells, table.missing_mask)):
        if mask[key_idx]:
            raise ProfileError(f"ground truth row {i + 2}: missing key")
        key = normalize_key(row[key_idx])
        if key in demographics:
            raise ProfileError(f"ground truth row {i + 2}: duplicate key {key!r}")

        values = []
        for col, j in zip(demo_cols, demo_idx):
            if mask[j]:
                raise ProfileError(f"ground truth row {i + 2}: column {col!r} is missing")
            parsed = parse_number(row[j])
            if parsed is None:
                raise ProfileError(
                    f"ground truth row {i + 2}: column {col!r} cell {row[j]!r} is not a number"
                )
            values.append(parsed)
        demographics[key] = tuple(values)

        if pop_idx is not None:
            if mask[pop_idx]:
                raise ProfileError(f"ground truth row {i + 2}: population is missing")
            pop = parse_number(row[pop_idx])
            if pop is None or pop <= 0:
                raise ProfileError(
                    f"ground truth row {i + 2}: population {row[pop_idx]!r} "
                    "is not a positive number"
                )
            population[key] = pop

    return GroundTruthTable(
        key_column=key_col,
        demographic_columns=demo_cols,
        population_column=pop_col,
        demographics=demographics,
        population=population if pop_col else None,
    )


@dataclass(frozen=True)
class KeyAggregates:
    """Per-key reduction of one dataset column.

    ``dataset_keys`` holds every key observed in the dataset even when the
    aggregate later restricts to joinable keys (per-capita), so unmatched
    counts stay truthful.
    """

    key_column: str
    value_column: str
    aggregate: str
    values: Mapping[str, float]
    dataset_keys: frozenset[str]
    excluded_rows: int


def aggregate_by_key(
    table: DataTable,
    key_column: str,
    value_column: str,
    aggregate: str,
    ground_truth: GroundTruthTable | None = None,
) -> KeyAggregates:
    """Reduce a dataset column per normalized key.

    Rows with a missing key or missing value are excluded and counted.
    ``count`` tallies rows per key; the others need numeric values.
    ``per_capita`` divides the per-key sum by the ground-truth population,
    keeping only keys with a known population.
    """
    if aggregate not in AGGREGATES:
        raise ConfigError(f"unknown aggregate {aggregate!r}; expected one of {', '.join(AGGREGATES)}")
    if aggregate == "per_capita":
        if ground_truth is None or ground_truth.population is None:
            raise ConfigError("per_capita aggregation needs a ground truth table with a population column")

    key_idx = table.column_index(key_column)
    value_idx = table.column_index(value_column)

    groups: dict[str, list[float]] = {}
    excluded = 0
    for i, (row, mask) in enumerate(zip(table.cells, table.missing_mask)):
        if mask[key_idx] or mask[value_idx]:
            excluded += 1
            continue
        key = normalize_key(row[key_idx])
        if aggregate == "count":
            value = 1.0
        else:
            parsed = parse_number(row[value_idx])
            if parsed is None:
                raise ProfileError(
                    f"column {value_column!r}, row {i + 2}: cell {row[value_idx]!r} is not a number"
                )
            value = parsed
        groups.setdefault(key, []).append(value)

    if aggregate == "count":
        values = {k: float(len(vs)) for k, vs in groups.items()}
    elif aggregate == "sum":
        values = {k: math.fsum(vs) for k, vs in groups.items()}
    elif aggregate == "mean":
        values = {k: math.fsum(vs) / len(vs) for k, vs in groups.items()}
    else:
        assert ground_truth is not None and ground_truth.population is not None
        values = {
            k: math.fsum(vs) / ground_truth.population[k]
            for k, vs in groups.items()
            if k in ground_truth.population
        }

    return KeyAggregates(
        key_column=key_column,
        value_column=value_column,
        aggregate=aggregate,
        values=values,
        dataset_keys=frozenset(groups),
        excluded_rows=excluded,
    )


@dataclass(frozen=True)
class CorrelationEntry:
    demographic: str
    r: float | None


@dataclass(frozen=True)
class CorrelationReport:
    aggregate: str
    value_column: str
    key_column: str
    joined_keys: int
    unmatched_dataset_keys: int
    unmatched_ground_truth_keys: int
    excluded_rows: int
    entries: tuple[CorrelationEntry, ...]
    positive: tuple[CorrelationEntry, ...]
    negative: tuple[CorrelationEntry, ...]


def correlate(
    aggregates: KeyAggregates,
    ground_truth: GroundTruthTable,
    demographic_columns: Sequence[str] | None = None,
) -> CorrelationReport:
    """Pearson r of the aggregate vector against each demographic column.

    The join is inner over normalized keys; fewer than three joined keys is
    an error. Entries keep demographic input order; the positive list sorts
    r descending, the negative list ascending, ties broken by name.
    """
    demo_cols = tuple(demographic_columns or ground_truth.demographic_columns)
    for col in demo_cols:
        if col not in ground_truth.demographic_columns:
            raise ConfigError(f"demographic column {col!r} not in the ground truth table")

    joined = sorted(set(aggregates.values) & set(ground_truth.demographics))
    if len(joined) < MIN_JOIN_KEYS:
        raise ProfileError(
            f"inner join matched {len(joined)} keys, need at least {MIN_JOIN_KEYS}"
        )

    x = [aggregates.values[k] for k in joined]
    entries = []
    for col in demo_cols:
        y = [ground_truth.value(k, col) for k in joined]
        entries.append(CorrelationEntry(demographic=col, r=pearson(x, y)))

    positive = sorted(
        (e for e in entries if e.r is not None and e.r > 0),
        key=lambda e: (-e.r, e.demographic),
    )
    negative = sorted(
        (e for e in entries if e.r is not None and e.r < 0),
        key=lambda e: (e.r, e.demographic),
    )
    return CorrelationReport(
        aggregate=aggregates.aggregate,
        value_column=aggregates.value_column,
        key_column=aggregates.key_column,
        joined_keys=len(joined),
        unmatched_dataset_keys=len(aggregates.dataset_keys - set(ground_truth.demographics)),
        unmatched_ground_truth_keys=len(set(ground_truth.demographics) - aggregates.dataset_keys),
        excluded_rows=aggregates.excluded_rows,
        entries=tuple(entries),
        positive=tuple(positive),
        negative=tuple(negative),
    )


def build_reports(
    table: DataTable,
    ground_truth: GroundTruthTable,
    dataset_key: str,
    value_column: str,
    aggregates: Sequence[str],
) -> list[CorrelationReport]:
    """One correlation report per requested aggregate, in request order."""
    return [
        correlate(
            aggregate_by_key(table, dataset_key, value_column, agg, ground_truth),
            ground_truth,
        )
        for agg in aggregates
    ]
