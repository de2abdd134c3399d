"""Per-column summary statistics grouped into four strata.

Categorical columns (ordinal/nominal strata) get frequency tables over the
raw cell text; missing cells participate as one pseudo-entry named
"missing value". Numeric columns (continuous/discrete strata) get order
statistics and moments over non-missing values.

Formatting conventions: per-column percents carry two decimals ("3.20%"),
the dataset-level missing percent carries one ("5.2%"), both rounded
half-away-from-zero.
"""

from __future__ import annotations

import statistics as pystats
from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping, Sequence

from .errors import ProfileError
from .ingest import ColumnKind, DataTable, parse_number

MISSING_LABEL = "missing value"
TIE_LABEL = "multiple detected"


def percent_display(numerator: int, denominator: int, decimals: int) -> str:
    """Format numerator/denominator as a percent string, e.g. "3.20%".

    Rounds half-away-from-zero at the requested decimal count. A zero
    denominator formats as zero.
    """
    if denominator == 0:
        ratio = Decimal(0)
    else:
        ratio = Decimal(numerator * 100) / Decimal(denominator)
    quantum = Decimal(1).scaleb(-decimals) if decimals else Decimal(1)
    return f"{ratio.quantize(quantum, rounding=ROUND_HALF_UP)}%"


@dataclass(frozen=True)
class FrequencyCell:
    """One extreme of a frequency table.

    kind is "value" for a real entry, "missing_pseudo" for the missing
    pseudo-entry, or "tie" when several entries share the extreme count.
    """

    kind: str
    value: str | None
    frequency: int | None

    def __post_init__(self) -> None:
        if self.kind not in ("value", "missing_pseudo", "tie"):
            raise ValueError(f"unknown frequency cell kind: {self.kind!r}")
        if self.kind == "tie":
            if self.value is not None or self.frequency is not None:
                raise ValueError("tie cells carry no value or frequency")
        else:
            if self.frequency is None or self.frequency < 1:
                raise ValueError("non-tie cells need a frequency >= 1")

    @property
    def display(self) -> str:
        if self.kind == "tie":
            return TIE_LABEL
        name = MISSING_LABEL if self.kind == "missing_pseudo" else self.value
        return f"{name} ({self.frequency})"


@dataclass(frozen=True)
class CategoricalProfile:
    name: str
    subtype: str
    count: int
    unique_entries: int
    unique_includes_missing: bool
    most_frequent: FrequencyCell
    least_frequent: FrequencyCell
    missing_pct: str
    missing_fraction: float


@dataclass(frozen=True)
class NumericProfile:
    name: str
    count: int
    min: float
    median: float
    max: float
    mean: float
    standard_deviation: float | None
    missing_pct: str
    missing_fraction: float
    zeros_pct: str


@dataclass(frozen=True)
class DatasetProfile:
    """Statistics for a whole table: per-stratum profile lists in dataset
    column order, plus the dataset-level missing fraction used by metadata."""

    ordinal: tuple[CategoricalProfile, ...]
    nominal: tuple[CategoricalProfile, ...]
    continuous: tuple[NumericProfile, ...]
    discrete: tuple[NumericProfile, ...]
    dataset_missing_fraction: float


def _extreme_cell(table: Counter[str | None], pick_max: bool) -> FrequencyCell:
    # Keys are raw values; None stands for the missing pseudo-entry.
    extreme = max(table.values()) if pick_max else min(table.values())
    holders = [key for key, n in table.items() if n == extreme]
    # The pseudo-entry loses ties to real values; it claims the slot only
    # when it strictly holds the extreme alone.
    if len(holders) > 1 and None in holders:
        holders.remove(None)
    if len(holders) > 1:
        return FrequencyCell(kind="tie", value=None, frequency=None)
    key = holders[0]
    if key is None:
        return FrequencyCell(kind="missing_pseudo", value=None, frequency=extreme)
    return FrequencyCell(kind="value", value=key, frequency=extreme)


def profile_categorical(
    column: Sequence[tuple[str, bool]], name: str, kind: ColumnKind
) -> CategoricalProfile:
    """Frequency-table summary of an ordinal or nominal column.

    ``column`` is (raw value, missing flag) pairs. ``count`` is the total
    row count; missing cells enter the table as the pseudo-entry.
    """
    if kind.stratum not in ("ordinal", "nominal"):
        raise ProfileError(f"column {name!r}: stratum {kind.stratum} is not categorical")
    if not column:
        raise ProfileError(f"column {name!r} is empty, nothing to profile")

    table: Counter[str | None] = Counter()
    for raw, missing in column:
        table[None if missing else raw] += 1
    missing_count = table.get(None, 0)

    return CategoricalProfile(
        name=name,
        subtype=kind.subtype,
        count=len(column),
        unique_entries=len(table),
        unique_includes_missing=missing_count > 0,
        most_frequent=_extreme_cell(table, pick_max=True),
        least_frequent=_extreme_cell(table, pick_max=False),
        missing_pct=percent_display(missing_count, len(column), 2),
        missing_fraction=missing_count / len(column),
    )


def profile_numeric(
    column: Sequence[tuple[str, bool]], name: str, kind: ColumnKind
) -> NumericProfile:
    """Order statistics and moments of a continuous or discrete column.

    Statistics cover non-missing values; ``count`` is the total row count.
    Median of an even-length column is the average of the two middle order
    statistics. Standard deviation uses the n-1 denominator and is None
    when fewer than two values are present.
    """
    if kind.stratum not in ("continuous", "discrete"):
        raise ProfileError(f"column {name!r}: stratum {kind.stratum} is not numeric")
    if not column:
        raise ProfileError(f"column {name!r} is empty, nothing to profile")

    values: list[float] = []
    missing_count = 0
    for i, (raw, missing) in enumerate(column):
        if missing:
            missing_count += 1
            continue
        parsed = parse_number(raw)
        if parsed is None:
            raise ProfileError(f"column {name!r}, row {i + 2}: cell {raw!r} is not a number")
        values.append(parsed)
    if not values:
        raise ProfileError(f"column {name!r} has no non-missing values to summarize")

    zeros = sum(1 for v in values if v == 0)
    return NumericProfile(
        name=name,
        count=len(column),
        min=min(values),
        median=float(pystats.median(values)),
        max=max(values),
        mean=pystats.fmean(values),
        standard_deviation=pystats.stdev(values) if len(values) >= 2 else None,
        missing_pct=percent_display(missing_count, len(column), 2),
        missing_fraction=missing_count / len(column),
        zeros_pct=percent_display(zeros, len(values), 2),
    )


def profile_dataset(table: DataTable, kinds: Mapping[str, ColumnKind]) -> DatasetProfile:
    """Profile every column of a table, routed by stratum.

    Column order inside each stratum list follows dataset column order.
    """
    buckets: dict[str, list] = {stratum: [] for stratum in ("ordinal", "nominal", "continuous", "discrete")}
    for name in table.columns:
        if name not in kinds:
            raise ProfileError(f"no column kind provided for {name!r}")
        kind = kinds[name]
        pairs = table.column_pairs(name)
        if kind.is_categorical:
            buckets[kind.stratum].append(profile_categorical(pairs, name, kind))
        else:
            buckets[kind.stratum].append(profile_numeric(pairs, name, kind))

    total_cells = table.row_count * len(table.columns)
    missing_total = table.missing_cells_total()
    return DatasetProfile(
        ordinal=tuple(buckets["ordinal"]),
        nominal=tuple(buckets["nominal"]),
        continuous=tuple(buckets["continuous"]),
        discrete=tuple(buckets["discrete"]),
        dataset_missing_fraction=missing_total / total_cells if total_cells else 0.0,
    )
