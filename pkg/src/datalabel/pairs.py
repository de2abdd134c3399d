"""Histograms, joint distributions, and Pearson correlations for column pairs.

Everything here is computed over the immutable table and lands in the label
as binned or aggregated counts only: raw rows never leave the maker. Rows
with a missing cell in either member of a pair are excluded pairwise and
the exclusion count is recorded on the cell.

Caps are fixed for bounded, reproducible output: 20 bins or top-20
categories per axis, lexicographic tie-breaking, at most 25 columns for
exhaustive pair enumeration.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ConfigError, ProfileError
from .ingest import ColumnKind, DataTable, parse_number

MAX_BINS = 20
MAX_CATEGORIES = 20
DEFAULT_PAIR_LIMIT = 25

OTHER_LABEL = "other"


# ---------------------------------------------------------------------------
# Pearson correlation
# ---------------------------------------------------------------------------


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson correlation coefficient, or None when undefined.

    r = sum(dx*dy) / sqrt(sum(dx^2) * sum(dy^2)) with d = value - mean.
    Either vector having zero variance makes r undefined (None), which is
    distinct from r = 0. Results are clamped to [-1, 1] against floating
    rounding.
    """
    if len(x) != len(y):
        raise ProfileError(f"vector lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ProfileError("correlation needs at least 2 points")

    mx = math.fsum(x) / len(x)
    my = math.fsum(y) / len(y)
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        return None
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


# ---------------------------------------------------------------------------
# Single-column histograms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Histogram:
    """Binned view of one column.

    Numeric columns carry ``bin_edges`` (length bins+1, equal width, all
    bins half-open except the last, which includes its right edge).
    Categorical columns carry ``categories`` (top-K by count, ties broken
    lexicographically) with the remainder pooled into ``other_count``.
    """

    column: str
    bin_edges: tuple[float, ...] | None
    categories: tuple[str, ...] | None
    counts: tuple[int, ...]
    other_count: int
    missing_count: int


def _numeric_edges(values: Sequence[float], bins: int) -> list[float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        return [lo, hi]
    edges = [lo + (hi - lo) * i / bins for i in range(bins + 1)]
    edges[-1] = hi  # guard the closed right edge against rounding
    return edges


def _bin_index(edges: Sequence[float], value: float) -> int:
    # Half-open bins except the last: values at or past the final edge clamp in.
    return min(bisect_right(edges, value) - 1, len(edges) - 2)


def _column_numbers_strict(pairs: Sequence[tuple[str, bool]], name: str) -> list[float]:
    values: list[float] = []
    for i, (raw, missing) in enumerate(pairs):
        if missing:
            continue
        parsed = parse_number(raw)
        if parsed is None:
            raise ProfileError(f"column {name!r}, row {i + 2}: cell {raw!r} is not a number")
        values.append(parsed)
    return values


def _top_categories(counter: Counter[str], cap: int) -> list[str]:
    return sorted(counter, key=lambda c: (-counter[c], c))[:cap]


def histogram(
    column: Sequence[tuple[str, bool]],
    name: str,
    kind: ColumnKind,
    bins: int | None = None,
) -> Histogram:
    """Histogram of one column; ``bins`` overrides the min(20, distinct) default."""
    if not column:
        raise ProfileError(f"column {name!r} is empty, nothing to bin")
    missing_count = sum(1 for _, missing in column if missing)

    if kind.is_numeric:
        values = _column_numbers_strict(column, name)
        if not values:
            raise ProfileError(f"column {name!r} has no non-missing values to bin")
        width = bins if bins is not None else min(MAX_BINS, len(set(values)))
        if width < 1:
            raise ProfileError(f"column {name!r}: bin count must be >= 1")
        edges = _numeric_edges(values, width)
        counts = [0] * (len(edges) - 1)
        for v in values:
            counts[_bin_index(edges, v)] += 1
        return Histogram(
            column=name,
            bin_edges=tuple(edges),
            categories=None,
            counts=tuple(counts),
            other_count=0,
            missing_count=missing_count,
        )

    counter = Counter(raw for raw, missing in column if not missing)
    if not counter:
        raise ProfileError(f"column {name!r} has no non-missing values to bin")
    top = _top_categories(counter, MAX_CATEGORIES)
    kept = sum(counter[c] for c in top)
    return Histogram(
        column=name,
        bin_edges=None,
        categories=tuple(top),
        counts=tuple(counter[c] for c in top),
        other_count=sum(counter.values()) - kept,
        missing_count=missing_count,
    )


# ---------------------------------------------------------------------------
# Pair cells
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContContPayload:
    """2D binned counts of two numeric columns plus their correlation."""

    x_edges: tuple[float, ...]
    y_edges: tuple[float, ...]
    counts: tuple[tuple[int, ...], ...]  # counts[i][j]: x bin i, y bin j
    pearson_r: float | None


@dataclass(frozen=True)
class CatCatPayload:
    """Contingency table over top categories of both columns.

    The counts matrix has one extra trailing row and column holding the
    "other" buckets, present even when empty.
    """

    categories_a: tuple[str, ...]
    categories_b: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]  # (len_a+1) x (len_b+1)


@dataclass(frozen=True)
class CatContEntry:
    category: str
    count: int
    sum: float
    mean: float


@dataclass(frozen=True)
class CatContPayload:
    """Per-category aggregates of the continuous column, count-descending."""

    category_column: str
    value_column: str
    entries: tuple[CatContEntry, ...]


@dataclass(frozen=True)
class PairPlotCell:
    column_a: str
    column_b: str
    kind: str  # cont_cont | cat_cat | cat_cont
    excluded_rows: int
    payload: ContContPayload | CatCatPayload | CatContPayload


def _complete_pairs(
    table: DataTable, a: str, b: str
) -> tuple[list[tuple[str, str]], list[int], int]:
    """Values of both columns over complete rows, with original row indices."""
    pa = table.column_pairs(a)
    pb = table.column_pairs(b)
    rows: list[tuple[str, str]] = []
    indices: list[int] = []
    for i, ((va, ma), (vb, mb)) in enumerate(zip(pa, pb)):
        if not ma and not mb:
            rows.append((va, vb))
            indices.append(i)
    return rows, indices, table.row_count - len(rows)


def _numbers_at(values: Sequence[str], indices: Sequence[int], name: str) -> list[float]:
    out: list[float] = []
    for raw, i in zip(values, indices):
        parsed = parse_number(raw)
        if parsed is None:
            raise ProfileError(f"column {name!r}, row {i + 2}: cell {raw!r} is not a number")
        out.append(parsed)
    return out


def pair_payload(
    table: DataTable, a: str, b: str, kinds: Mapping[str, ColumnKind]
) -> PairPlotCell:
    """Joint distribution of two columns, dispatched on their strata.

    Numeric x numeric gives 2D binned counts plus Pearson r; categorical x
    categorical a contingency table; mixed pairs per-category count/sum/mean
    of the numeric member. Rows missing either cell are excluded and counted.
    """
    if a == b:
        raise ProfileError(f"pair needs two distinct columns, got {a!r} twice")
    kind_a, kind_b = kinds[a], kinds[b]

    rows, indices, excluded = _complete_pairs(table, a, b)
    if len(rows) < 2:
        raise ProfileError(
            f"pair ({a!r}, {b!r}): only {len(rows)} complete rows, need at least 2"
        )

    if kind_a.is_numeric and kind_b.is_numeric:
        xs = _numbers_at([r[0] for r in rows], indices, a)
        ys = _numbers_at([r[1] for r in rows], indices, b)
        x_edges = _numeric_edges(xs, min(MAX_BINS, len(set(xs))))
        y_edges = _numeric_edges(ys, min(MAX_BINS, len(set(ys))))
        counts = [[0] * (len(y_edges) - 1) for _ in range(len(x_edges) - 1)]
        for x, y in zip(xs, ys):
            counts[_bin_index(x_edges, x)][_bin_index(y_edges, y)] += 1
        payload: ContContPayload | CatCatPayload | CatContPayload = ContContPayload(
            x_edges=tuple(x_edges),
            y_edges=tuple(y_edges),
            counts=tuple(tuple(row) for row in counts),
            pearson_r=pearson(xs, ys),
        )
        return PairPlotCell(a, b, "cont_cont", excluded, payload)

    if kind_a.is_categorical and kind_b.is_categorical:
        counter_a = Counter(r[0] for r in rows)
        counter_b = Counter(r[1] for r in rows)
        cats_a = _top_categories(counter_a, MAX_CATEGORIES)
        cats_b = _top_categories(counter_b, MAX_CATEGORIES)
        index_a = {c: i for i, c in enumerate(cats_a)}
        index_b = {c: i for i, c in enumerate(cats_b)}
        counts = [[0] * (len(cats_b) + 1) for _ in range(len(cats_a) + 1)]
        for va, vb in rows:
            counts[index_a.get(va, len(cats_a))][index_b.get(vb, len(cats_b))] += 1
        payload = CatCatPayload(
            categories_a=tuple(cats_a),
            categories_b=tuple(cats_b),
            counts=tuple(tuple(row) for row in counts),
        )
        return PairPlotCell(a, b, "cat_cat", excluded, payload)

    # Mixed: aggregate the numeric member per category of the other.
    if kind_a.is_categorical:
        cat_name, val_name = a, b
        cat_values = [r[0] for r in rows]
        raw_values = [r[1] for r in rows]
    else:
        cat_name, val_name = b, a
        cat_values = [r[1] for r in rows]
        raw_values = [r[0] for r in rows]
    numbers = _numbers_at(raw_values, indices, val_name)

    grouped: dict[str, list[float]] = {}
    for cat, value in zip(cat_values, numbers):
        grouped.setdefault(cat, []).append(value)
    ordered = sorted(grouped, key=lambda c: (-len(grouped[c]), c))
    entries = tuple(
        CatContEntry(
            category=cat,
            count=len(grouped[cat]),
            sum=math.fsum(grouped[cat]),
            mean=math.fsum(grouped[cat]) / len(grouped[cat]),
        )
        for cat in ordered
    )
    payload = CatContPayload(category_column=cat_name, value_column=val_name, entries=entries)
    return PairPlotCell(a, b, "cat_cont", excluded, payload)


def all_pairs(
    table: DataTable,
    kinds: Mapping[str, ColumnKind],
    limit: int = DEFAULT_PAIR_LIMIT,
) -> list[PairPlotCell]:
    """Pair cells for every unordered column pair, in column-index order.

    Refuses tables wider than ``limit`` columns; raise the limit only when
    the quadratic cell count is genuinely wanted.
    """
    if len(table.columns) > limit:
        raise ConfigError(
            f"{len(table.columns)} columns exceeds the pair limit of {limit}; "
            "raise it with --pair-limit if the full grid is intended"
        )
    cells = []
    for i, a in enumerate(table.columns):
        for b in table.columns[i + 1 :]:
            cells.append(pair_payload(table, a, b, kinds))
    return cells
