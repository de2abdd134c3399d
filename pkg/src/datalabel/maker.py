"""Turn a parsed dataset into label module payloads and assemble the label.

This is the bridge between the typed profiling results and the JSON wire
format: every payload builder returns plain dicts/lists ready for the
canonical serializer. The maker computes what it can; human-only fields
arrive via the manual-input document and are merged by build_label.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import ConfigError
from .groundtruth import (
    AGGREGATES,
    CorrelationEntry,
    CorrelationReport,
    build_reports,
    ground_truth_from_table,
)
from .ingest import (
    DEFAULT_MISSING_TOKENS,
    ColumnKind,
    DataTable,
    IngestOptions,
    infer_table_kinds,
    kinds_from_spec,
    parse_csv,
)
from .pairs import (
    DEFAULT_PAIR_LIMIT,
    CatCatPayload,
    CatContPayload,
    ContContPayload,
    Histogram,
    PairPlotCell,
    all_pairs,
    histogram,
)
from .posterior import (
    DEFAULT_ALPHA,
    DEFAULT_LEVEL,
    DEFAULT_MC_SAMPLES,
    PosteriorDistribution,
    fit_conditional,
)
from .schema import MODULE_ORDER, ActionList, LabelDocument, build_label
from .stats import (
    CategoricalProfile,
    DatasetProfile,
    FrequencyCell,
    NumericProfile,
    percent_display,
    profile_dataset,
)

PROBABILITY_UNITS = 1_000_000  # quantization grid for serialized probabilities


# ---------------------------------------------------------------------------
# Payload builders (typed results -> JSON-ready dicts)
# ---------------------------------------------------------------------------


def metadata_payload(table: DataTable) -> dict[str, Any]:
    total_cells = table.row_count * len(table.columns)
    missing = table.missing_cells_total()
    return {
        "filename": table.source_name,
        "format": "csv",
        "url": None,
        "domain": None,
        "keywords": [],
        "type": "tabular",
        "rows": table.row_count,
        "columns": len(table.columns),
        "missing_pct": percent_display(missing, total_cells, 1),
        "missing_fraction": missing / total_cells if total_cells else 0.0,
        "license": None,
        "released": None,
        "range": {"from": None, "to": None},
        "description": None,
    }


def provenance_skeleton() -> dict[str, Any]:
    contact = {"name": None, "url": None, "email": None}
    return {"source": dict(contact), "author": dict(contact)}


def variables_skeleton(table: DataTable) -> dict[str, Any]:
    return {"entries": [{"name": name, "description": None} for name in table.columns]}


def _frequency_cell(cell: FrequencyCell) -> dict[str, Any]:
    return {
        "kind": cell.kind,
        "display": cell.display,
        "value": cell.value,
        "frequency": cell.frequency,
    }


def _categorical_profile(profile: CategoricalProfile) -> dict[str, Any]:
    return {
        "name": profile.name,
        "subtype": profile.subtype,
        "count": profile.count,
        "unique_entries": profile.unique_entries,
        "unique_includes_missing": profile.unique_includes_missing,
        "most_frequent": _frequency_cell(profile.most_frequent),
        "least_frequent": _frequency_cell(profile.least_frequent),
        "missing_pct": profile.missing_pct,
        "missing_fraction": profile.missing_fraction,
    }


def _numeric_profile(profile: NumericProfile) -> dict[str, Any]:
    return {
        "name": profile.name,
        "count": profile.count,
        "min": profile.min,
        "median": profile.median,
        "max": profile.max,
        "mean": profile.mean,
        "standard_deviation": profile.standard_deviation,
        "zeros_pct": profile.zeros_pct,
        "missing_pct": profile.missing_pct,
        "missing_fraction": profile.missing_fraction,
    }


def statistics_payload(profile: DatasetProfile) -> dict[str, Any]:
    return {
        "ordinal": [_categorical_profile(p) for p in profile.ordinal],
        "nominal": [_categorical_profile(p) for p in profile.nominal],
        "continuous": [_numeric_profile(p) for p in profile.continuous],
        "discrete": [_numeric_profile(p) for p in profile.discrete],
    }


def _histogram_dict(h: Histogram) -> dict[str, Any]:
    out: dict[str, Any] = {"column": h.column}
    if h.bin_edges is not None:
        out["bin_edges"] = list(h.bin_edges)
    else:
        out["categories"] = list(h.categories or ())
    out["counts"] = list(h.counts)
    out["other_count"] = h.other_count
    out["missing_count"] = h.missing_count
    return out


def _pair_cell_dict(cell: PairPlotCell) -> dict[str, Any]:
    payload = cell.payload
    if isinstance(payload, ContContPayload):
        body: dict[str, Any] = {
            "x_edges": list(payload.x_edges),
            "y_edges": list(payload.y_edges),
            "counts": [list(row) for row in payload.counts],
            "pearson_r": payload.pearson_r,
        }
    elif isinstance(payload, CatCatPayload):
        body = {
            "categories_a": list(payload.categories_a),
            "categories_b": list(payload.categories_b),
            "counts": [list(row) for row in payload.counts],
        }
    else:
        assert isinstance(payload, CatContPayload)
        body = {
            "category_column": payload.category_column,
            "value_column": payload.value_column,
            "entries": [
                {"category": e.category, "count": e.count, "sum": e.sum, "mean": e.mean}
                for e in payload.entries
            ],
        }
    return {
        "column_a": cell.column_a,
        "column_b": cell.column_b,
        "kind": cell.kind,
        "excluded_rows": cell.excluded_rows,
        "payload": body,
    }


def pair_plots_payload(
    table: DataTable, kinds: Mapping[str, ColumnKind], limit: int = DEFAULT_PAIR_LIMIT
) -> dict[str, Any]:
    histograms = [
        _histogram_dict(histogram(table.column_pairs(name), name, kinds[name]))
        for name in table.columns
    ]
    pairs = [_pair_cell_dict(cell) for cell in all_pairs(table, kinds, limit)]
    return {"histograms": histograms, "pairs": pairs}


def quantize_probabilities(probabilities: Sequence[float]) -> list[float]:
    """Snap a probability vector to the 1e-6 grid, preserving the unit sum.

    Serialized numbers carry at most six fractional digits; naive rounding
    of each component can drift the sum by more than the validator's 1e-6
    tolerance. Largest-remainder apportionment over micro-units keeps the
    serialized vector summing to exactly 1.000000.
    """
    units = [p * PROBABILITY_UNITS for p in probabilities]
    floors = [math.floor(u) for u in units]
    shortfall = PROBABILITY_UNITS - sum(floors)
    # Ascending (floor - unit) puts the largest fractional remainders first.
    order = sorted(range(len(units)), key=lambda i: (floors[i] - units[i], i))
    if shortfall >= 0:
        for step in range(shortfall):
            floors[order[step % len(order)]] += 1
    else:
        for step in range(-shortfall):
            floors[order[-1 - (step % len(order))]] -= 1
    return [f / PROBABILITY_UNITS for f in floors]


def _posterior_entry(posterior: PosteriorDistribution) -> dict[str, Any]:
    return {
        "target_column": posterior.target_column,
        "target_value": posterior.target_value,
        "condition_column": posterior.condition_column,
        "support": list(posterior.support),
        "counts": list(posterior.counts),
        "alpha": posterior.alpha,
        "point_estimates": quantize_probabilities(posterior.point_estimates),
        "intervals": [[lo, hi] for lo, hi in posterior.intervals],
        "interval_level": posterior.interval_level,
        "seed": posterior.seed,
        "mc_samples": posterior.mc_samples,
    }


def probabilistic_payload(posteriors: Sequence[PosteriorDistribution]) -> dict[str, Any]:
    return {"entries": [_posterior_entry(p) for p in posteriors]}


def _correlation_entry(entry: CorrelationEntry) -> dict[str, Any]:
    return {"demographic": entry.demographic, "r": entry.r}


def _report_dict(report: CorrelationReport) -> dict[str, Any]:
    return {
        "aggregate": report.aggregate,
        "value_column": report.value_column,
        "key_column": report.key_column,
        "joined_keys": report.joined_keys,
        "unmatched_dataset_keys": report.unmatched_dataset_keys,
        "unmatched_ground_truth_keys": report.unmatched_ground_truth_keys,
        "excluded_rows": report.excluded_rows,
        "entries": [_correlation_entry(e) for e in report.entries],
        "positive": [_correlation_entry(e) for e in report.positive],
        "negative": [_correlation_entry(e) for e in report.negative],
    }


def ground_truth_payload(reports: Sequence[CorrelationReport]) -> dict[str, Any]:
    return {
        "ground_truth": {"name": None, "url": None},
        "reports": [_report_dict(r) for r in reports],
    }


# ---------------------------------------------------------------------------
# Orchestration
# ---------------------------------------------------------------------------

DEFAULT_MODULES = ("metadata", "statistics", "pair_plots")
_TIMESTAMP_RE = r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$"


@dataclass(frozen=True)
class MakeConfig:
    """Everything cmd_make needs; mirrors the CLI flags one-to-one."""

    dataset_path: str
    out_path: str | None = None
    modules: tuple[str, ...] = DEFAULT_MODULES
    meta_path: str | None = None
    overrides_path: str | None = None
    gt_path: str | None = None
    gt_key: str | None = None
    dataset_key: str | None = None
    value_column: str | None = None
    aggregates: tuple[str, ...] = ("sum",)
    target: str | None = None
    target_values: tuple[str, ...] = ()
    condition: str | None = None
    alpha: float = DEFAULT_ALPHA
    seed: int = 0
    mc_samples: int = DEFAULT_MC_SAMPLES
    interval_level: float = DEFAULT_LEVEL
    missing_tokens: frozenset[str] = DEFAULT_MISSING_TOKENS
    pair_limit: int = DEFAULT_PAIR_LIMIT
    timestamp: str | None = None


def validate_config(config: MakeConfig) -> None:
    """Fail fast on inconsistent flag combinations."""
    unknown = sorted(set(config.modules) - set(MODULE_ORDER))
    if unknown:
        raise ConfigError(f"unknown module names: {', '.join(unknown)}")
    if not config.modules:
        raise ConfigError("at least one module must be requested")
    if "ground_truth_correlations" in config.modules:
        missing = [
            flag
            for flag, value in (
                ("--gt", config.gt_path),
                ("--dataset-key", config.dataset_key),
                ("--value-column", config.value_column),
            )
            if not value
        ]
        if missing:
            raise ConfigError(
                f"ground_truth_correlations needs {', '.join(missing)}"
            )
        bad = sorted(set(config.aggregates) - set(AGGREGATES))
        if bad:
            raise ConfigError(f"unknown aggregates: {', '.join(bad)}")
        if not config.aggregates:
            raise ConfigError("ground_truth_correlations needs at least one --aggregate")
    if "probabilistic_model" in config.modules:
        missing = [
            flag
            for flag, value in (
                ("--target", config.target),
                ("--target-value", config.target_values),
                ("--condition", config.condition),
            )
            if not value
        ]
        if missing:
            raise ConfigError(f"probabilistic_model needs {', '.join(missing)}")
    if config.timestamp is not None and not re.match(_TIMESTAMP_RE, config.timestamp):
        raise ConfigError(
            f"timestamp {config.timestamp!r} must look like 2024-01-31T00:00:00Z"
        )


def _load_json(path: str, what: str) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what} file {path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{what} file {path}: top level must be an object")
    return data


def compute_auto_payloads(config: MakeConfig) -> dict[str, Any]:
    """Parse the dataset and compute every requested module's payload."""
    overrides = {}
    if config.overrides_path:
        overrides = kinds_from_spec(_load_json(config.overrides_path, "type override"))
    options = IngestOptions(missing_tokens=config.missing_tokens, type_overrides=overrides)
    table = parse_csv(config.dataset_path, options)
    kinds = infer_table_kinds(table, overrides)

    payloads: dict[str, Any] = {"metadata": metadata_payload(table)}
    if "provenance" in config.modules:
        payloads["provenance"] = provenance_skeleton()
    if "variables" in config.modules:
        payloads["variables"] = variables_skeleton(table)
    if "statistics" in config.modules:
        payloads["statistics"] = statistics_payload(profile_dataset(table, kinds))
    if "pair_plots" in config.modules:
        payloads["pair_plots"] = pair_plots_payload(table, kinds, config.pair_limit)
    if "probabilistic_model" in config.modules:
        posteriors = [
            fit_conditional(
                table,
                config.target,
                value,
                config.condition,
                alpha=config.alpha,
                level=config.interval_level,
                seed=config.seed,
                mc_samples=config.mc_samples,
                kinds=kinds,
            )
            for value in config.target_values
        ]
        payloads["probabilistic_model"] = probabilistic_payload(posteriors)
    if "ground_truth_correlations" in config.modules:
        gt_options = IngestOptions(missing_tokens=config.missing_tokens)
        gt_table = parse_csv(config.gt_path, gt_options)
        ground_truth = ground_truth_from_table(gt_table, key_column=config.gt_key)
        reports = build_reports(
            table, ground_truth, config.dataset_key, config.value_column, config.aggregates
        )
        payloads["ground_truth_correlations"] = ground_truth_payload(reports)
    return payloads


def make_label(config: MakeConfig) -> LabelDocument | ActionList:
    """End-to-end: validate config, profile the dataset, assemble the label."""
    validate_config(config)
    auto = compute_auto_payloads(config)
    manual = _load_json(config.meta_path, "manual input") if config.meta_path else None
    return build_label(auto, manual, generated_at=config.timestamp)
