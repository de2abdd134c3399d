"""Label document model, canonical JSON wire format, and validation.

A label is a JSON envelope {schema_version, generated_at, generator,
modules} where modules maps a fixed set of seven names to payload objects.
Serialization is canonical: keys follow one global documented order,
2-space indent, LF line endings, UTF-8, trailing newline, floats rounded
to at most 6 fractional digits with minimal output. Serializing a
deserialized label reproduces the bytes exactly.

Validation never raises: every problem (malformed JSON included) becomes
a report entry with a JSON path and a stable rule id.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any, Mapping

from .errors import LabelBuildError

SCHEMA_VERSION = "1.0.0"
SUPPORTED_MAJOR = 1
GENERATOR = {"name": "datalabel", "version": "0.1.0"}

MODULE_ORDER = (
    "metadata",
    "provenance",
    "variables",
    "statistics",
    "pair_plots",
    "probabilistic_model",
    "ground_truth_correlations",
)

# Modules that accept manual input; the rest are computed only.
MANUAL_MODULES = frozenset(
    {"metadata", "provenance", "variables", "ground_truth_correlations"}
)

# Metadata fields the maker computes; manual input cannot override them.
COMPUTED_METADATA_FIELDS = frozenset({"rows", "columns", "missing_pct", "missing_fraction"})

DATASET_PCT_RE = re.compile(r"^\d+\.\d%$")
COLUMN_PCT_RE = re.compile(r"^\d+\.\d{2}%$")

# Global serialization order. Any key not listed sorts after all listed
# keys, alphabetically. One table covers every object in the document.
KEY_ORDER = (
    "schema_version", "generated_at", "generator", "name", "version", "modules",
    # module names, in presentation order
    "metadata", "provenance", "variables", "statistics", "pair_plots",
    "probabilistic_model", "ground_truth_correlations",
    # metadata
    "filename", "format", "url", "email", "domain", "keywords", "type",
    "rows", "columns", "license", "released", "range", "from", "to",
    "description",
    # provenance
    "source", "author",
    # statistics strata and profile fields
    "ordinal", "nominal", "continuous", "discrete",
    "subtype", "category", "count", "sum", "unique_entries",
    "unique_includes_missing", "most_frequent", "least_frequent",
    "kind", "display", "value", "frequency",
    "min", "median", "max", "mean", "standard_deviation", "zeros_pct",
    "missing_pct", "missing_fraction",
    # probabilistic model identity
    "target_column", "target_value", "condition_column", "support",
    # ground truth identity
    "ground_truth", "reports", "aggregate",
    # pair plots
    "histograms", "pairs", "column", "column_a", "column_b",
    "bin_edges", "categories", "categories_a", "categories_b",
    "x_edges", "y_edges", "counts", "other_count", "missing_count",
    "pearson_r",
    # probabilistic model results
    "alpha", "point_estimates", "intervals", "interval_level",
    "seed", "mc_samples",
    # ground truth reports
    "category_column", "value_column", "key_column", "joined_keys",
    "unmatched_dataset_keys", "unmatched_ground_truth_keys",
    "excluded_rows", "entries", "payload", "demographic", "r",
    "positive", "negative",
)

_KEY_RANK = {key: i for i, key in enumerate(KEY_ORDER)}


@dataclass(frozen=True)
class LabelDocument:
    schema_version: str
    generated_at: str
    generator: dict[str, Any]
    modules: dict[str, Any]


@dataclass(frozen=True)
class ActionList:
    """JSON paths of required fields the manual input did not supply."""

    paths: tuple[str, ...]


@dataclass(frozen=True)
class Violation:
    path: str
    rule: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


# ---------------------------------------------------------------------------
# Building
# ---------------------------------------------------------------------------


def _deep_merge(auto: Any, manual: Any, protected: frozenset[str] = frozenset()) -> Any:
    if isinstance(auto, dict) and isinstance(manual, dict):
        merged = dict(auto)
        for key, manual_value in manual.items():
            if key in protected:
                continue
            if key in merged:
                merged[key] = _deep_merge(merged[key], manual_value)
            else:
                merged[key] = manual_value
        return merged
    return manual


def _merge_variables(auto: dict[str, Any], manual: Mapping[str, Any]) -> dict[str, Any]:
    entries = [dict(e) for e in auto.get("entries", [])]
    by_name = {e["name"]: e for e in entries}
    unknown = []
    for manual_entry in manual.get("entries", []):
        name = manual_entry.get("name")
        if name not in by_name:
            unknown.append(str(name))
            continue
        if "description" in manual_entry:
            by_name[name]["description"] = manual_entry["description"]
    if unknown:
        raise LabelBuildError(
            f"variables input names columns not in the dataset: {', '.join(unknown)}"
        )
    return {"entries": entries}


def _blank(value: Any) -> bool:
    return value is None or (isinstance(value, str) and not value.strip())


def build_label(
    auto_payloads: Mapping[str, Any],
    manual_input: Mapping[str, Any] | None = None,
    *,
    generated_at: str | None = None,
) -> LabelDocument | ActionList:
    """Merge computed payloads with manual input into a complete label.

    ``auto_payloads`` maps requested module names to their computed (or
    skeleton) payloads and must include metadata. ``manual_input`` mirrors
    module payload shapes one-to-one; it may only address the manual
    modules, and computed metadata fields in it are ignored. Variables
    entries merge by column name.

    Returns an :class:`ActionList` of JSON paths when required manual
    fields are still blank, never a partially complete label.

    Raises:
        LabelBuildError: unknown module names, manual input for computed
            modules, or variables entries naming unknown columns.
    """
    manual = dict(manual_input or {})

    unknown_modules = sorted(set(auto_payloads) - set(MODULE_ORDER))
    if unknown_modules:
        raise LabelBuildError(f"unknown module names: {', '.join(unknown_modules)}")
    if "metadata" not in auto_payloads:
        raise LabelBuildError("metadata module is required")

    unknown_manual = sorted(set(manual) - set(MODULE_ORDER))
    if unknown_manual:
        raise LabelBuildError(f"unknown module names in manual input: {', '.join(unknown_manual)}")
    computed_only = sorted(set(manual) - MANUAL_MODULES)
    if computed_only:
        raise LabelBuildError(
            f"manual input not accepted for computed modules: {', '.join(computed_only)}"
        )

    modules: dict[str, Any] = {}
    for name in MODULE_ORDER:
        if name not in auto_payloads:
            continue
        auto = auto_payloads[name]
        if name == "variables" and name in manual:
            modules[name] = _merge_variables(auto, manual[name])
        elif name == "metadata" and name in manual:
            modules[name] = _deep_merge(auto, manual[name], COMPUTED_METADATA_FIELDS)
        elif name == "ground_truth_correlations" and name in manual:
            merged = dict(auto)
            merged["ground_truth"] = _deep_merge(
                auto.get("ground_truth", {}), manual[name].get("ground_truth", {})
            )
            modules[name] = merged
        elif name in manual:
            modules[name] = _deep_merge(auto, manual[name])
        else:
            modules[name] = auto

    actions: list[str] = []
    if _blank(modules["metadata"].get("description")):
        actions.append("modules.metadata.description")
    if "provenance" in modules:
        for record in ("source", "author"):
            if _blank(modules["provenance"].get(record, {}).get("name")):
                actions.append(f"modules.provenance.{record}.name")
    if "variables" in modules:
        for i, entry in enumerate(modules["variables"].get("entries", [])):
            if _blank(entry.get("description")):
                actions.append(f"modules.variables.entries[{i}].description")
    if "ground_truth_correlations" in modules:
        if _blank(modules["ground_truth_correlations"].get("ground_truth", {}).get("name")):
            actions.append("modules.ground_truth_correlations.ground_truth.name")
    if actions:
        return ActionList(paths=tuple(actions))

    return LabelDocument(
        schema_version=SCHEMA_VERSION,
        generated_at=generated_at or utc_now_iso(),
        generator=dict(GENERATOR),
        modules=modules,
    )


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------


def format_number(x: float) -> str:
    """Canonical float rendering: <= 6 fractional digits, minimal output.

    Integral values drop the fractional part entirely (also normalizing
    -0.0 to "0"), so the same quantity always serializes one way.
    """
    if math.isnan(x) or math.isinf(x):
        raise LabelBuildError("labels cannot carry NaN or infinite numbers")
    rounded = round(x, 6)
    if rounded.is_integer():
        return str(int(rounded))
    return repr(rounded)


def _key_rank(key: str) -> tuple[int, Any]:
    if key in _KEY_RANK:
        return (0, _KEY_RANK[key])
    return (1, key)


def _emit(value: Any, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_number(value))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(value, key=_key_rank)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise LabelBuildError(f"object keys must be strings, got {key!r}")
            out.append(inner)
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(": ")
            _emit(value[key], depth + 1, out)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(inner)
            _emit(item, depth + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise LabelBuildError(f"cannot serialize value of type {type(value).__name__}")


def serialize(label: LabelDocument) -> bytes:
    """Canonical JSON bytes of a label; see the module docstring for the form."""
    unknown = sorted(set(label.modules) - set(MODULE_ORDER))
    if unknown:
        raise LabelBuildError(f"unknown module names: {', '.join(unknown)}")
    document = {
        "schema_version": label.schema_version,
        "generated_at": label.generated_at,
        "generator": label.generator,
        "modules": {name: label.modules[name] for name in MODULE_ORDER if name in label.modules},
    }
    out: list[str] = []
    _emit(document, 0, out)
    out.append("\n")
    return "".join(out).encode("utf-8")


def deserialize(data: bytes) -> LabelDocument:
    """Parse label JSON bytes back into a LabelDocument.

    Raises:
        LabelBuildError: malformed JSON or a non-conforming envelope.
    """
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise LabelBuildError(f"not a label: {exc}") from exc
    if not isinstance(document, dict):
        raise LabelBuildError("not a label: top level is not an object")
    for key, expected in (
        ("schema_version", str),
        ("generated_at", str),
        ("generator", dict),
        ("modules", dict),
    ):
        if not isinstance(document.get(key), expected):
            raise LabelBuildError(f"not a label: bad or missing {key}")
    return LabelDocument(
        schema_version=document["schema_version"],
        generated_at=document["generated_at"],
        generator=document["generator"],
        modules=document["modules"],
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

PROBABILITY_SUM_TOL = 1e-6

# Metadata shape: field -> (type, nullable). Containers are special-cased.
_METADATA_SCALARS: dict[str, tuple[type, bool]] = {
    "filename": (str, False),
    "format": (str, False),
    "url": (str, True),
    "domain": (str, True),
    "type": (str, False),
    "license": (str, True),
    "released": (str, True),
    "description": (str, True),
}


class _Checker:
    def __init__(self) -> None:
        self.violations: list[Violation] = []

    def add(self, path: str, rule: str, message: str) -> None:
        self.violations.append(Violation(path=path, rule=rule, message=message))

    # -- envelope ----------------------------------------------------------

    def envelope(self, document: Any) -> dict[str, Any] | None:
        if not isinstance(document, dict):
            self.add("$", "envelope.shape", "top level must be an object")
            return None
        version = document.get("schema_version")
        if not isinstance(version, str):
            self.add("schema_version", "schema_version.missing", "schema_version is required")
        else:
            match = re.match(r"^(\d+)\.\d+\.\d+$", version)
            if not match or int(match.group(1)) != SUPPORTED_MAJOR:
                self.add(
                    "schema_version",
                    "schema_version.unsupported",
                    f"schema_version {version!r} is not supported (major {SUPPORTED_MAJOR})",
                )
        if not isinstance(document.get("generated_at"), str):
            self.add("generated_at", "envelope.shape", "generated_at must be a string")
        generator = document.get("generator")
        if not isinstance(generator, dict) or not isinstance(generator.get("name"), str):
            self.add("generator", "envelope.shape", "generator must be an object with a name")
        modules = document.get("modules")
        if not isinstance(modules, dict):
            self.add("modules", "envelope.shape", "modules must be an object")
            return None
        for name in sorted(set(modules) - set(MODULE_ORDER)):
            self.add(f"modules.{name}", "module.unknown", f"unknown module {name!r}")
        return modules

    # -- metadata ----------------------------------------------------------

    def metadata(self, modules: dict[str, Any]) -> int | None:
        meta = modules.get("metadata")
        if meta is None:
            self.add("modules.metadata", "metadata.required", "metadata module is required")
            return None
        if not isinstance(meta, dict):
            self.add("modules.metadata", "metadata.shape", "metadata must be an object")
            return None

        for name, (kind, nullable) in _METADATA_SCALARS.items():
            if name not in meta:
                self.add(f"modules.metadata.{name}", "metadata.shape", f"{name} is required")
                continue
            value = meta[name]
            if value is None:
                if not nullable:
                    self.add(f"modules.metadata.{name}", "metadata.shape", f"{name} cannot be null")
            elif not isinstance(value, kind) or isinstance(value, bool):
                self.add(
                    f"modules.metadata.{name}",
                    "metadata.shape",
                    f"{name} must be a {kind.__name__}",
                )

        keywords = meta.get("keywords")
        if not isinstance(keywords, list) or any(not isinstance(k, str) for k in keywords):
            self.add("modules.metadata.keywords", "metadata.shape", "keywords must be a list of strings")

        for name in ("rows", "columns"):
            value = meta.get(name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                self.add(
                    f"modules.metadata.{name}",
                    "metadata.shape",
                    f"{name} must be a nonnegative integer",
                )

        rng = meta.get("range")
        if not isinstance(rng, dict):
            self.add("modules.metadata.range", "metadata.shape", "range must be an object")
        else:
            for bound in ("from", "to"):
                value = rng.get(bound) if bound in rng else None
                if bound not in rng or not (value is None or isinstance(value, str)):
                    self.add(
                        f"modules.metadata.range.{bound}",
                        "metadata.shape",
                        f"range.{bound} must be a string or null",
                    )

        pct = meta.get("missing_pct")
        if not isinstance(pct, str) or not DATASET_PCT_RE.match(pct):
            self.add(
                "modules.metadata.missing_pct",
                "percent.format",
                'missing_pct must be a one-decimal percent string like "5.2%"',
            )
        fraction = meta.get("missing_fraction")
        if not isinstance(fraction, (int, float)) or isinstance(fraction, bool) or not 0 <= fraction <= 1:
            self.add(
                "modules.metadata.missing_fraction",
                "metadata.shape",
                "missing_fraction must be a number in [0, 1]",
            )

        rows = meta.get("rows")
        if isinstance(rows, int) and not isinstance(rows, bool):
            return rows
        return None

    # -- computed modules ----------------------------------------------------

    def statistics(self, payload: Any) -> None:
        if not isinstance(payload, dict):
            self.add("modules.statistics", "module.shape", "statistics must be an object")
            return
        for stratum in ("ordinal", "nominal", "continuous", "discrete"):
            profiles = payload.get(stratum, [])
            if not isinstance(profiles, list):
                self.add(f"modules.statistics.{stratum}", "module.shape", f"{stratum} must be a list")
                continue
            for i, profile in enumerate(profiles):
                if not isinstance(profile, dict):
                    continue
                for key in ("missing_pct", "zeros_pct"):
                    if key not in profile:
                        continue
                    value = profile[key]
                    if not isinstance(value, str) or not COLUMN_PCT_RE.match(value):
                        self.add(
                            f"modules.statistics.{stratum}[{i}].{key}",
                            "percent.format",
                            f'{key} must be a two-decimal percent string like "3.20%"',
                        )

    def _histogram_sum(self, histogram: Any, path: str, rows: int | None) -> None:
        if not isinstance(histogram, dict):
            return
        counts = histogram.get("counts")
        other = histogram.get("other_count", 0)
        missing = histogram.get("missing_count", 0)
        if not isinstance(counts, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in counts
        ):
            self.add(f"{path}.counts", "module.shape", "counts must be a list of integers")
            return
        if rows is not None and isinstance(other, int) and isinstance(missing, int):
            total = sum(counts) + other + missing
            if total != rows:
                self.add(
                    f"{path}.counts",
                    "histogram.sum",
                    f"counts total {total} but metadata reports {rows} rows",
                )

    def _pearson_range(self, value: Any, path: str) -> None:
        if value is None:
            return
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not -1 <= value <= 1:
            self.add(path, "pearson.range", f"correlation {value!r} is outside [-1, 1]")

    def pair_plots(self, payload: Any, rows: int | None) -> None:
        if not isinstance(payload, dict):
            self.add("modules.pair_plots", "module.shape", "pair_plots must be an object")
            return
        histograms = payload.get("histograms", [])
        if isinstance(histograms, list):
            for i, histogram in enumerate(histograms):
                self._histogram_sum(histogram, f"modules.pair_plots.histograms[{i}]", rows)
        pairs = payload.get("pairs", [])
        if isinstance(pairs, list):
            for i, cell in enumerate(pairs):
                if isinstance(cell, dict) and isinstance(cell.get("payload"), dict):
                    self._pearson_range(
                        cell["payload"].get("pearson_r", None),
                        f"modules.pair_plots.pairs[{i}].payload.pearson_r",
                    )

    def probabilistic(self, payload: Any) -> None:
        if not isinstance(payload, dict):
            self.add("modules.probabilistic_model", "module.shape", "probabilistic_model must be an object")
            return
        entries = payload.get("entries", [])
        if not isinstance(entries, list):
            self.add("modules.probabilistic_model.entries", "module.shape", "entries must be a list")
            return
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict):
                continue
            estimates = entry.get("point_estimates")
            path = f"modules.probabilistic_model.entries[{i}].point_estimates"
            if not isinstance(estimates, list) or not all(
                isinstance(p, (int, float)) and not isinstance(p, bool) for p in estimates
            ):
                self.add(path, "module.shape", "point_estimates must be a list of numbers")
                continue
            total = sum(estimates)
            if abs(total - 1.0) > PROBABILITY_SUM_TOL:
                self.add(
                    path,
                    "probability.sum",
                    f"point estimates sum to {total:.8f}, expected 1 within {PROBABILITY_SUM_TOL}",
                )

    def ground_truth(self, payload: Any) -> None:
        if not isinstance(payload, dict):
            self.add(
                "modules.ground_truth_correlations",
                "module.shape",
                "ground_truth_correlations must be an object",
            )
            return
        reports = payload.get("reports", [])
        if not isinstance(reports, list):
            return
        for i, report in enumerate(reports):
            if not isinstance(report, dict):
                continue
            entries = report.get("entries", [])
            if not isinstance(entries, list):
                continue
            for j, entry in enumerate(entries):
                if isinstance(entry, dict):
                    self._pearson_range(
                        entry.get("r", None),
                        f"modules.ground_truth_correlations.reports[{i}].entries[{j}].r",
                    )


def validate(data: bytes) -> ValidationReport:
    """Check label bytes against the wire contract; never raises.

    Rules: json.malformed, envelope.shape, schema_version.missing,
    schema_version.unsupported, module.unknown, module.shape,
    metadata.required, metadata.shape, percent.format, probability.sum,
    histogram.sum, pearson.range.
    """
    checker = _Checker()
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        checker.add("$", "json.malformed", str(exc))
        return ValidationReport(violations=tuple(checker.violations))

    modules = checker.envelope(document)
    if modules is None:
        return ValidationReport(violations=tuple(checker.violations))

    rows = checker.metadata(modules)
    if "statistics" in modules:
        checker.statistics(modules["statistics"])
    if "pair_plots" in modules:
        checker.pair_plots(modules["pair_plots"], rows)
    if "probabilistic_model" in modules:
        checker.probabilistic(modules["probabilistic_model"])
    if "ground_truth_correlations" in modules:
        checker.ground_truth(modules["ground_truth_correlations"])
    return ValidationReport(violations=tuple(checker.violations))
