"""Command-line label maker: make, validate, and inspect label files.

Exit codes are a stable contract: 0 success, 1 error, 2 action required
(manual fields missing). Diagnostics go to stderr; data and reports go to
stdout or the requested output file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import ConfigError, DataLabelError
from .maker import DEFAULT_MODULES, MakeConfig, make_label
from .posterior import DEFAULT_ALPHA, DEFAULT_MC_SAMPLES
from .schema import (
    ActionList,
    LabelDocument,
    deserialize,
    format_number,
    serialize,
    validate,
)
from .ingest import DEFAULT_MISSING_TOKENS
from .pairs import DEFAULT_PAIR_LIMIT


class _Parser(argparse.ArgumentParser):
    # Argparse exits with status 2 on usage errors; 2 means "action
    # required" in this tool, so route usage errors through our own path.
    def error(self, message: str) -> Any:
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="datalabel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    make = sub.add_parser("make", help="profile a CSV and write a label")
    make.add_argument("dataset", help="CSV file to profile")
    make.add_argument("--out", help="output label path (default: stdout)")
    make.add_argument(
        "--modules",
        default=",".join(DEFAULT_MODULES),
        help="comma-separated module names (metadata is always included)",
    )
    make.add_argument("--meta", help="manual-input JSON file")
    make.add_argument("--overrides", help="column type override JSON file")
    make.add_argument("--gt", help="ground-truth CSV (first column is the key)")
    make.add_argument("--gt-key", help="ground-truth key column (default: first column)")
    make.add_argument("--dataset-key", help="dataset column to join on")
    make.add_argument("--value-column", help="dataset column to aggregate")
    make.add_argument(
        "--aggregate",
        action="append",
        choices=("sum", "mean", "count", "per_capita"),
        help="aggregate per report; repeatable (default: sum)",
    )
    make.add_argument("--target", help="target column for the probabilistic model")
    make.add_argument(
        "--target-value",
        action="append",
        help="target value to model; repeatable",
    )
    make.add_argument("--condition", help="condition column for the probabilistic model")
    make.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="Dirichlet prior concentration")
    make.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    make.add_argument("--mc-samples", type=int, default=DEFAULT_MC_SAMPLES, help="Monte Carlo sample count")
    make.add_argument(
        "--missing-tokens",
        help="comma-separated tokens replacing the default missing set "
        "(a leading comma includes the empty string)",
    )
    make.add_argument("--pair-limit", type=int, default=DEFAULT_PAIR_LIMIT, help="max columns for pair plots")
    make.add_argument("--timestamp", help="pin generated_at (e.g. 2024-01-31T00:00:00Z)")
    make.set_defaults(handler=_cmd_make)

    val = sub.add_parser("validate", help="check a label file against the wire contract")
    val.add_argument("label", help="label JSON file")
    val.set_defaults(handler=_cmd_validate)

    inspect = sub.add_parser("inspect", help="render one module of a label as text")
    inspect.add_argument("label", help="label JSON file")
    inspect.add_argument("--module", required=True, help="module name to render")
    inspect.add_argument("--pair", help="for pair_plots: two column names, comma-separated")
    inspect.set_defaults(handler=_cmd_inspect)
    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_make(args: argparse.Namespace) -> int:
    modules = tuple(m.strip() for m in args.modules.split(",") if m.strip())
    if "metadata" not in modules:
        modules = ("metadata",) + modules
    tokens = (
        frozenset(args.missing_tokens.split(","))
        if args.missing_tokens is not None
        else DEFAULT_MISSING_TOKENS
    )
    config = MakeConfig(
        dataset_path=args.dataset,
        out_path=args.out,
        modules=modules,
        meta_path=args.meta,
        overrides_path=args.overrides,
        gt_path=args.gt,
        gt_key=args.gt_key,
        dataset_key=args.dataset_key,
        value_column=args.value_column,
        aggregates=tuple(args.aggregate or ("sum",)),
        target=args.target,
        target_values=tuple(args.target_value or ()),
        condition=args.condition,
        alpha=args.alpha,
        seed=args.seed,
        mc_samples=args.mc_samples,
        missing_tokens=tokens,
        pair_limit=args.pair_limit,
        timestamp=args.timestamp,
    )
    result = make_label(config)
    if isinstance(result, ActionList):
        for path in result.paths:
            print(f"ACTION: {path}")
        return 2
    data = serialize(result)
    if config.out_path:
        Path(config.out_path).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    report = validate(Path(args.label).read_bytes())
    for violation in report.violations:
        print(f"{violation.path}\t{violation.rule}\t{violation.message}")
    return 0 if report.ok else 1


def _cmd_inspect(args: argparse.Namespace) -> int:
    label = deserialize(Path(args.label).read_bytes())
    if args.module not in label.modules:
        available = ", ".join(label.modules) or "none"
        print(f"error: module {args.module!r} not in label; available: {available}", file=sys.stderr)
        return 1
    renderer = _RENDERERS[args.module] if args.module in _RENDERERS else _render_json_fallback
    for line in renderer(label, args):
        print(line)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataLabelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------


def _tabulate(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(row: Sequence[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return lines


def _num(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return format_number(float(value)) if isinstance(value, float) else str(value)
    return str(value)


def _render_metadata(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    meta = label.modules["metadata"]
    lines = []
    for key, value in meta.items():
        if key == "range" and isinstance(value, dict):
            value = f"{value.get('from') or '-'} .. {value.get('to') or '-'}"
        elif key == "keywords" and isinstance(value, list):
            value = ", ".join(value) or "-"
        lines.append(f"{key:<18} {_num(value)}")
    return lines


def _render_provenance(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    lines = []
    for record in ("source", "author"):
        block = label.modules["provenance"].get(record, {})
        lines.append(f"{record}:")
        for key in ("name", "url", "email"):
            lines.append(f"  {key:<6} {_num(block.get(key))}")
    return lines


def _render_variables(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    entries = label.modules["variables"].get("entries", [])
    rows = [[e.get("name", ""), str(e.get("description") or "-")] for e in entries]
    return _tabulate(["name", "description"], rows)


def _render_statistics(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    payload = label.modules["statistics"]
    lines: list[str] = []
    for stratum in ("ordinal", "nominal", "continuous", "discrete"):
        profiles = payload.get(stratum, [])
        lines.append(stratum.upper())
        if not profiles:
            lines.append("  (no columns)")
            lines.append("")
            continue
        if stratum in ("ordinal", "nominal"):
            rows = [
                [
                    p["name"],
                    str(p["count"]),
                    str(p["unique_entries"]),
                    p["most_frequent"]["display"],
                    p["least_frequent"]["display"],
                    p["missing_pct"],
                ]
                for p in profiles
            ]
            lines.extend(_tabulate(
                ["name", "count", "unique", "most frequent", "least frequent", "missing"], rows
            ))
        else:
            rows = [
                [
                    p["name"],
                    str(p["count"]),
                    _num(p["min"]),
                    _num(p["median"]),
                    _num(p["max"]),
                    _num(p["mean"]),
                    _num(p["standard_deviation"]),
                    p["zeros_pct"],
                    p["missing_pct"],
                ]
                for p in profiles
            ]
            lines.extend(_tabulate(
                ["name", "count", "min", "median", "max", "mean", "stddev", "zeros", "missing"], rows
            ))
        lines.append("")
    return lines[:-1]


def _render_pair_plots(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    payload = label.modules["pair_plots"]
    pairs = payload.get("pairs", [])
    if not args.pair:
        lines = ["available pairs:"]
        for cell in pairs:
            lines.append(f"  {cell['column_a']},{cell['column_b']}  ({cell['kind']})")
        return lines

    names = [p.strip() for p in args.pair.split(",")]
    if len(names) != 2:
        raise ConfigError("--pair needs exactly two comma-separated column names")
    wanted = set(names)
    cell = next(
        (c for c in pairs if {c["column_a"], c["column_b"]} == wanted),
        None,
    )
    if cell is None:
        raise DataLabelError(f"pair ({names[0]}, {names[1]}) not present in the label")

    lines = [
        f"{cell['column_a']} x {cell['column_b']}  kind={cell['kind']}  "
        f"excluded_rows={cell['excluded_rows']}"
    ]
    body = cell["payload"]
    if cell["kind"] == "cont_cont":
        lines.append(f"pearson_r: {_num(body.get('pearson_r'))}")
        lines.append("x_edges: " + ", ".join(_num(e) for e in body["x_edges"]))
        lines.append("y_edges: " + ", ".join(_num(e) for e in body["y_edges"]))
        lines.append("counts:")
        for row in body["counts"]:
            lines.append("  " + " ".join(str(c).rjust(4) for c in row))
    elif cell["kind"] == "cat_cat":
        headers = [""] + list(body["categories_b"]) + ["other"]
        row_labels = list(body["categories_a"]) + ["other"]
        rows = [
            [row_labels[i]] + [str(c) for c in row]
            for i, row in enumerate(body["counts"])
        ]
        lines.extend(_tabulate(headers, rows))
    else:
        rows = [
            [e["category"], str(e["count"]), _num(e["sum"]), _num(e["mean"])]
            for e in body["entries"]
        ]
        lines.append(f"{body['category_column']} vs {body['value_column']}:")
        lines.extend(_tabulate(["category", "count", "sum", "mean"], rows))
    return lines


def _render_probabilistic(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    lines: list[str] = []
    for entry in label.modules["probabilistic_model"].get("entries", []):
        lines.append(
            f"P({entry['condition_column']} | {entry['target_column']} = {entry['target_value']})"
            f"  alpha={_num(entry['alpha'])}  level={_num(entry['interval_level'])}"
            f"  seed={entry['seed']}  mc_samples={entry['mc_samples']}"
        )
        rows = [
            [
                category,
                str(entry["counts"][i]),
                _num(entry["point_estimates"][i]),
                f"[{_num(entry['intervals'][i][0])}, {_num(entry['intervals'][i][1])}]",
            ]
            for i, category in enumerate(entry["support"])
        ]
        lines.extend(_tabulate(["category", "count", "estimate", "interval"], rows))
        lines.append("")
    return lines[:-1] if lines else ["(no entries)"]


def _render_ground_truth(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    payload = label.modules["ground_truth_correlations"]
    source = payload.get("ground_truth", {})
    lines = [f"ground truth: {_num(source.get('name'))} ({_num(source.get('url'))})"]
    for report in payload.get("reports", []):
        lines.append("")
        lines.append(
            f"aggregate={report['aggregate']}  value={report['value_column']}  "
            f"key={report['key_column']}  joined={report['joined_keys']}  "
            f"unmatched(dataset={report['unmatched_dataset_keys']}, "
            f"ground_truth={report['unmatched_ground_truth_keys']})"
        )
        for sign in ("positive", "negative"):
            lines.append(f"{sign}:")
            entries = report.get(sign, [])
            if not entries:
                lines.append("  (none)")
                continue
            for entry in entries:
                lines.append(f"  {entry['demographic']:<28} {_num(entry['r'])}")
    return lines


def _render_json_fallback(label: LabelDocument, args: argparse.Namespace) -> list[str]:
    return json.dumps(label.modules[args.module], indent=2).splitlines()


_RENDERERS = {
    "metadata": _render_metadata,
    "provenance": _render_provenance,
    "variables": _render_variables,
    "statistics": _render_statistics,
    "pair_plots": _render_pair_plots,
    "probabilistic_model": _render_probabilistic,
    "ground_truth_correlations": _render_ground_truth,
}


if __name__ == "__main__":
    sys.exit(main())
