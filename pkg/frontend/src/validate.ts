/**
 * Label validation over raw JSON text, mirroring the maker's validator
 * rule for rule so the viewer accepts and rejects exactly the same
 * documents. Validation never throws; every problem becomes a violation
 * with a JSON path and a stable rule id.
 *
 * Rules: json.malformed, envelope.shape, schema_version.missing,
 * schema_version.unsupported, module.unknown, module.shape,
 * metadata.required, metadata.shape, percent.format, probability.sum,
 * histogram.sum, pearson.range.
 */

import { LabelDocument, MODULE_ORDER, SUPPORTED_MAJOR } from "./label.js";

export interface Violation {
  path: string;
  rule: string;
  message: string;
}

export interface ValidationResult {
  ok: boolean;
  violations: Violation[];
  /** Parsed document, present only when ok. */
  label: LabelDocument | null;
}

const DATASET_PCT_RE = /^\d+\.\d%$/;
const COLUMN_PCT_RE = /^\d+\.\d{2}%$/;
const PROBABILITY_SUM_TOL = 1e-6;

const MODULE_SET = new Set<string>(MODULE_ORDER);

// Metadata scalar fields: name -> nullable.
const METADATA_SCALARS: [string, boolean][] = [
  ["filename", false],
  ["format", false],
  ["url", true],
  ["domain", true],
  ["type", false],
  ["license", true],
  ["released", true],
  ["description", true],
];

function isObject(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function isNumber(x: unknown): x is number {
  return typeof x === "number";
}

function isInt(x: unknown): x is number {
  return typeof x === "number" && Number.isInteger(x);
}

class Checker {
  violations: Violation[] = [];

  add(path: string, rule: string, message: string): void {
    this.violations.push({ path, rule, message });
  }

  envelope(document: unknown): Record<string, unknown> | null {
    if (!isObject(document)) {
      this.add("$", "envelope.shape", "top level must be an object");
      return null;
    }
    const version = document["schema_version"];
    if (typeof version !== "string") {
      this.add("schema_version", "schema_version.missing", "schema_version is required");
    } else {
      const match = /^(\d+)\.\d+\.\d+$/.exec(version);
      if (!match || Number(match[1]) !== SUPPORTED_MAJOR) {
        this.add(
          "schema_version",
          "schema_version.unsupported",
          `schema_version '${version}' is not supported (major ${SUPPORTED_MAJOR})`,
        );
      }
    }
    if (typeof document["generated_at"] !== "string") {
      this.add("generated_at", "envelope.shape", "generated_at must be a string");
    }
    const generator = document["generator"];
    if (!isObject(generator) || typeof generator["name"] !== "string") {
      this.add("generator", "envelope.shape", "generator must be an object with a name");
    }
    const modules = document["modules"];
    if (!isObject(modules)) {
      this.add("modules", "envelope.shape", "modules must be an object");
      return null;
    }
    for (const name of Object.keys(modules).filter((n) => !MODULE_SET.has(n)).sort()) {
      this.add(`modules.${name}`, "module.unknown", `unknown module '${name}'`);
    }
    return modules;
  }

  metadata(modules: Record<string, unknown>): number | null {
    const meta = modules["metadata"];
    if (meta === undefined) {
      this.add("modules.metadata", "metadata.required", "metadata module is required");
      return null;
    }
    if (!isObject(meta)) {
      this.add("modules.metadata", "metadata.shape", "metadata must be an object");
      return null;
    }

    for (const [name, nullable] of METADATA_SCALARS) {
      if (!(name in meta)) {
        this.add(`modules.metadata.${name}`, "metadata.shape", `${name} is required`);
        continue;
      }
      const value = meta[name];
      if (value === null) {
        if (!nullable) {
          this.add(`modules.metadata.${name}`, "metadata.shape", `${name} cannot be null`);
        }
      } else if (typeof value !== "string") {
        this.add(`modules.metadata.${name}`, "metadata.shape", `${name} must be a string`);
      }
    }

    const keywords = meta["keywords"];
    if (!Array.isArray(keywords) || keywords.some((k) => typeof k !== "string")) {
      this.add("modules.metadata.keywords", "metadata.shape", "keywords must be a list of strings");
    }

    for (const name of ["rows", "columns"]) {
      const value = meta[name];
      if (!isInt(value) || value < 0) {
        this.add(`modules.metadata.${name}`, "metadata.shape", `${name} must be a nonnegative integer`);
      }
    }

    const range = meta["range"];
    if (!isObject(range)) {
      this.add("modules.metadata.range", "metadata.shape", "range must be an object");
    } else {
      for (const bound of ["from", "to"]) {
        const value = range[bound];
        if (!(bound in range) || !(value === null || typeof value === "string")) {
          this.add(
            `modules.metadata.range.${bound}`,
            "metadata.shape",
            `range.${bound} must be a string or null`,
          );
        }
      }
    }

    const pct = meta["missing_pct"];
    if (typeof pct !== "string" || !DATASET_PCT_RE.test(pct)) {
      this.add(
        "modules.metadata.missing_pct",
        "percent.format",
        'missing_pct must be a one-decimal percent string like "5.2%"',
      );
    }
    const fraction = meta["missing_fraction"];
    if (!isNumber(fraction) || fraction < 0 || fraction > 1) {
      this.add(
        "modules.metadata.missing_fraction",
        "metadata.shape",
        "missing_fraction must be a number in [0, 1]",
      );
    }

    const rows = meta["rows"];
    return isInt(rows) ? rows : null;
  }

  statistics(payload: unknown): void {
    if (!isObject(payload)) {
      this.add("modules.statistics", "module.shape", "statistics must be an object");
      return;
    }
    for (const stratum of ["ordinal", "nominal", "continuous", "discrete"]) {
      const profiles = payload[stratum] ?? [];
      if (!Array.isArray(profiles)) {
        this.add(`modules.statistics.${stratum}`, "module.shape", `${stratum} must be a list`);
        continue;
      }
      profiles.forEach((profile, i) => {
        if (!isObject(profile)) return;
        for (const key of ["missing_pct", "zeros_pct"]) {
          if (!(key in profile)) continue;
          const value = profile[key];
          if (typeof value !== "string" || !COLUMN_PCT_RE.test(value)) {
            this.add(
              `modules.statistics.${stratum}[${i}].${key}`,
              "percent.format",
              `${key} must be a two-decimal percent string like "3.20%"`,
            );
          }
        }
      });
    }
  }

  private histogramSum(histogram: unknown, path: string, rows: number | null): void {
    if (!isObject(histogram)) return;
    const counts = histogram["counts"];
    const other = histogram["other_count"] ?? 0;
    const missing = histogram["missing_count"] ?? 0;
    if (!Array.isArray(counts) || counts.some((c) => !isInt(c))) {
      this.add(`${path}.counts`, "module.shape", "counts must be a list of integers");
      return;
    }
    if (rows !== null && isInt(other) && isInt(missing)) {
      const total = counts.reduce((a, b) => a + b, 0) + other + missing;
      if (total !== rows) {
        this.add(
          `${path}.counts`,
          "histogram.sum",
          `counts total ${total} but metadata reports ${rows} rows`,
        );
      }
    }
  }

  private pearsonRange(value: unknown, path: string): void {
    if (value === null || value === undefined) return;
    if (!isNumber(value) || value < -1 || value > 1) {
      this.add(path, "pearson.range", `correlation ${JSON.stringify(value)} is outside [-1, 1]`);
    }
  }

  pairPlots(payload: unknown, rows: number | null): void {
    if (!isObject(payload)) {
      this.add("modules.pair_plots", "module.shape", "pair_plots must be an object");
      return;
    }
    const histograms = payload["histograms"] ?? [];
    if (Array.isArray(histograms)) {
      histograms.forEach((histogram, i) => {
        this.histogramSum(histogram, `modules.pair_plots.histograms[${i}]`, rows);
      });
    }
    const pairs = payload["pairs"] ?? [];
    if (Array.isArray(pairs)) {
      pairs.forEach((cell, i) => {
        if (isObject(cell) && isObject(cell["payload"])) {
          this.pearsonRange(
            (cell["payload"] as Record<string, unknown>)["pearson_r"] ?? null,
            `modules.pair_plots.pairs[${i}].payload.pearson_r`,
          );
        }
      });
    }
  }

  probabilistic(payload: unknown): void {
    if (!isObject(payload)) {
      this.add("modules.probabilistic_model", "module.shape", "probabilistic_model must be an object");
      return;
    }
    const entries = payload["entries"] ?? [];
    if (!Array.isArray(entries)) {
      this.add("modules.probabilistic_model.entries", "module.shape", "entries must be a list");
      return;
    }
    entries.forEach((entry, i) => {
      if (!isObject(entry)) return;
      const estimates = entry["point_estimates"];
      const path = `modules.probabilistic_model.entries[${i}].point_estimates`;
      if (!Array.isArray(estimates) || estimates.some((p) => !isNumber(p))) {
        this.add(path, "module.shape", "point_estimates must be a list of numbers");
        return;
      }
      const total = estimates.reduce((a, b) => a + b, 0);
      if (Math.abs(total - 1.0) > PROBABILITY_SUM_TOL) {
        this.add(
          path,
          "probability.sum",
          `point estimates sum to ${total.toFixed(8)}, expected 1 within ${PROBABILITY_SUM_TOL}`,
        );
      }
    });
  }

  groundTruth(payload: unknown): void {
    if (!isObject(payload)) {
      this.add(
        "modules.ground_truth_correlations",
        "module.shape",
        "ground_truth_correlations must be an object",
      );
      return;
    }
    const reports = payload["reports"] ?? [];
    if (!Array.isArray(reports)) return;
    reports.forEach((report, i) => {
      if (!isObject(report)) return;
      const entries = report["entries"] ?? [];
      if (!Array.isArray(entries)) return;
      entries.forEach((entry, j) => {
        if (isObject(entry)) {
          this.pearsonRange(
            entry["r"] ?? null,
            `modules.ground_truth_correlations.reports[${i}].entries[${j}].r`,
          );
        }
      });
    });
  }
}

/** Validate raw label JSON text. Never throws. */
export function validateLabel(text: string): ValidationResult {
  const checker = new Checker();
  let document: unknown;
  try {
    document = JSON.parse(text);
  } catch (exc) {
    checker.add("$", "json.malformed", exc instanceof Error ? exc.message : String(exc));
    return { ok: false, violations: checker.violations, label: null };
  }

  const modules = checker.envelope(document);
  if (modules === null) {
    return { ok: false, violations: checker.violations, label: null };
  }

  const rows = checker.metadata(modules);
  if ("statistics" in modules) checker.statistics(modules["statistics"]);
  if ("pair_plots" in modules) checker.pairPlots(modules["pair_plots"], rows);
  if ("probabilistic_model" in modules) checker.probabilistic(modules["probabilistic_model"]);
  if ("ground_truth_correlations" in modules) checker.groundTruth(modules["ground_truth_correlations"]);

  const ok = checker.violations.length === 0;
  return {
    ok,
    violations: checker.violations,
    label: ok ? (document as LabelDocument) : null,
  };
}
