/**
 * Types for the dataset label JSON document, the viewer's sole input.
 *
 * The shapes mirror the wire format the label maker emits. The viewer
 * never constructs or mutates these documents; it only reads them.
 */

export const MODULE_ORDER = [
  "metadata",
  "provenance",
  "variables",
  "statistics",
  "pair_plots",
  "probabilistic_model",
  "ground_truth_correlations",
] as const;

export type ModuleName = (typeof MODULE_ORDER)[number];

export const SUPPORTED_MAJOR = 1;

export interface LabelDocument {
  schema_version: string;
  generated_at: string;
  generator: { name: string; version?: string };
  modules: Partial<Record<ModuleName, unknown>>;
}

export interface Metadata {
  filename: string;
  format: string;
  url: string | null;
  domain: string | null;
  keywords: string[];
  type: string;
  rows: number;
  columns: number;
  license: string | null;
  released: string | null;
  range: { from: string | null; to: string | null };
  description: string | null;
  missing_pct: string;
  missing_fraction: number;
}

export interface Contact {
  name: string | null;
  url: string | null;
  email: string | null;
}

export interface Provenance {
  source: Contact;
  author: Contact;
}

export interface Variables {
  entries: { name: string; description: string | null }[];
}

export interface FrequencyCell {
  kind: "value" | "tie" | "missing_pseudo";
  display: string;
  value: string | null;
  frequency: number | null;
}

export interface CategoricalProfile {
  name: string;
  subtype: string;
  count: number;
  unique_entries: number;
  unique_includes_missing: boolean;
  most_frequent: FrequencyCell;
  least_frequent: FrequencyCell;
  missing_pct: string;
  missing_fraction: number;
}

export interface NumericProfile {
  name: string;
  count: number;
  min: number;
  median: number;
  max: number;
  mean: number;
  standard_deviation: number | null;
  zeros_pct: string;
  missing_pct: string;
  missing_fraction: number;
}

export interface Statistics {
  ordinal: CategoricalProfile[];
  nominal: CategoricalProfile[];
  continuous: NumericProfile[];
  discrete: NumericProfile[];
}

/** Single-column distribution; exactly one of bin_edges/categories is set. */
export interface Histogram {
  column: string;
  bin_edges?: number[];
  categories?: string[];
  counts: number[];
  other_count: number;
  missing_count: number;
}

export interface ContContPayload {
  x_edges: number[];
  y_edges: number[];
  counts: number[][];
  pearson_r: number | null;
}

export interface CatCatPayload {
  categories_a: string[];
  categories_b: string[];
  counts: number[][];
}

export interface CatContEntry {
  category: string;
  count: number;
  sum: number;
  mean: number;
}

export interface CatContPayload {
  category_column: string;
  value_column: string;
  entries: CatContEntry[];
}

export type PairKind = "cont_cont" | "cat_cat" | "cat_cont";

export interface PairPlotCell {
  column_a: string;
  column_b: string;
  kind: PairKind;
  payload: ContContPayload | CatCatPayload | CatContPayload;
}

export interface PairPlots {
  histograms: Histogram[];
  pairs: PairPlotCell[];
}

export interface PosteriorEntry {
  target_column: string;
  target_value: string;
  condition_column: string;
  support: string[];
  counts: number[];
  alpha: number;
  point_estimates: number[];
  intervals: [number, number][];
  interval_level: number;
  seed: number;
  mc_samples: number;
}

export interface ProbabilisticModel {
  entries: PosteriorEntry[];
}

export interface CorrelationEntry {
  demographic: string;
  r: number | null;
}

export interface CorrelationReport {
  aggregate: "sum" | "mean" | "count" | "per_capita";
  value_column: string;
  key_column: string;
  joined_keys: number;
  unmatched_dataset_keys: number;
  unmatched_ground_truth_keys: number;
  excluded_rows: number;
  entries: CorrelationEntry[];
  positive: CorrelationEntry[];
  negative: CorrelationEntry[];
}

export interface GroundTruthCorrelations {
  ground_truth: { name: string | null; url: string | null };
  reports: CorrelationReport[];
}

/** Canonical on-screen text for a label number.

    Label floats are already rounded to at most 6 fractional digits, so
    the shortest round-trip rendering reproduces the wire token (integral
    floats serialize without a fractional part on both sides). */
export function numberText(x: number): string {
  if (Object.is(x, -0)) return "0";
  return String(x);
}
