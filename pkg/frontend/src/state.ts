/**
 * Viewer state: the loaded label plus the current interactive selections.
 * Transitions are pure, and every selection always references an entry
 * that exists in the label, so renderers never need fallback paths.
 */

import {
  CorrelationReport,
  GroundTruthCorrelations,
  LabelDocument,
  PairPlotCell,
  PairPlots,
  PosteriorEntry,
  ProbabilisticModel,
} from "./label.js";

export type Sign = "positive" | "negative";
export type CatContMeasure = "count" | "sum" | "mean";

export interface ViewState {
  label: LabelDocument;
  /** Key of the selected pair, or null when pair_plots is absent/empty. */
  pair: { a: string; b: string } | null;
  measure: CatContMeasure;
  /** Selected probabilistic target value, null when absent/empty. */
  targetValue: string | null;
  sign: Sign;
  /** Selected correlation report, null when absent/empty. */
  report: { valueColumn: string; aggregate: string } | null;
}

export function pairPlotsOf(label: LabelDocument): PairPlots | null {
  return (label.modules.pair_plots as PairPlots | undefined) ?? null;
}

export function probabilisticOf(label: LabelDocument): ProbabilisticModel | null {
  return (label.modules.probabilistic_model as ProbabilisticModel | undefined) ?? null;
}

export function groundTruthOf(label: LabelDocument): GroundTruthCorrelations | null {
  return (label.modules.ground_truth_correlations as GroundTruthCorrelations | undefined) ?? null;
}

/** Look up a pair cell; selection order does not matter (pairs are unordered). */
export function findPair(label: LabelDocument, a: string, b: string): PairPlotCell | null {
  const plots = pairPlotsOf(label);
  if (!plots) return null;
  for (const cell of plots.pairs) {
    if (
      (cell.column_a === a && cell.column_b === b) ||
      (cell.column_a === b && cell.column_b === a)
    ) {
      return cell;
    }
  }
  return null;
}

export function findPosterior(label: LabelDocument, targetValue: string): PosteriorEntry | null {
  const model = probabilisticOf(label);
  if (!model) return null;
  return model.entries.find((e) => e.target_value === targetValue) ?? null;
}

export function findReport(
  label: LabelDocument,
  valueColumn: string,
  aggregate: string,
): CorrelationReport | null {
  const gt = groundTruthOf(label);
  if (!gt) return null;
  return (
    gt.reports.find((r) => r.value_column === valueColumn && r.aggregate === aggregate) ?? null
  );
}

/** Initial state: first pair, first target value, first report, positive sign. */
export function initialState(label: LabelDocument): ViewState {
  const plots = pairPlotsOf(label);
  const firstPair = plots && plots.pairs.length > 0 ? plots.pairs[0] : null;
  const model = probabilisticOf(label);
  const firstEntry = model && model.entries.length > 0 ? model.entries[0] : null;
  const gt = groundTruthOf(label);
  const firstReport = gt && gt.reports.length > 0 ? gt.reports[0] : null;
  return {
    label,
    pair: firstPair ? { a: firstPair.column_a, b: firstPair.column_b } : null,
    measure: "count",
    targetValue: firstEntry ? firstEntry.target_value : null,
    sign: "positive",
    report: firstReport
      ? { valueColumn: firstReport.value_column, aggregate: firstReport.aggregate }
      : null,
  };
}

export function selectPair(state: ViewState, a: string, b: string): ViewState {
  if (!findPair(state.label, a, b)) throw new Error(`no pair (${a}, ${b}) in the label`);
  // Keep the caller's orientation so dropdown A keeps showing the chosen
  // column; charts render from the payload cell, which is unordered.
  return { ...state, pair: { a, b } };
}

export function selectMeasure(state: ViewState, measure: CatContMeasure): ViewState {
  return { ...state, measure };
}

export function selectTargetValue(state: ViewState, targetValue: string): ViewState {
  if (!findPosterior(state.label, targetValue)) {
    throw new Error(`no posterior entry for target value '${targetValue}'`);
  }
  return { ...state, targetValue };
}

export function selectSign(state: ViewState, sign: Sign): ViewState {
  return { ...state, sign };
}

export function selectReport(state: ViewState, valueColumn: string, aggregate: string): ViewState {
  if (!findReport(state.label, valueColumn, aggregate)) {
    throw new Error(`no correlation report for (${valueColumn}, ${aggregate})`);
  }
  return { ...state, report: { valueColumn, aggregate } };
}
