/**
 * Module panels. Each renderer is a pure function of (label, state):
 * the same inputs always produce the same DOM, so tests can snapshot
 * panel markup. Absent modules simply do not render.
 *
 * Numbers are shown verbatim from the label via numberText; percent
 * strings and display strings pass through untouched.
 */

import {
  CatCatPayload,
  CatContPayload,
  CategoricalProfile,
  ContContPayload,
  Contact,
  GroundTruthCorrelations,
  Histogram,
  LabelDocument,
  MODULE_ORDER,
  Metadata,
  ModuleName,
  NumericProfile,
  PairPlots,
  PosteriorEntry,
  ProbabilisticModel,
  Provenance,
  Statistics,
  Variables,
  numberText,
} from "./label.js";
import { catContBars, heatmap, histogramChart, signedBarChart, whiskerChart } from "./charts.js";
import { ViewState, findPair, findPosterior, findReport, pairPlotsOf } from "./state.js";
import { Violation } from "./validate.js";

const MODULE_TITLES: Record<ModuleName, string> = {
  metadata: "Metadata",
  provenance: "Provenance",
  variables: "Variables",
  statistics: "Statistics",
  pair_plots: "Pair Plots",
  probabilistic_model: "Probabilistic Model",
  ground_truth_correlations: "Ground Truth Correlations",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cssClass?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cssClass) node.className = cssClass;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Long names get an ellipsis but keep the full text as a hover tooltip. */
function nameCell(tag: "td" | "th", name: string): HTMLElement {
  const cell = el(tag, "name-cell", name);
  cell.title = name;
  return cell;
}

function factRow(term: string, value: string | null): HTMLElement {
  const row = el("tr", "fact-row");
  row.appendChild(el("th", "fact-term", term));
  row.appendChild(el("td", "fact-value", value === null ? "—" : value));
  return row;
}

function section(name: ModuleName): HTMLElement {
  const panel = el("section", "module");
  panel.id = `module-${name}`;
  const header = el("h2", "module-title", MODULE_TITLES[name]);
  panel.appendChild(header);
  return panel;
}

// ---------------------------------------------------------------------------
// Static modules
// ---------------------------------------------------------------------------

function metadataPanel(meta: Metadata): HTMLElement {
  const panel = section("metadata");
  const table = el("table", "fact-table");
  table.appendChild(factRow("filename", meta.filename));
  table.appendChild(factRow("format", meta.format));
  table.appendChild(factRow("url", meta.url));
  table.appendChild(factRow("domain", meta.domain));
  table.appendChild(factRow("keywords", meta.keywords.join(", ")));
  table.appendChild(factRow("type", meta.type));
  table.appendChild(factRow("rows", numberText(meta.rows)));
  table.appendChild(factRow("columns", numberText(meta.columns)));
  table.appendChild(factRow("license", meta.license));
  table.appendChild(factRow("released", meta.released));
  table.appendChild(
    factRow(
      "range",
      `${meta.range.from ?? "—"} .. ${meta.range.to ?? "—"}`,
    ),
  );
  table.appendChild(factRow("missing cells", meta.missing_pct));
  table.appendChild(factRow("missing fraction", numberText(meta.missing_fraction)));
  panel.appendChild(table);
  const description = el("p", "description", meta.description ?? "");
  panel.appendChild(description);
  return panel;
}

function contactBlock(title: string, contact: Contact): HTMLElement {
  const block = el("div", "contact");
  block.appendChild(el("h3", "contact-title", title));
  const table = el("table", "fact-table");
  table.appendChild(factRow("name", contact.name));
  table.appendChild(factRow("url", contact.url));
  table.appendChild(factRow("email", contact.email));
  block.appendChild(table);
  return block;
}

function provenancePanel(provenance: Provenance): HTMLElement {
  const panel = section("provenance");
  panel.appendChild(contactBlock("Source", provenance.source));
  panel.appendChild(contactBlock("Author", provenance.author));
  return panel;
}

function variablesPanel(variables: Variables): HTMLElement {
  const panel = section("variables");
  const table = el("table", "grid-table");
  const head = el("tr");
  head.appendChild(el("th", undefined, "variable"));
  head.appendChild(el("th", undefined, "description"));
  table.appendChild(head);
  for (const entry of variables.entries) {
    const row = el("tr");
    row.appendChild(nameCell("td", entry.name));
    row.appendChild(el("td", undefined, entry.description ?? ""));
    table.appendChild(row);
  }
  panel.appendChild(table);
  return panel;
}

const CATEGORICAL_HEADERS = [
  "column",
  "subtype",
  "count",
  "unique",
  "most frequent",
  "least frequent",
  "missing",
];

function categoricalTable(profiles: CategoricalProfile[]): HTMLElement {
  const table = el("table", "grid-table");
  const head = el("tr");
  for (const header of CATEGORICAL_HEADERS) head.appendChild(el("th", undefined, header));
  table.appendChild(head);
  for (const profile of profiles) {
    const row = el("tr");
    row.appendChild(nameCell("td", profile.name));
    row.appendChild(el("td", undefined, profile.subtype));
    row.appendChild(el("td", "num", numberText(profile.count)));
    const unique = el(
      "td",
      "num",
      numberText(profile.unique_entries) + (profile.unique_includes_missing ? "*" : ""),
    );
    if (profile.unique_includes_missing) unique.title = "includes the missing pseudo-entry";
    row.appendChild(unique);
    row.appendChild(el("td", undefined, profile.most_frequent.display));
    row.appendChild(el("td", undefined, profile.least_frequent.display));
    row.appendChild(el("td", "num", profile.missing_pct));
    table.appendChild(row);
  }
  return table;
}

const NUMERIC_HEADERS = [
  "column",
  "count",
  "min",
  "median",
  "max",
  "mean",
  "std dev",
  "zeros",
  "missing",
];

function numericTable(profiles: NumericProfile[]): HTMLElement {
  const table = el("table", "grid-table");
  const head = el("tr");
  for (const header of NUMERIC_HEADERS) head.appendChild(el("th", undefined, header));
  table.appendChild(head);
  for (const profile of profiles) {
    const row = el("tr");
    row.appendChild(nameCell("td", profile.name));
    row.appendChild(el("td", "num", numberText(profile.count)));
    row.appendChild(el("td", "num", numberText(profile.min)));
    row.appendChild(el("td", "num", numberText(profile.median)));
    row.appendChild(el("td", "num", numberText(profile.max)));
    row.appendChild(el("td", "num", numberText(profile.mean)));
    row.appendChild(
      el(
        "td",
        "num",
        profile.standard_deviation === null ? "undefined" : numberText(profile.standard_deviation),
      ),
    );
    row.appendChild(el("td", "num", profile.zeros_pct));
    row.appendChild(el("td", "num", profile.missing_pct));
    table.appendChild(row);
  }
  return table;
}

function statisticsPanel(statistics: Statistics): HTMLElement {
  const panel = section("statistics");
  const strata: [string, HTMLElement | null][] = [
    ["Ordinal", statistics.ordinal.length ? categoricalTable(statistics.ordinal) : null],
    ["Nominal", statistics.nominal.length ? categoricalTable(statistics.nominal) : null],
    ["Continuous", statistics.continuous.length ? numericTable(statistics.continuous) : null],
    ["Discrete", statistics.discrete.length ? numericTable(statistics.discrete) : null],
  ];
  for (const [title, table] of strata) {
    if (!table) continue;
    panel.appendChild(el("h3", "stratum-title", title));
    panel.appendChild(table);
  }
  return panel;
}

// ---------------------------------------------------------------------------
// Pair plots
// ---------------------------------------------------------------------------

function option(value: string, selected: boolean): HTMLOptionElement {
  const opt = el("option", undefined, value);
  opt.value = value;
  if (selected) opt.selected = true;
  return opt;
}

/** Columns that appear in at least one pair, in payload order. */
function pairColumns(plots: PairPlots): string[] {
  const seen: string[] = [];
  for (const cell of plots.pairs) {
    for (const column of [cell.column_a, cell.column_b]) {
      if (!seen.includes(column)) seen.push(column);
    }
  }
  return seen;
}

function partnersOf(plots: PairPlots, column: string): string[] {
  const partners: string[] = [];
  for (const cell of plots.pairs) {
    if (cell.column_a === column && !partners.includes(cell.column_b)) partners.push(cell.column_b);
    if (cell.column_b === column && !partners.includes(cell.column_a)) partners.push(cell.column_a);
  }
  return partners;
}

function contContChart(payload: ContContPayload): HTMLElement {
  const wrap = el("div", "pair-chart");
  const xLabels = payload.x_edges.slice(0, -1).map((edge, i) => {
    return `[${numberText(edge)}, ${numberText(payload.x_edges[i + 1])})`;
  });
  const yLabels = payload.y_edges.slice(0, -1).map((edge, i) => {
    return `[${numberText(edge)}, ${numberText(payload.y_edges[i + 1])})`;
  });
  wrap.appendChild(
    heatmap(xLabels, yLabels, payload.counts, {
      xCorners: [numberText(payload.x_edges[0]), numberText(payload.x_edges[payload.x_edges.length - 1])],
      yCorners: [numberText(payload.y_edges[0]), numberText(payload.y_edges[payload.y_edges.length - 1])],
    }),
  );
  const r = el(
    "p",
    "pearson",
    payload.pearson_r === null ? "r undefined" : `r = ${numberText(payload.pearson_r)}`,
  );
  wrap.appendChild(r);
  return wrap;
}

function catCatChart(payload: CatCatPayload): HTMLElement {
  const wrap = el("div", "pair-chart");
  wrap.appendChild(heatmap(payload.categories_a, payload.categories_b, payload.counts));
  const legendA = el("p", "axis-note", `x: ${payload.categories_a.join(", ")}`);
  const legendB = el("p", "axis-note", `y: ${payload.categories_b.join(", ")}`);
  wrap.appendChild(legendA);
  wrap.appendChild(legendB);
  return wrap;
}

function catContChart(payload: CatContPayload, state: ViewState): HTMLElement {
  const wrap = el("div", "pair-chart");
  const toggle = el("div", "measure-toggle");
  for (const measure of ["count", "sum", "mean"] as const) {
    const lbl = el("label", "toggle-option");
    const radio = el("input") as HTMLInputElement;
    radio.type = "radio";
    radio.name = "measure";
    radio.value = measure;
    radio.checked = state.measure === measure;
    radio.dataset.action = "measure";
    lbl.appendChild(radio);
    lbl.appendChild(document.createTextNode(measure));
    toggle.appendChild(lbl);
  }
  wrap.appendChild(toggle);
  wrap.appendChild(catContBars(payload.entries, state.measure));
  const note = el(
    "p",
    "axis-note",
    `${payload.category_column} vs ${payload.value_column} (${state.measure})`,
  );
  wrap.appendChild(note);
  return wrap;
}

function pairPlotsPanel(plots: PairPlots, state: ViewState): HTMLElement {
  const panel = section("pair_plots");
  if (!state.pair) {
    panel.appendChild(el("p", "empty-note", "no pairs recorded"));
    return panel;
  }
  const cell = findPair(state.label, state.pair.a, state.pair.b);
  if (!cell) throw new Error("state.pair does not reference a recorded pair");

  const controls = el("div", "pair-controls");
  const selectA = el("select") as HTMLSelectElement;
  selectA.dataset.action = "pair-a";
  for (const column of pairColumns(plots)) {
    selectA.appendChild(option(column, column === state.pair.a));
  }
  const selectB = el("select") as HTMLSelectElement;
  selectB.dataset.action = "pair-b";
  for (const column of partnersOf(plots, state.pair.a)) {
    selectB.appendChild(option(column, column === state.pair.b));
  }
  controls.appendChild(selectA);
  controls.appendChild(document.createTextNode(" × "));
  controls.appendChild(selectB);
  panel.appendChild(controls);

  const chartHost = el("div", "pair-chart-host");
  chartHost.dataset.pair = `${cell.column_a}|${cell.column_b}`;
  chartHost.dataset.kind = cell.kind;
  if (cell.kind === "cont_cont") {
    chartHost.appendChild(contContChart(cell.payload as ContContPayload));
  } else if (cell.kind === "cat_cat") {
    chartHost.appendChild(catCatChart(cell.payload as CatCatPayload));
  } else {
    chartHost.appendChild(catContChart(cell.payload as CatContPayload, state));
  }
  panel.appendChild(chartHost);

  const marginals = el("div", "marginals");
  for (const column of [cell.column_a, cell.column_b]) {
    const histogram = plots.histograms.find((h: Histogram) => h.column === column);
    if (histogram) marginals.appendChild(histogramChart(histogram));
  }
  panel.appendChild(marginals);
  return panel;
}

// ---------------------------------------------------------------------------
// Probabilistic model
// ---------------------------------------------------------------------------

function posteriorTable(entry: PosteriorEntry): HTMLElement {
  const table = el("table", "grid-table");
  const head = el("tr");
  for (const header of ["category", "count", "estimate", "interval"]) {
    head.appendChild(el("th", undefined, header));
  }
  table.appendChild(head);
  entry.support.forEach((category, i) => {
    const row = el("tr");
    row.appendChild(nameCell("td", category));
    row.appendChild(el("td", "num", numberText(entry.counts[i])));
    row.appendChild(el("td", "num", numberText(entry.point_estimates[i])));
    const [lo, hi] = entry.intervals[i];
    row.appendChild(el("td", "num", `[${numberText(lo)}, ${numberText(hi)}]`));
    table.appendChild(row);
  });
  return table;
}

function probabilisticPanel(model: ProbabilisticModel, state: ViewState): HTMLElement {
  const panel = section("probabilistic_model");
  if (!state.targetValue) {
    panel.appendChild(el("p", "empty-note", "no posterior entries recorded"));
    return panel;
  }
  const entry = findPosterior(state.label, state.targetValue);
  if (!entry) throw new Error("state.targetValue does not reference a recorded entry");

  const controls = el("div", "posterior-controls");
  const select = el("select") as HTMLSelectElement;
  select.dataset.action = "target-value";
  for (const candidate of model.entries) {
    select.appendChild(option(candidate.target_value, candidate.target_value === state.targetValue));
  }
  // A single recorded target leaves nothing to toggle.
  if (model.entries.length === 1) select.disabled = true;
  controls.appendChild(select);
  panel.appendChild(controls);

  const heading = el(
    "h3",
    "posterior-title",
    `P(${entry.condition_column} | ${entry.target_column} = ${entry.target_value})`,
  );
  panel.appendChild(heading);
  const detail = el(
    "p",
    "posterior-detail",
    `alpha ${numberText(entry.alpha)}, interval level ${numberText(entry.interval_level)}, ` +
      `seed ${numberText(entry.seed)}, ${numberText(entry.mc_samples)} samples`,
  );
  panel.appendChild(detail);
  panel.appendChild(whiskerChart(entry.support, entry.point_estimates, entry.intervals));
  panel.appendChild(posteriorTable(entry));
  return panel;
}

// ---------------------------------------------------------------------------
// Ground truth correlations
// ---------------------------------------------------------------------------

function groundTruthPanel(gt: GroundTruthCorrelations, state: ViewState): HTMLElement {
  const panel = section("ground_truth_correlations");
  const sourceBits = [gt.ground_truth.name, gt.ground_truth.url].filter((x) => x);
  panel.appendChild(el("p", "gt-source", `reference: ${sourceBits.join(", ")}`));
  if (!state.report) {
    panel.appendChild(el("p", "empty-note", "no correlation reports recorded"));
    return panel;
  }
  const report = findReport(state.label, state.report.valueColumn, state.report.aggregate);
  if (!report) throw new Error("state.report does not reference a recorded report");

  const controls = el("div", "gt-controls");
  const select = el("select") as HTMLSelectElement;
  select.dataset.action = "report";
  const gtModule = state.label.modules.ground_truth_correlations as GroundTruthCorrelations;
  for (const candidate of gtModule.reports) {
    const key = `${candidate.value_column}|${candidate.aggregate}`;
    const opt = option(`${candidate.aggregate} of ${candidate.value_column}`, candidate === report);
    opt.value = key;
    select.appendChild(opt);
  }
  controls.appendChild(select);

  const signToggle = el("div", "sign-toggle");
  for (const sign of ["positive", "negative"] as const) {
    const lbl = el("label", "toggle-option");
    const radio = el("input") as HTMLInputElement;
    radio.type = "radio";
    radio.name = "sign";
    radio.value = sign;
    radio.checked = state.sign === sign;
    radio.dataset.action = "sign";
    lbl.appendChild(radio);
    lbl.appendChild(document.createTextNode(sign));
    signToggle.appendChild(lbl);
  }
  controls.appendChild(signToggle);
  panel.appendChild(controls);

  const joinNote = el(
    "p",
    "join-note",
    `${numberText(report.joined_keys)} joined keys via ${report.key_column}; ` +
      `${numberText(report.unmatched_dataset_keys)} dataset and ` +
      `${numberText(report.unmatched_ground_truth_keys)} reference keys unmatched; ` +
      `${numberText(report.excluded_rows)} rows excluded`,
  );
  panel.appendChild(joinNote);

  const list = report[state.sign];
  const host = el("div", "correlation-host");
  host.dataset.sign = state.sign;
  host.dataset.report = `${report.value_column}|${report.aggregate}`;
  if (list.length === 0) {
    host.appendChild(el("p", "empty-note", `no ${state.sign} correlations`));
  } else {
    host.appendChild(signedBarChart(list));
  }
  panel.appendChild(host);
  return panel;
}

// ---------------------------------------------------------------------------
// Top level
// ---------------------------------------------------------------------------

export function renderErrorPanel(violations: Violation[]): HTMLElement {
  const panel = el("section", "module error-panel");
  panel.id = "error-panel";
  panel.appendChild(el("h2", "module-title", "Label failed validation"));
  const table = el("table", "grid-table");
  const head = el("tr");
  for (const header of ["path", "rule", "message"]) head.appendChild(el("th", undefined, header));
  table.appendChild(head);
  for (const violation of violations) {
    const row = el("tr");
    row.appendChild(el("td", "violation-path", violation.path));
    row.appendChild(el("td", "violation-rule", violation.rule));
    row.appendChild(el("td", undefined, violation.message));
    table.appendChild(row);
  }
  panel.appendChild(table);
  return panel;
}

/** All module panels in presentation order; absent modules are omitted. */
export function renderModules(state: ViewState): HTMLElement {
  const label = state.label;
  const host = el("div", "modules");
  for (const name of MODULE_ORDER) {
    if (!(name in label.modules)) continue;
    switch (name) {
      case "metadata":
        host.appendChild(metadataPanel(label.modules.metadata as Metadata));
        break;
      case "provenance":
        host.appendChild(provenancePanel(label.modules.provenance as Provenance));
        break;
      case "variables":
        host.appendChild(variablesPanel(label.modules.variables as Variables));
        break;
      case "statistics":
        host.appendChild(statisticsPanel(label.modules.statistics as Statistics));
        break;
      case "pair_plots":
        host.appendChild(pairPlotsPanel(pairPlotsOf(label) as PairPlots, state));
        break;
      case "probabilistic_model":
        host.appendChild(
          probabilisticPanel(label.modules.probabilistic_model as ProbabilisticModel, state),
        );
        break;
      case "ground_truth_correlations":
        host.appendChild(
          groundTruthPanel(label.modules.ground_truth_correlations as GroundTruthCorrelations, state),
        );
        break;
    }
  }
  const footer = el(
    "p",
    "envelope-note",
    `${label.generator.name} ${label.generator.version ?? ""} · ` +
      `schema ${label.schema_version} · generated ${label.generated_at}`,
  );
  host.appendChild(footer);
  return host;
}
