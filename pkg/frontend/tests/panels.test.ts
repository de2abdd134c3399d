/**
 * Panel rendering details: structure, ordering, verbatim values, and
 * rendering purity (same state, same markup).
 */

import { beforeEach, describe, expect, it } from "vitest";

import { numberText } from "../src/label.js";
import { renderErrorPanel, renderModules } from "../src/panels.js";
import { initialState, selectPair } from "../src/state.js";
import { validateLabel } from "../src/validate.js";
import { goldenText, metadataOnlyDoc } from "./fixture.js";

function loadGoldenState() {
  const result = validateLabel(goldenText());
  if (!result.label) throw new Error("golden label failed validation");
  return initialState(result.label);
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("renderModules", () => {
  it("renders the seven golden modules in order", () => {
    const host = renderModules(loadGoldenState());
    const ids = Array.from(host.querySelectorAll("section.module")).map((s) => s.id);
    expect(ids).toEqual([
      "module-metadata",
      "module-provenance",
      "module-variables",
      "module-statistics",
      "module-pair_plots",
      "module-probabilistic_model",
      "module-ground_truth_correlations",
    ]);
  });

  it("renders a single panel for a metadata-only label", () => {
    const result = validateLabel(JSON.stringify(metadataOnlyDoc()));
    if (!result.label) throw new Error("metadata-only label failed validation");
    const host = renderModules(initialState(result.label));
    const ids = Array.from(host.querySelectorAll("section.module")).map((s) => s.id);
    expect(ids).toEqual(["module-metadata"]);
  });

  it("is a pure function of (label, state)", () => {
    const state = loadGoldenState();
    const first = renderModules(state).innerHTML;
    const second = renderModules(state).innerHTML;
    expect(second).toBe(first);
  });

  it("shows metadata facts verbatim", () => {
    const state = loadGoldenState();
    const meta = state.label.modules.metadata as any;
    const host = renderModules(state);
    const facts = new Map(
      Array.from(host.querySelectorAll("#module-metadata .fact-row")).map((row) => [
        row.querySelector(".fact-term")!.textContent,
        row.querySelector(".fact-value")!.textContent,
      ]),
    );
    expect(facts.get("rows")).toBe(numberText(meta.rows));
    expect(facts.get("columns")).toBe(numberText(meta.columns));
    expect(facts.get("missing cells")).toBe(meta.missing_pct);
    expect(facts.get("missing fraction")).toBe(numberText(meta.missing_fraction));
    expect(facts.get("filename")).toBe(meta.filename);
  });

  it("lists every variable with its description", () => {
    const state = loadGoldenState();
    const variables = state.label.modules.variables as any;
    const host = renderModules(state);
    const rows = Array.from(host.querySelectorAll("#module-variables tr")).slice(1);
    expect(rows.length).toBe(variables.entries.length);
    rows.forEach((row, i) => {
      const cells = row.querySelectorAll("td");
      expect(cells[0].textContent).toBe(variables.entries[i].name);
      expect(cells[0].getAttribute("title")).toBe(variables.entries[i].name);
      expect(cells[1].textContent).toBe(variables.entries[i].description);
    });
  });

  it("shows every statistics cell verbatim from the label", () => {
    const state = loadGoldenState();
    const stats = state.label.modules.statistics as any;
    const host = renderModules(state);
    const tables = host.querySelectorAll("#module-statistics table");
    // Strata render in ordinal, nominal, continuous, discrete order.
    const [ordinal, nominal, continuous, discrete] = Array.from(tables);

    for (const [table, profiles] of [
      [ordinal, stats.ordinal],
      [nominal, stats.nominal],
    ] as const) {
      const rows = Array.from(table.querySelectorAll("tr")).slice(1);
      expect(rows.length).toBe(profiles.length);
      rows.forEach((row, i) => {
        const cells = Array.from(row.querySelectorAll("td")).map((c) => c.textContent);
        const profile = profiles[i];
        expect(cells[0]).toBe(profile.name);
        expect(cells[1]).toBe(profile.subtype);
        expect(cells[2]).toBe(numberText(profile.count));
        expect(cells[3]).toBe(
          numberText(profile.unique_entries) + (profile.unique_includes_missing ? "*" : ""),
        );
        expect(cells[4]).toBe(profile.most_frequent.display);
        expect(cells[5]).toBe(profile.least_frequent.display);
        expect(cells[6]).toBe(profile.missing_pct);
      });
    }

    for (const [table, profiles] of [
      [continuous, stats.continuous],
      [discrete, stats.discrete],
    ] as const) {
      const rows = Array.from(table.querySelectorAll("tr")).slice(1);
      expect(rows.length).toBe(profiles.length);
      rows.forEach((row, i) => {
        const cells = Array.from(row.querySelectorAll("td")).map((c) => c.textContent);
        const profile = profiles[i];
        expect(cells[0]).toBe(profile.name);
        expect(cells[1]).toBe(numberText(profile.count));
        expect(cells[2]).toBe(numberText(profile.min));
        expect(cells[3]).toBe(numberText(profile.median));
        expect(cells[4]).toBe(numberText(profile.max));
        expect(cells[5]).toBe(numberText(profile.mean));
        expect(cells[6]).toBe(
          profile.standard_deviation === null
            ? "undefined"
            : numberText(profile.standard_deviation),
        );
        expect(cells[7]).toBe(profile.zeros_pct);
        expect(cells[8]).toBe(profile.missing_pct);
      });
    }
  });

  it("renders identical charts for (a, b) and (b, a)", () => {
    const base = loadGoldenState();
    const plots = base.label.modules.pair_plots as any;
    const pair = plots.pairs[plots.pairs.length - 1];
    const forward = renderModules(selectPair(base, pair.column_a, pair.column_b));
    const backward = renderModules(selectPair(base, pair.column_b, pair.column_a));
    const chartOf = (host: HTMLElement) =>
      host.querySelector(".pair-chart-host")!.innerHTML;
    expect(chartOf(backward)).toBe(chartOf(forward));
  });

  it("disables the target toggle when only one entry exists", () => {
    const result = validateLabel(goldenText());
    if (!result.label) throw new Error("golden label failed validation");
    const model = result.label.modules.probabilistic_model as any;
    model.entries = model.entries.slice(0, 1);
    const host = renderModules(initialState(result.label));
    const select = host.querySelector(
      "#module-probabilistic_model select",
    ) as HTMLSelectElement;
    expect(select.disabled).toBe(true);
    expect(host.querySelector("#module-probabilistic_model .chart-whisker")).not.toBeNull();
  });
});

describe("renderErrorPanel", () => {
  it("lists each violation with path and rule", () => {
    const panel = renderErrorPanel([
      { path: "modules.metadata", rule: "metadata.required", message: "metadata module is required" },
      { path: "$", rule: "json.malformed", message: "bad" },
    ]);
    expect(panel.id).toBe("error-panel");
    const rows = Array.from(panel.querySelectorAll("tr")).slice(1);
    expect(rows.length).toBe(2);
    expect(rows[0].textContent).toContain("metadata.required");
    expect(rows[1].textContent).toContain("json.malformed");
  });
});
