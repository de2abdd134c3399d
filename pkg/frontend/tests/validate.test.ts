/**
 * Validator behavior, including rule-for-rule parity with the label
 * maker's own validate command on the same corrupted documents.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { validateLabel } from "../src/validate.js";
import { goldenDoc, goldenText, metadataOnlyDoc } from "./fixture.js";

function rulesOf(text: string): string[] {
  return validateLabel(text).violations.map((v) => v.rule).sort();
}

describe("validateLabel", () => {
  it("accepts the golden label", () => {
    const result = validateLabel(goldenText());
    expect(result.ok).toBe(true);
    expect(result.violations).toEqual([]);
    expect(result.label).not.toBeNull();
  });

  it("accepts a metadata-only label", () => {
    const result = validateLabel(JSON.stringify(metadataOnlyDoc()));
    expect(result.ok).toBe(true);
  });

  it("flags malformed JSON once", () => {
    expect(rulesOf("{oops")).toEqual(["json.malformed"]);
  });

  it("flags a non-object top level", () => {
    expect(rulesOf("[1, 2]")).toEqual(["envelope.shape"]);
  });

  it("flags a missing schema_version", () => {
    const doc = metadataOnlyDoc();
    delete doc.schema_version;
    expect(rulesOf(JSON.stringify(doc))).toEqual(["schema_version.missing"]);
  });

  it("flags an unsupported major version", () => {
    const doc = metadataOnlyDoc();
    doc.schema_version = "2.0.0";
    expect(rulesOf(JSON.stringify(doc))).toEqual(["schema_version.unsupported"]);
  });

  it("flags unknown modules by name", () => {
    const doc = metadataOnlyDoc();
    doc.modules.bogus = {};
    const result = validateLabel(JSON.stringify(doc));
    expect(result.violations).toEqual([
      { path: "modules.bogus", rule: "module.unknown", message: "unknown module 'bogus'" },
    ]);
  });

  it("requires the metadata module", () => {
    const doc = goldenDoc();
    delete doc.modules.metadata;
    expect(rulesOf(JSON.stringify(doc))).toEqual(["metadata.required"]);
  });

  it("rejects a two-decimal dataset percent", () => {
    const doc = goldenDoc();
    doc.modules.metadata.missing_pct = "1.04%";
    const result = validateLabel(JSON.stringify(doc));
    expect(result.violations.map((v) => [v.path, v.rule])).toEqual([
      ["modules.metadata.missing_pct", "percent.format"],
    ]);
  });

  it("rejects a one-decimal column percent", () => {
    const doc = goldenDoc();
    doc.modules.statistics.continuous[0].missing_pct = "2.7%";
    const result = validateLabel(JSON.stringify(doc));
    expect(result.violations.map((v) => [v.path, v.rule])).toEqual([
      ["modules.statistics.continuous[0].missing_pct", "percent.format"],
    ]);
  });

  it("rejects point estimates that do not sum to one", () => {
    const doc = goldenDoc();
    doc.modules.probabilistic_model.entries[0].point_estimates[0] += 0.01;
    expect(rulesOf(JSON.stringify(doc))).toEqual(["probability.sum"]);
  });

  it("rejects a correlation outside [-1, 1]", () => {
    const doc = goldenDoc();
    const pair = doc.modules.pair_plots.pairs.find((p: any) => p.kind === "cont_cont");
    pair.payload.pearson_r = 1.5;
    expect(rulesOf(JSON.stringify(doc))).toEqual(["pearson.range"]);
  });

  it("rejects histogram counts that disagree with the row count", () => {
    const doc = goldenDoc();
    doc.modules.pair_plots.histograms[0].counts[0] += 1;
    expect(rulesOf(JSON.stringify(doc))).toEqual(["histogram.sum"]);
  });

  it("flags ground truth correlations out of range", () => {
    const doc = goldenDoc();
    doc.modules.ground_truth_correlations.reports[0].entries[0].r = -2;
    expect(rulesOf(JSON.stringify(doc))).toEqual(["pearson.range"]);
  });
});

describe("parity with the maker's validate command", () => {
  function makerRules(text: string): string[] {
    const dir = mkdtempSync(join(tmpdir(), "labelvw-"));
    const file = join(dir, "label.json");
    writeFileSync(file, text);
    const run = spawnSync("python3", ["-m", "datalabel", "validate", file], {
      encoding: "utf-8",
    });
    if (run.error) throw run.error;
    return run.stdout
      .split("\n")
      .filter((line) => line.trim())
      .map((line) => line.split("\t")[1])
      .sort();
  }

  const corruptions: [string, (doc: any) => string][] = [
    ["intact golden", (doc) => JSON.stringify(doc)],
    ["metadata removed", (doc) => {
      delete doc.modules.metadata;
      return JSON.stringify(doc);
    }],
    ["dataset percent two decimals", (doc) => {
      doc.modules.metadata.missing_pct = "1.04%";
      return JSON.stringify(doc);
    }],
    ["column percent one decimal", (doc) => {
      doc.modules.statistics.nominal[0].missing_pct = "3.3%";
      return JSON.stringify(doc);
    }],
    ["probability sum off", (doc) => {
      doc.modules.probabilistic_model.entries[0].point_estimates[0] += 0.01;
      return JSON.stringify(doc);
    }],
    ["pearson out of range", (doc) => {
      const pair = doc.modules.pair_plots.pairs.find((p: any) => p.kind === "cont_cont");
      pair.payload.pearson_r = 1.5;
      return JSON.stringify(doc);
    }],
    ["histogram sum off", (doc) => {
      doc.modules.pair_plots.histograms[2].counts[0] += 5;
      return JSON.stringify(doc);
    }],
    ["unknown module", (doc) => {
      doc.modules.extras = {};
      return JSON.stringify(doc);
    }],
    ["unsupported version", (doc) => {
      doc.schema_version = "9.0.0";
      return JSON.stringify(doc);
    }],
    ["malformed json", () => "{oops"],
  ];

  it.each(corruptions)("agrees on: %s", (_name, corrupt) => {
    const text = corrupt(goldenDoc());
    expect(rulesOf(text)).toEqual(makerRules(text));
  });
});
