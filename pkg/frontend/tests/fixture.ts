/** Test fixtures: the bundled golden label plus derived documents. */

import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";

const HERE = dirname(fileURLToPath(import.meta.url));

export const GOLDEN_PATH = resolve(HERE, "../../tests/fixtures/golden_label.json");

export function goldenText(): string {
  return readFileSync(GOLDEN_PATH, "utf-8");
}

export function goldenDoc(): any {
  return JSON.parse(goldenText());
}

/** A minimal valid label: envelope plus the metadata module only. */
export function metadataOnlyDoc(): any {
  const golden = goldenDoc();
  return {
    schema_version: golden.schema_version,
    generated_at: golden.generated_at,
    generator: golden.generator,
    modules: { metadata: golden.modules.metadata },
  };
}
