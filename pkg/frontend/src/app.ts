/**
 * Application shell: loads a label from a file picker or a ?label=<url>
 * query parameter, validates it, and renders either the module panels
 * or the error panel. The viewer is read-only and keeps no state other
 * than the current ViewState; every interaction re-renders from it.
 */

import { renderErrorPanel, renderModules } from "./panels.js";
import {
  ViewState,
  initialState,
  pairPlotsOf,
  selectMeasure,
  selectPair,
  selectReport,
  selectSign,
  selectTargetValue,
} from "./state.js";
import { validateLabel } from "./validate.js";

let state: ViewState | null = null;

function host(): HTMLElement {
  const node = document.getElementById("viewer");
  if (!node) throw new Error("missing #viewer host element");
  return node;
}

function render(): void {
  if (!state) return;
  const container = host();
  container.replaceChildren(renderModules(state));
}

export function loadLabelText(text: string): void {
  const container = host();
  const result = validateLabel(text);
  if (!result.ok || !result.label) {
    state = null;
    container.replaceChildren(renderErrorPanel(result.violations));
    return;
  }
  state = initialState(result.label);
  render();
}

/** First partner of a column, used when a pair selection goes stale. */
function firstPartner(a: string): string | null {
  if (!state) return null;
  const plots = pairPlotsOf(state.label);
  if (!plots) return null;
  for (const cell of plots.pairs) {
    if (cell.column_a === a) return cell.column_b;
    if (cell.column_b === a) return cell.column_a;
  }
  return null;
}

function onAction(target: HTMLElement): void {
  if (!state) return;
  const action = target.dataset.action;
  if (action === "pair-a" && target instanceof HTMLSelectElement) {
    const a = target.value;
    const current = state.pair;
    try {
      state = selectPair(state, a, current ? current.b : "");
    } catch {
      const partner = firstPartner(a);
      if (partner !== null) state = selectPair(state, a, partner);
    }
  } else if (action === "pair-b" && target instanceof HTMLSelectElement) {
    if (state.pair) state = selectPair(state, state.pair.a, target.value);
  } else if (action === "measure" && target instanceof HTMLInputElement) {
    state = selectMeasure(state, target.value as "count" | "sum" | "mean");
  } else if (action === "target-value" && target instanceof HTMLSelectElement) {
    state = selectTargetValue(state, target.value);
  } else if (action === "sign" && target instanceof HTMLInputElement) {
    state = selectSign(state, target.value as "positive" | "negative");
  } else if (action === "report" && target instanceof HTMLSelectElement) {
    const [valueColumn, aggregate] = target.value.split("|");
    state = selectReport(state, valueColumn, aggregate);
  } else {
    return;
  }
  render();
}

async function loadFromUrl(url: string): Promise<void> {
  const container = host();
  try {
    const response = await fetch(url);
    if (!response.ok) {
      throw new Error(`fetching the label failed: HTTP ${response.status}`);
    }
    loadLabelText(await response.text());
  } catch (exc) {
    container.replaceChildren(
      renderErrorPanel([
        {
          path: "$",
          rule: "label.unreachable",
          message: exc instanceof Error ? exc.message : String(exc),
        },
      ]),
    );
  }
}

function onFileChosen(input: HTMLInputElement): void {
  const file = input.files && input.files[0];
  if (!file) return;
  const reader = new FileReader();
  reader.onload = () => loadLabelText(String(reader.result));
  reader.readAsText(file);
}

export function boot(): void {
  document.addEventListener("change", (event) => {
    const target = event.target;
    if (target instanceof HTMLElement && target.dataset.action) {
      onAction(target);
    } else if (target instanceof HTMLInputElement && target.id === "label-file") {
      onFileChosen(target);
    }
  });

  const params = new URLSearchParams(window.location.search);
  const url = params.get("label");
  if (url) void loadFromUrl(url);
}

if (typeof window !== "undefined" && document.getElementById("viewer")) {
  boot();
}
