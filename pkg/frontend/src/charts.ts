/**
 * Hand-rolled SVG charts. Deterministic output: the same data always
 * yields the same markup, which keeps panels snapshot-testable.
 *
 * Every number drawn as text is a value from the label rendered with
 * numberText; charts never compute new statistics, only geometry.
 */

import { CatContEntry, Histogram, numberText } from "./label.js";

export const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function svgText(x: number, y: number, text: string, attrs: Record<string, string> = {}): SVGElement {
  const el = svgEl("text", { x: String(x), y: String(y), ...attrs });
  el.textContent = text;
  return el;
}

/** Single-hue fill: white at zero through dark gray at the maximum. */
function shade(value: number, max: number): string {
  const intensity = max > 0 ? value / max : 0;
  const channel = Math.round(255 - 195 * intensity);
  return `rgb(${channel}, ${channel}, ${channel})`;
}

function truncate(text: string, limit: number): string {
  return text.length > limit ? text.slice(0, limit - 1) + "…" : text;
}

interface Bar {
  label: string;
  value: number;
  /** On-screen value text; defaults to numberText(value). */
  text?: string;
}

/** Horizontal bar chart. Bars carry their exact value as trailing text. */
export function barChart(bars: Bar[], cssClass: string): SVGElement {
  const rowH = 22;
  const labelW = 150;
  const plotW = 300;
  const valueW = 170;
  const height = bars.length * rowH + 8;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${labelW + plotW + valueW} ${height}`,
    class: cssClass,
    role: "img",
  });
  const maxValue = Math.max(0, ...bars.map((b) => Math.abs(b.value)));
  bars.forEach((bar, i) => {
    const y = i * rowH + 4;
    const label = svgText(labelW - 6, y + 14, truncate(bar.label, 22), {
      "text-anchor": "end",
      class: "chart-label",
    });
    const title = svgEl("title");
    title.textContent = bar.label;
    label.appendChild(title);
    svg.appendChild(label);
    const width = maxValue > 0 ? (Math.abs(bar.value) / maxValue) * plotW : 0;
    svg.appendChild(
      svgEl("rect", {
        x: String(labelW),
        y: String(y),
        width: String(width),
        height: String(rowH - 6),
        fill: shade(Math.abs(bar.value), maxValue),
        stroke: "black",
        "stroke-width": "0.5",
      }),
    );
    svg.appendChild(
      svgText(labelW + width + 6, y + 14, bar.text ?? numberText(bar.value), {
        class: "chart-value",
      }),
    );
  });
  return svg;
}

/** Signed bars growing left (negative) or right (positive) from a center axis. */
export function signedBarChart(entries: { demographic: string; r: number | null }[]): SVGElement {
  const rowH = 22;
  const labelW = 170;
  const halfW = 160;
  const valueW = 110;
  const height = entries.length * rowH + 8;
  const width = labelW + 2 * halfW + valueW;
  const svg = svgEl("svg", { viewBox: `0 0 ${width} ${height}`, class: "chart-signed", role: "img" });
  const center = labelW + halfW;
  svg.appendChild(
    svgEl("line", {
      x1: String(center),
      y1: "0",
      x2: String(center),
      y2: String(height),
      stroke: "black",
      "stroke-width": "1",
    }),
  );
  entries.forEach((entry, i) => {
    const y = i * rowH + 4;
    const label = svgText(labelW - 6, y + 14, truncate(entry.demographic, 24), {
      "text-anchor": "end",
      class: "chart-label",
    });
    const title = svgEl("title");
    title.textContent = entry.demographic;
    label.appendChild(title);
    svg.appendChild(label);
    const r = entry.r ?? 0;
    const barW = Math.abs(r) * halfW;
    const x = r < 0 ? center - barW : center;
    svg.appendChild(
      svgEl("rect", {
        x: String(x),
        y: String(y),
        width: String(barW),
        height: String(rowH - 6),
        fill: shade(Math.abs(r), 1),
        stroke: "black",
        "stroke-width": "0.5",
      }),
    );
    svg.appendChild(
      svgText(center + halfW + 6, y + 14, entry.r === null ? "undefined" : numberText(entry.r), {
        class: "chart-value",
      }),
    );
  });
  return svg;
}

/** Grid heatmap; cell darkness scales with count, hover reveals the count. */
export function heatmap(
  xLabels: string[],
  yLabels: string[],
  counts: number[][],
  axis: { xCorners?: [string, string]; yCorners?: [string, string] } = {},
): SVGElement {
  const cols = xLabels.length;
  const rows = yLabels.length;
  const cell = Math.max(10, Math.min(24, Math.floor(360 / Math.max(cols, rows))));
  const marginLeft = 54;
  const marginBottom = 40;
  const plotW = cols * cell;
  const plotH = rows * cell;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${marginLeft + plotW + 8} ${plotH + marginBottom}`,
    class: "chart-heatmap",
    role: "img",
  });
  const maxCount = Math.max(0, ...counts.flat());
  // counts[i][j]: i indexes the x axis, j the y axis; draw y upward.
  for (let i = 0; i < cols; i++) {
    for (let j = 0; j < rows; j++) {
      const count = counts[i][j];
      const rect = svgEl("rect", {
        x: String(marginLeft + i * cell),
        y: String((rows - 1 - j) * cell),
        width: String(cell),
        height: String(cell),
        fill: shade(count, maxCount),
        stroke: "#777",
        "stroke-width": "0.4",
      });
      const title = svgEl("title");
      title.textContent = `${xLabels[i]} × ${yLabels[j]}: ${count}`;
      rect.appendChild(title);
      svg.appendChild(rect);
    }
  }
  const bottom = plotH + 14;
  if (axis.xCorners) {
    svg.appendChild(svgText(marginLeft, bottom, axis.xCorners[0], { class: "chart-axis" }));
    svg.appendChild(
      svgText(marginLeft + plotW, bottom, axis.xCorners[1], {
        "text-anchor": "end",
        class: "chart-axis",
      }),
    );
  }
  if (axis.yCorners) {
    svg.appendChild(
      svgText(marginLeft - 6, plotH - 2, axis.yCorners[0], {
        "text-anchor": "end",
        class: "chart-axis",
      }),
    );
    svg.appendChild(
      svgText(marginLeft - 6, 12, axis.yCorners[1], { "text-anchor": "end", class: "chart-axis" }),
    );
  }
  return svg;
}

/** Category histogram bars plus other/missing remainder notes. */
export function histogramChart(histogram: Histogram): HTMLElement {
  const wrap = document.createElement("figure");
  wrap.className = "histogram";
  const caption = document.createElement("figcaption");
  caption.textContent = histogram.column;
  caption.title = histogram.column;
  wrap.appendChild(caption);

  let bars: Bar[];
  if (histogram.categories) {
    bars = histogram.categories.map((category, i) => ({
      label: category,
      value: histogram.counts[i],
    }));
  } else {
    const edges = histogram.bin_edges ?? [];
    bars = histogram.counts.map((count, i) => ({
      label: `[${numberText(edges[i])}, ${numberText(edges[i + 1])}${i === histogram.counts.length - 1 ? "]" : ")"}`,
      value: count,
    }));
  }
  wrap.appendChild(barChart(bars, "chart-histogram"));

  const note = document.createElement("p");
  note.className = "histogram-note";
  note.textContent = `other: ${histogram.other_count}, missing: ${histogram.missing_count}`;
  wrap.appendChild(note);
  return wrap;
}

/** Per-category dot and whisker rows for posterior estimates. */
export function whiskerChart(
  support: string[],
  estimates: number[],
  intervals: [number, number][],
): SVGElement {
  const rowH = 24;
  const labelW = 110;
  const plotW = 320;
  const valueW = 230;
  const height = support.length * rowH + 8;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${labelW + plotW + valueW} ${height}`,
    class: "chart-whisker",
    role: "img",
  });
  const scale = (p: number) => labelW + p * plotW;
  support.forEach((category, i) => {
    const y = i * rowH + rowH / 2;
    const label = svgText(labelW - 6, y + 4, truncate(category, 14), {
      "text-anchor": "end",
      class: "chart-label",
    });
    const title = svgEl("title");
    title.textContent = category;
    label.appendChild(title);
    svg.appendChild(label);
    const [lo, hi] = intervals[i];
    svg.appendChild(
      svgEl("line", {
        x1: String(scale(lo)),
        y1: String(y),
        x2: String(scale(hi)),
        y2: String(y),
        stroke: "black",
        "stroke-width": "1.5",
      }),
    );
    for (const bound of [lo, hi]) {
      svg.appendChild(
        svgEl("line", {
          x1: String(scale(bound)),
          y1: String(y - 5),
          x2: String(scale(bound)),
          y2: String(y + 5),
          stroke: "black",
          "stroke-width": "1.5",
        }),
      );
    }
    svg.appendChild(
      svgEl("circle", { cx: String(scale(estimates[i])), cy: String(y), r: "4", fill: "black" }),
    );
    svg.appendChild(
      svgText(
        labelW + plotW + 8,
        y + 4,
        `${numberText(estimates[i])} [${numberText(lo)}, ${numberText(hi)}]`,
        { class: "chart-value" },
      ),
    );
  });
  return svg;
}

/** Bars for the selected cat_cont measure, exact values as bar text. */
export function catContBars(entries: CatContEntry[], measure: "count" | "sum" | "mean"): SVGElement {
  return barChart(
    entries.map((entry) => ({
      label: entry.category,
      value: entry[measure],
      text: numberText(entry[measure]),
    })),
    "chart-catcont",
  );
}
