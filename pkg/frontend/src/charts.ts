/** Generic SVG chart rendering from ChartPayload.
 *
 * One renderer per payload kind, looked up in `renderers`; unknown kinds
 * fall back to a plain line chart, so new metric kinds need no UI change.
 * Null samples break the line into segments (gaps, never zeros).
 */

import { ChartPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export const WIDTH = 640;
export const HEIGHT = 240;
const MARGIN = { top: 12, right: 14, bottom: 26, left: 52 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const PALETTE = ["#2a6fdb", "#d95f02", "#1b9e77", "#7570b3", "#e7298a", "#66a61e"];

export interface RenderContext {
  /** Called when a clickable chart element (point, bar) is activated. */
  onPointClick?: (payload: ChartPayload, series: string, index: number) => void;
}

type Renderer = (p: ChartPayload, ctx: RenderContext) => SVGSVGElement;

function svgEl<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

class Scale {
  constructor(
    private d0: number,
    private d1: number,
    private r0: number,
    private r1: number,
  ) {}

  map(v: number): number {
    const span = this.d1 - this.d0;
    if (span === 0) return (this.r0 + this.r1) / 2;
    return this.r0 + ((v - this.d0) / span) * (this.r1 - this.r0);
  }
}

/** Numeric x positions: numbers pass through, category labels become their
 * index (engagement buckets, trial ids). */
function numericX(p: ChartPayload): number[] {
  return p.x.values.map((v, i) => (typeof v === "number" ? v : i));
}

function finiteExtent(values: Array<number | null>): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v === null || !Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) return [0, 1];
  return [lo, hi];
}

/** Path string for one series; null samples split it into segments. */
export function seriesPath(
  xs: number[],
  ys: Array<number | null>,
  sx: Scale,
  sy: Scale,
): string {
  const parts: string[] = [];
  let pen = false;
  for (let i = 0; i < xs.length; i++) {
    const y = ys[i];
    if (y === null || !Number.isFinite(y)) {
      pen = false;
      continue;
    }
    const cmd = pen ? "L" : "M";
    parts.push(`${cmd}${sx.map(xs[i]).toFixed(1)},${sy.map(y).toFixed(1)}`);
    pen = true;
  }
  return parts.join("");
}

function frame(): SVGSVGElement {
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: WIDTH,
    height: HEIGHT,
    role: "img",
  });
  svg.appendChild(
    svgEl("rect", {
      class: "plot-bg",
      x: MARGIN.left,
      y: MARGIN.top,
      width: PLOT_W,
      height: PLOT_H,
      fill: "#fafafa",
      stroke: "#ccc",
    }),
  );
  return svg;
}

function textLabel(x: number, y: number, text: string, anchor: string): SVGTextElement {
  const node = svgEl("text", {
    x,
    y,
    "text-anchor": anchor,
    "font-size": 10,
    fill: "#555",
  });
  node.textContent = text;
  return node;
}

function axisLabels(
  svg: SVGSVGElement,
  xDomain: [number, number],
  yDomain: [number, number],
  p: ChartPayload,
): void {
  const bottom = MARGIN.top + PLOT_H + 14;
  const categorical = p.x.values.some((v) => typeof v !== "number");
  if (categorical) {
    // label first and last bucket
    const n = p.x.values.length;
    if (n > 0) {
      svg.appendChild(textLabel(MARGIN.left, bottom, String(p.x.values[0]), "start"));
      if (n > 1) {
        svg.appendChild(
          textLabel(MARGIN.left + PLOT_W, bottom, String(p.x.values[n - 1]), "end"),
        );
      }
    }
  } else {
    svg.appendChild(textLabel(MARGIN.left, bottom, fmt(xDomain[0]), "start"));
    svg.appendChild(textLabel(MARGIN.left + PLOT_W, bottom, fmt(xDomain[1]), "end"));
  }
  svg.appendChild(
    textLabel(WIDTH / 2, bottom, p.x.unit ? `(${p.x.unit})` : "", "middle"),
  );
  svg.appendChild(textLabel(MARGIN.left - 4, MARGIN.top + 8, fmt(yDomain[1]), "end"));
  svg.appendChild(
    textLabel(MARGIN.left - 4, MARGIN.top + PLOT_H, fmt(yDomain[0]), "end"),
  );
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.01) return v.toExponential(1);
  return String(Math.round(v * 100) / 100);
}

interface LineOptions {
  markers?: boolean;
  clickable?: boolean;
  yPad?: number;
}

function lineChart(p: ChartPayload, ctx: RenderContext, opts: LineOptions = {}): SVGSVGElement {
  const svg = frame();
  const xs = numericX(p);
  const allY = Object.values(p.series).flat();
  let [yLo, yHi] = finiteExtent(allY);
  // annotation lines must stay inside the plot
  for (const key of ["upper_limit", "lower_limit"]) {
    const v = p.annotations[key];
    if (typeof v === "number") {
      yLo = Math.min(yLo, v);
      yHi = Math.max(yHi, v);
    }
  }
  const pad = opts.yPad ?? 0.05 * (yHi - yLo || 1);
  yLo -= pad;
  yHi += pad;
  const [xLo, xHi] = finiteExtent(xs);
  const sx = new Scale(xLo, xHi, MARGIN.left, MARGIN.left + PLOT_W);
  const sy = new Scale(yLo, yHi, MARGIN.top + PLOT_H, MARGIN.top);

  drawAnnotations(svg, p, sx, sy, xLo, xHi, yLo, yHi);

  let colorIdx = 0;
  for (const [name, values] of Object.entries(p.series)) {
    const color = PALETTE[colorIdx++ % PALETTE.length];
    const path = svgEl("path", {
      class: "series-line",
      "data-series": name,
      d: seriesPath(xs, values, sx, sy),
      fill: "none",
      stroke: color,
      "stroke-width": 1.5,
    });
    svg.appendChild(path);
    if (opts.markers) {
      for (let i = 0; i < xs.length; i++) {
        const y = values[i];
        if (y === null || !Number.isFinite(y)) continue;
        const dot = svgEl("circle", {
          class: opts.clickable ? "chart-point clickable" : "chart-point",
          "data-series": name,
          "data-index": i,
          cx: sx.map(xs[i]),
          cy: sy.map(y),
          r: opts.clickable ? 5 : 3,
          fill: color,
        });
        if (opts.clickable && ctx.onPointClick) {
          dot.addEventListener("click", () => ctx.onPointClick!(p, name, i));
        }
        svg.appendChild(dot);
      }
    }
  }
  axisLabels(svg, [xLo, xHi], [yLo + pad, yHi - pad], p);
  legend(svg, Object.keys(p.series));
  return svg;
}

function drawAnnotations(
  svg: SVGSVGElement,
  p: ChartPayload,
  sx: Scale,
  sy: Scale,
  xLo: number,
  xHi: number,
  yLo: number,
  yHi: number,
): void {
  const hline = (value: number, cls: string) =>
    svgEl("line", {
      class: cls,
      x1: sx.map(xLo),
      x2: sx.map(xHi),
      y1: sy.map(value),
      y2: sy.map(value),
      stroke: "#b22",
      "stroke-dasharray": "6 3",
    });
  const vline = (value: number, cls: string, stroke: string) =>
    svgEl("line", {
      class: cls,
      x1: sx.map(value),
      x2: sx.map(value),
      y1: sy.map(yLo),
      y2: sy.map(yHi),
      stroke,
    });

  const upper = p.annotations["upper_limit"];
  const lower = p.annotations["lower_limit"];
  if (typeof upper === "number") svg.appendChild(hline(upper, "limit-line limit-upper"));
  if (typeof lower === "number") svg.appendChild(hline(lower, "limit-line limit-lower"));

  const beats = p.annotations["beat_times"];
  if (Array.isArray(beats)) {
    for (const t of beats) {
      if (typeof t === "number" && t >= xLo && t <= xHi) {
        svg.appendChild(vline(t, "beat-line", "#ddd"));
      }
    }
  }
  const start = p.annotations["analysis_start"];
  if (typeof start === "number" && start >= xLo && start <= xHi) {
    svg.appendChild(vline(start, "analysis-start", "#2a2"));
  }
}

function legend(svg: SVGSVGElement, names: string[]): void {
  if (names.length < 2) return;
  let x = MARGIN.left + 6;
  for (let i = 0; i < names.length; i++) {
    const color = PALETTE[i % PALETTE.length];
    svg.appendChild(
      svgEl("rect", { x, y: MARGIN.top + 4, width: 10, height: 3, fill: color }),
    );
    const label = textLabel(x + 13, MARGIN.top + 9, names[i], "start");
    svg.appendChild(label);
    x += 13 + names[i].length * 6 + 14;
  }
}

function barChart(p: ChartPayload, ctx: RenderContext): SVGSVGElement {
  const svg = frame();
  const values = p.series[Object.keys(p.series)[0] ?? ""] ?? [];
  const n = Math.max(values.length, 1);
  const [, yHi] = finiteExtent(values);
  const sy = new Scale(0, yHi || 1, MARGIN.top + PLOT_H, MARGIN.top);
  const band = PLOT_W / n;
  for (let i = 0; i < values.length; i++) {
    const v = values[i];
    if (v === null || !Number.isFinite(v)) continue;
    const bar = svgEl("rect", {
      class: "bar",
      "data-index": i,
      "data-bucket": String(p.x.values[i]),
      x: MARGIN.left + i * band + band * 0.15,
      y: sy.map(v),
      width: band * 0.7,
      height: MARGIN.top + PLOT_H - sy.map(v),
      fill: PALETTE[0],
    });
    if (ctx.onPointClick) {
      const name = Object.keys(p.series)[0];
      bar.addEventListener("click", () => ctx.onPointClick!(p, name, i));
    }
    svg.appendChild(bar);
  }
  axisLabels(svg, [0, n - 1], [0, yHi], p);
  return svg;
}

export const renderers: Record<string, Renderer> = {
  displacement: (p, ctx) => lineChart(p, ctx),
  velocity: (p, ctx) => lineChart(p, ctx),
  autocorrelation: (p, ctx) => lineChart(p, ctx),
  spectrum: (p, ctx) => lineChart(p, ctx),
  session_overview: (p, ctx) => lineChart(p, ctx, { markers: true, clickable: true }),
  engagement: (p, ctx) => barChart(p, ctx),
};

const TITLES: Record<string, string> = {
  displacement: "Displacement",
  velocity: "Velocity",
  autocorrelation: "Auto-correlation",
  spectrum: "Amplitude spectrum",
  session_overview: "Session overview",
  engagement: "Engagement",
};

/** Wrap a payload into a titled card; empty payloads render a placeholder
 * with the server-provided reason instead of an empty plot. */
export function renderChart(p: ChartPayload, ctx: RenderContext = {}): HTMLElement {
  const card = document.createElement("figure");
  card.className = `chart chart-${p.kind}`;
  const title = document.createElement("figcaption");
  title.textContent = TITLES[p.kind] ?? p.kind;
  card.appendChild(title);
  if (p.missing_reason !== undefined || p.x.values.length === 0) {
    const placeholder = document.createElement("div");
    placeholder.className = "chart-missing";
    placeholder.textContent = p.missing_reason ?? "no data";
    card.appendChild(placeholder);
    return card;
  }
  const renderer = renderers[p.kind] ?? ((q: ChartPayload, c: RenderContext) => lineChart(q, c));
  card.appendChild(renderer(p, ctx));
  return card;
}
