/** Logical-error-rate figure: one curve per (code, decoder) with +-1 stderr
 * error bars on a log-scaled rate axis. Zero-rate points are clamped to the
 * resolution floor of the run (half a failure) so they stay visible. */

import { groupSeries, ResultRow } from "./csv.js";
import { formatTick, linearScale, logScale } from "./scales.js";
import { document, el, fmt, line, PALETTE, text } from "./svg.js";

export interface LerPoint {
  p: number;
  ler: number;
  stderr: number;
  clamped: boolean;
  displayLer: number;
  barLo: number;
  barHi: number;
}

export interface LerSeries {
  label: string;
  points: LerPoint[];
}

export interface LerModel {
  series: LerSeries[];
  pDomain: [number, number];
  lerDomain: [number, number];
  floor: number;
}

export function buildLerModel(rows: ResultRow[]): LerModel {
  if (rows.length === 0) {
    throw new Error("no data rows to plot");
  }
  const floor = Math.min(...rows.map((r) => 0.5 / Math.max(r.shots, 1)));
  const series: LerSeries[] = [];
  for (const [label, group] of groupSeries(rows)) {
    const points = group.map((r) => {
      const displayLer = Math.max(r.ler, floor);
      return {
        p: r.p,
        ler: r.ler,
        stderr: r.stderr,
        clamped: r.ler < floor,
        displayLer,
        barLo: Math.max(displayLer - r.stderr, floor),
        barHi: Math.max(displayLer + r.stderr, floor),
      };
    });
    series.push({ label, points });
  }
  const ps = rows.map((r) => r.p);
  const highs = series.flatMap((s) => s.points.map((pt) => pt.barHi));
  return {
    series,
    pDomain: [Math.min(...ps), Math.max(...ps)],
    lerDomain: [floor, Math.max(...highs, floor * 10)],
    floor,
  };
}

export interface RenderOptions {
  width?: number;
  height?: number;
  title?: string;
}

export function renderLerSvg(model: LerModel, opts: RenderOptions = {}): string {
  const width = opts.width ?? 640;
  const height = opts.height ?? 440;
  const margin = { left: 70, right: 20, top: 34, bottom: 48 };
  const x = linearScale(model.pDomain, [margin.left, width - margin.right], 6);
  const y = logScale(model.lerDomain, [height - margin.bottom, margin.top]);
  const body: string[] = [];

  body.push(el("rect", {
    x: margin.left, y: margin.top,
    width: width - margin.left - margin.right,
    height: height - margin.top - margin.bottom,
    fill: "none", stroke: "#444", class: "frame",
  }));
  for (const t of y.ticks) {
    body.push(line(margin.left - 4, y(t), width - margin.right, y(t),
                   { stroke: "#ddd", class: "grid-y" }));
    body.push(text(margin.left - 8, y(t) + 4, formatTick(t),
                   { "text-anchor": "end", class: "tick-y" }));
  }
  for (const t of x.ticks) {
    body.push(line(x(t), height - margin.bottom, x(t), height - margin.bottom + 4,
                   { stroke: "#444", class: "tick-x-mark" }));
    body.push(text(x(t), height - margin.bottom + 16, formatTick(t),
                   { "text-anchor": "middle", class: "tick-x" }));
  }
  body.push(text(width / 2, height - 10, "physical error rate p",
                 { "text-anchor": "middle", class: "axis-label-x" }));
  body.push(el("text", {
    x: 18, y: height / 2, class: "axis-label-y", "text-anchor": "middle",
    transform: `rotate(-90 18 ${fmt(height / 2)})`,
  }, ["logical error rate"]));
  if (opts.title) {
    body.push(text(width / 2, 18, opts.title,
                   { "text-anchor": "middle", class: "title", "font-size": "13" }));
  }

  model.series.forEach((series, idx) => {
    const color = PALETTE[idx % PALETTE.length]!;
    const parts: string[] = [];
    const lineId = `series-${idx}`;
    const path = series.points
      .map((pt) => `${fmt(x(pt.p))},${fmt(y(pt.displayLer))}`)
      .join(" ");
    parts.push(el("polyline", {
      points: path, fill: "none", stroke: color, "stroke-width": 1.5,
      class: "series-line",
    }));
    for (const pt of series.points) {
      if (pt.stderr > 0) {
        parts.push(line(x(pt.p), y(pt.barLo), x(pt.p), y(pt.barHi),
                        { stroke: color, class: "error-bar" }));
        for (const cap of [pt.barLo, pt.barHi]) {
          parts.push(line(x(pt.p) - 3, y(cap), x(pt.p) + 3, y(cap),
                          { stroke: color, class: "error-bar-cap" }));
        }
      }
      parts.push(el("circle", {
        cx: x(pt.p), cy: y(pt.displayLer), r: 3, fill: color,
        class: pt.clamped ? "point point-clamped" : "point",
      }));
    }
    body.push(el("g", { class: "series", id: lineId, "data-label": series.label },
                 parts));
    const ly = margin.top + 16 + idx * 16;
    body.push(line(margin.left + 10, ly - 4, margin.left + 30, ly - 4,
                   { stroke: color, "stroke-width": 2, class: "legend-mark" }));
    body.push(text(margin.left + 36, ly, series.label, { class: "legend-label" }));
  });

  return document(width, height, body);
}
