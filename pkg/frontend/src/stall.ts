/** Stall-breaking trace figure: count of still-unsatisfied checks against
 * the decode timeline, with the main-decoding plateau and the sub-decoding
 * tail annotated as shaded regions. */

import { InputError } from "./csv.js";
import { linearScale } from "./scales.js";
import { document, el, fmt, line, text } from "./svg.js";

export interface TraceRound {
  round: number;
  df: number;
  removed_checks: number[];
  unsat_before: number;
  unsat_after: number;
  sub_iterations: number;
  main_iterations: number;
}

export interface DecodeTrace {
  algorithm: string;
  converged: boolean;
  main: { iterations: number; stalled: boolean; unsat_per_iteration: number[] };
  rounds?: TraceRound[];
}

export function parseTrace(jsonText: string, source = "trace"): DecodeTrace {
  let raw: unknown;
  try {
    raw = JSON.parse(jsonText);
  } catch (exc) {
    throw new InputError(`${source}: not valid JSON (${(exc as Error).message})`);
  }
  const trace = raw as DecodeTrace;
  if (!trace || typeof trace !== "object" || !trace.main ||
      !Array.isArray(trace.main.unsat_per_iteration)) {
    throw new InputError(`${source}: missing main.unsat_per_iteration`);
  }
  if (trace.main.unsat_per_iteration.length === 0) {
    throw new InputError(`${source}: empty trace (no decoding iterations recorded)`);
  }
  return trace;
}

export interface TracePoint {
  step: number;
  unsat: number;
  region: "main" | "sub";
}

export function buildTraceModel(trace: DecodeTrace): TracePoint[] {
  const points: TracePoint[] = trace.main.unsat_per_iteration.map((u, i) => ({
    step: i + 1,
    unsat: u,
    region: "main" as const,
  }));
  const offset = points.length;
  for (const round of trace.rounds ?? []) {
    points.push({ step: offset + round.round, unsat: round.unsat_after, region: "sub" });
  }
  return points;
}

export function renderTraceSvg(trace: DecodeTrace,
                               opts: { width?: number; height?: number } = {}): string {
  const points = buildTraceModel(trace);
  const width = opts.width ?? 640;
  const height = opts.height ?? 400;
  const margin = { left: 60, right: 20, top: 30, bottom: 46 };
  const maxStep = points[points.length - 1]!.step;
  const maxUnsat = Math.max(...points.map((p) => p.unsat), 1);
  const x = linearScale([1, Math.max(maxStep, 2)], [margin.left, width - margin.right], 8);
  const y = linearScale([0, maxUnsat], [height - margin.bottom, margin.top], 5);
  const body: string[] = [];

  const mainEnd = trace.main.unsat_per_iteration.length;
  const regions: Array<[string, number, number, string]> = [
    ["region-main", 1, mainEnd, "#eef3fb"],
  ];
  if (points.some((p) => p.region === "sub")) {
    regions.push(["region-sub", mainEnd, maxStep, "#fdeeee"]);
  }
  for (const [cls, lo, hi, fill] of regions) {
    body.push(el("rect", {
      x: x(lo), y: margin.top, width: Math.max(x(hi) - x(lo), 1),
      height: height - margin.top - margin.bottom, fill, class: cls,
    }));
  }
  body.push(text((x(1) + x(mainEnd)) / 2, margin.top + 14, "main decoding region",
                 { "text-anchor": "middle", class: "region-label" }));
  if (points.some((p) => p.region === "sub")) {
    body.push(text((x(mainEnd) + x(maxStep)) / 2, margin.top + 14,
                   "sub decoding region",
                   { "text-anchor": "middle", class: "region-label" }));
  }

  body.push(el("rect", {
    x: margin.left, y: margin.top,
    width: width - margin.left - margin.right,
    height: height - margin.top - margin.bottom,
    fill: "none", stroke: "#444", class: "frame",
  }));
  for (const t of y.ticks) {
    body.push(text(margin.left - 8, y(t) + 4, String(t),
                   { "text-anchor": "end", class: "tick-y" }));
    body.push(line(margin.left - 4, y(t), margin.left, y(t), { stroke: "#444" }));
  }
  for (const t of x.ticks.filter((v) => Number.isInteger(v) && v >= 1)) {
    body.push(text(x(t), height - margin.bottom + 16, String(t),
                   { "text-anchor": "middle", class: "tick-x" }));
  }
  body.push(text(width / 2, height - 10, "decoding step (main iterations, then sub rounds)",
                 { "text-anchor": "middle", class: "axis-label-x" }));
  body.push(el("text", {
    x: 16, y: height / 2, "text-anchor": "middle", class: "axis-label-y",
    transform: `rotate(-90 16 ${fmt(height / 2)})`,
  }, ["unsatisfied checks"]));

  const path = points.map((p) => `${fmt(x(p.step))},${fmt(y(p.unsat))}`).join(" ");
  body.push(el("polyline", {
    points: path, fill: "none", stroke: "#1f77b4", "stroke-width": 1.5,
    class: "trace-line",
  }));
  for (const p of points) {
    body.push(el("circle", {
      cx: x(p.step), cy: y(p.unsat), r: 2.5,
      fill: p.region === "main" ? "#1f77b4" : "#d62728",
      class: `trace-point trace-point-${p.region}`,
    }));
  }
  return document(width, height, body);
}
