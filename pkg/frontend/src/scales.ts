/** Linear and log-10 scales with tick generation. */

export interface Scale {
  (value: number): number;
  ticks: number[];
}

export function linearScale(domain: [number, number], range: [number, number],
                            tickCount = 5): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.ticks = linearTicks(d0, d1, tickCount);
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error("log scale requires positive domain");
  }
  const [r0, r1] = range;
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  const fn = ((v: number) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0)) as Scale;
  fn.ticks = decadeTicks(d0, d1);
  return fn;
}

export function linearTicks(lo: number, hi: number, count: number): number[] {
  if (hi <= lo) {
    return [lo];
  }
  const rawStep = (hi - lo) / Math.max(1, count);
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => (hi - lo) / s <= count)!;
  const out: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12; t += step) {
    out.push(Number(t.toPrecision(12)));
  }
  return out;
}

/** Powers of ten covering [lo, hi]. */
export function decadeTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    const t = 10 ** e;
    if (t >= lo / 1.0001 && t <= hi * 1.0001) {
      out.push(t);
    }
  }
  return out.length ? out : [lo];
}

export function formatTick(value: number): string {
  if (value >= 0.01 && value < 10000) {
    return String(Number(value.toPrecision(6)));
  }
  const e = Math.round(Math.log10(value));
  if (Math.abs(value - 10 ** e) / value < 1e-9) {
    return `1e${e}`;
  }
  return value.toExponential(1);
}
