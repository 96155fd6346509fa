/** Tiny deterministic SVG string builder. */

export type Attrs = Record<string, string | number>;

function attrString(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? fmt(v) : escapeAttr(v)}"`)
    .join("");
}

export function fmt(v: number): string {
  return Number(v.toFixed(3)).toString();
}

function escapeAttr(v: string): string {
  return v.replace(/&/g, "&amp;").replace(/"/g, "&quot;").replace(/</g, "&lt;");
}

export function escapeText(v: string): string {
  return v.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function el(tag: string, attrs: Attrs, children: string[] = []): string {
  const open = `<${tag}${attrString(attrs)}>`;
  if (children.length === 0 && tag !== "text" && tag !== "g" && tag !== "svg") {
    return `<${tag}${attrString(attrs)}/>`;
  }
  return `${open}${children.join("")}</${tag}>`;
}

export function text(x: number, y: number, content: string, attrs: Attrs = {}): string {
  return el("text", { x, y, ...attrs }, [escapeText(content)]);
}

export function line(x1: number, y1: number, x2: number, y2: number,
                     attrs: Attrs = {}): string {
  return el("line", { x1, y1, x2, y2, ...attrs });
}

export function document(width: number, height: number, body: string[]): string {
  return el("svg", {
    xmlns: "http://www.w3.org/2000/svg",
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    "font-family": "sans-serif",
    "font-size": "11",
  }, body) + "\n";
}

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
  "#e377c2", "#17becf",
];
