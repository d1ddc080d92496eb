/** Minimal SVG string construction helpers. */

export type Attrs = Record<string, string | number>;

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function attrString(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? round2(v) : esc(v)}"`)
    .join("");
}

function round2(v: number): string {
  return String(Math.round(v * 100) / 100);
}

export function el(tag: string, attrs: Attrs, children = ""): string {
  const open = `<${tag}${attrString(attrs)}>`;
  return children === "" ? `${open}</${tag}>` : `${open}${children}</${tag}>`;
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  attrs: Attrs,
): string {
  return el("line", { x1, y1, x2, y2, ...attrs });
}

export function rect(
  x: number,
  y: number,
  width: number,
  height: number,
  attrs: Attrs,
): string {
  return el("rect", { x, y, width, height, ...attrs });
}

export function text(x: number, y: number, content: string, attrs: Attrs): string {
  return el("text", { x, y, ...attrs }, esc(content));
}

export function circle(cx: number, cy: number, r: number, attrs: Attrs): string {
  return el("circle", { cx, cy, r, ...attrs });
}

export function svgDocument(
  width: number,
  height: number,
  body: string,
): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}" ` +
    `font-family="sans-serif">${body}</svg>`
  );
}
