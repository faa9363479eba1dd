/** Tiny SVG assembly helpers: elements, scales, axis ticks. */

export type Attrs = Record<string, string | number>;

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;")
    .replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

/** Escape for element text content (quotes stay literal). */
export function escText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function unescText(text: string): string {
  return text.replace(/&lt;/g, "<").replace(/&gt;/g, ">").replace(/&amp;/g, "&");
}

/** Coordinate formatting: short, stable strings. */
export function px(v: number): string {
  const r = Math.round(v * 100) / 100;
  return Object.is(r, -0) ? "0" : String(r);
}

export function el(name: string, attrs: Attrs, children: string[] = []): string {
  const parts = [name];
  for (const [k, v] of Object.entries(attrs)) {
    parts.push(`${k}="${typeof v === "number" ? px(v) : esc(v)}"`);
  }
  if (children.length === 0) return `<${parts.join(" ")}/>`;
  return `<${parts.join(" ")}>${children.join("")}</${name}>`;
}

export function textEl(attrs: Attrs, content: string): string {
  const parts = ["text"];
  for (const [k, v] of Object.entries(attrs)) {
    parts.push(`${k}="${typeof v === "number" ? px(v) : esc(v)}"`);
  }
  return `<${parts.join(" ")}>${esc(content)}</text>`;
}

export interface Scale {
  map(v: number): number;
  domain: [number, number];
}

export function linearScale(d0: number, d1: number,
                            r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return {
    domain: [d0, d1],
    map: (v) => r0 + ((v - d0) / span) * (r1 - r0),
  };
}

/** Log scale; domain endpoints must be positive. */
export function logScale(d0: number, d1: number,
                         r0: number, r1: number): Scale {
  if (!(d0 > 0) || !(d1 > 0)) {
    throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  return {
    domain: [d0, d1],
    map: (v) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0),
  };
}

/** Powers of ten inside [lo, hi]. */
export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9);
       e <= Math.floor(Math.log10(hi) + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks;
}

/** Evenly spaced ticks for a linear axis, at most `count` of them. */
export function linearTicks(lo: number, hi: number, count = 6): number[] {
  const raw = (hi - lo) / Math.max(1, count);
  if (!(raw > 0)) return [lo];
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= raw) { step = m * mag; break; }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const e = Math.log10(Math.abs(v));
  if (Math.abs(e - Math.round(e)) < 1e-9 && (e >= 4 || e <= -4)) {
    return `1e${Math.round(e)}`;
  }
  if (Math.abs(v) >= 1e4 || Math.abs(v) < 1e-3) return v.toExponential(0);
  return String(Math.round(v * 1e6) / 1e6);
}

export function polylinePoints(xs: number[], ys: number[]): string {
  const pts: string[] = [];
  for (let i = 0; i < xs.length; i++) pts.push(`${px(xs[i])},${px(ys[i])}`);
  return pts.join(" ");
}

export function svgRoot(width: number, height: number, attrs: Attrs,
                        children: string[]): string {
  const head = el("svg", {
    xmlns: "http://www.w3.org/2000/svg",
    width,
    height,
    viewBox: `0 0 ${width} ${height}`,
    "font-family": "sans-serif",
    ...attrs,
  }, children);
  return `<?xml version="1.0" encoding="UTF-8"?>\n${head}\n`;
}
