/**
 * SVG figure renderers.
 *
 * Each builder consumes validated datasets and returns the complete SVG
 * text; renderFigure() writes that text to the job's output path and
 * nothing else.  All validation (sidecar kind, required columns, empty
 * inputs) happens before the output file is touched, so a failed render
 * leaves no partial image behind.
 */

import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import {
  Dataset, MatrixDataset, column, readDataset, readMatrix, requireColumns,
} from "./contract.js";
import { FigureJob, FigureKind, SidecarMeta, validateJob } from "./job.js";
import { diverging, sequential } from "./colormap.js";
import {
  Attrs, Scale, decadeTicks, el, escText, linearScale, linearTicks, logScale,
  polylinePoints, svgRoot, textEl, tickLabel,
} from "./svg.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

interface Box { x: number; y: number; w: number; h: number; }

function assertNonEmpty(ds: Dataset): void {
  if (ds.length === 0) {
    throw new Error(`dataset ${basename(ds.path)} is empty; nothing to render`);
  }
}

function minMax(values: number[]): [number, number] {
  let lo = Infinity, hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) throw new Error("series has no finite values");
  return [lo, hi];
}

/** Positive [lo, hi] for log axes; zeros in the data clamp to lo. */
function logDomain(series: number[][], pad = 3): [number, number] {
  let lo = Infinity, hi = 0;
  for (const values of series) {
    for (const v of values) {
      if (!Number.isFinite(v) || v <= 0) continue;
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!(hi > 0)) return [1e-18, 1e-15];
  if (lo === hi) { lo /= 10; hi *= 10; }
  return [lo / pad, hi * pad];
}

function clampLog(v: number, lo: number): number {
  return Number.isFinite(v) && v > lo ? v : lo;
}

function frame(box: Box): string {
  return el("rect", { x: box.x, y: box.y, width: box.w, height: box.h,
                      fill: "none", stroke: "#333" });
}

function panelTitle(box: Box, title: string): string {
  return textEl({ x: box.x + box.w / 2, y: box.y - 10, "text-anchor": "middle",
                  "font-size": 13, fill: "#111" }, title);
}

function xAxis(box: Box, scale: Scale, ticks: number[], label: string): string[] {
  const out: string[] = [];
  const y = box.y + box.h;
  for (const t of ticks) {
    const x = scale.map(t);
    if (x < box.x - 0.5 || x > box.x + box.w + 0.5) continue;
    out.push(el("line", { x1: x, y1: y, x2: x, y2: y + 4, stroke: "#333" }));
    out.push(textEl({ x, y: y + 16, "text-anchor": "middle",
                      "font-size": 10, fill: "#333" }, tickLabel(t)));
  }
  out.push(textEl({ x: box.x + box.w / 2, y: y + 32, "text-anchor": "middle",
                    "font-size": 11, fill: "#111" }, label));
  return out;
}

function yAxis(box: Box, scale: Scale, ticks: number[], label: string): string[] {
  const out: string[] = [];
  for (const t of ticks) {
    const y = scale.map(t);
    if (y < box.y - 0.5 || y > box.y + box.h + 0.5) continue;
    out.push(el("line", { x1: box.x - 4, y1: y, x2: box.x, y2: y,
                          stroke: "#333" }));
    out.push(textEl({ x: box.x - 7, y: y + 3, "text-anchor": "end",
                      "font-size": 10, fill: "#333" }, tickLabel(t)));
  }
  out.push(el("g", { transform:
    `translate(${Math.round(box.x - 46)},${Math.round(box.y + box.h / 2)}) ` +
    "rotate(-90)" },
    [textEl({ x: 0, y: 0, "text-anchor": "middle", "font-size": 11,
              fill: "#111" }, label)]));
  return out;
}

function seriesLine(xs: number[], ys: number[], sx: Scale, sy: Scale,
                    attrs: Attrs): string {
  const px = xs.map((v) => sx.map(v));
  const py = ys.map((v) => sy.map(v));
  return el("polyline", { points: polylinePoints(px, py), fill: "none",
                          ...attrs });
}

function seriesDots(xs: number[], ys: number[], sx: Scale, sy: Scale,
                    fill: string): string[] {
  const out: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    out.push(el("circle", { cx: sx.map(xs[i]), cy: sy.map(ys[i]), r: 3, fill }));
  }
  return out;
}

function legend(box: Box, entries: Array<[string, Attrs]>): string[] {
  const out: string[] = [];
  let y = box.y + 14;
  for (const [name, attrs] of entries) {
    const x = box.x + box.w - 150;
    out.push(el("line", { x1: x, y1: y - 4, x2: x + 22, y2: y - 4, ...attrs }));
    out.push(textEl({ x: x + 28, y, "font-size": 10, fill: "#111" }, name));
    y += 14;
  }
  return out;
}

/** Sidecar parameters embedded verbatim so figures stay traceable. */
function metadataBlock(job: FigureJob, metas: SidecarMeta[]): string {
  const payload = {
    kind: job.kind,
    sources: job.datasets.map((d) => basename(d)),
    parameters: metas[0].parameters ?? {},
  };
  return `<metadata id="figure-meta">${escText(JSON.stringify(payload))}</metadata>`;
}

// ---------------------------------------------------------------------------
// scaling: spectral norm and certified tail bound against K, log-log

function buildScaling(job: FigureJob, metas: SidecarMeta[]): string {
  const ds = readDataset(job.datasets[0]);
  requireColumns(ds, ["K", "spectral_norm", "tail_bound"]);
  assertNonEmpty(ds);
  const K = column(ds, "K");
  const norm = column(ds, "spectral_norm");
  const bound = column(ds, "tail_bound");
  const alpha = Number(ds.params["alpha"] ?? NaN);
  if (!Number.isFinite(alpha)) {
    throw new Error(`dataset ${basename(ds.path)} does not record alpha`);
  }
  const slope = -Math.min(1, alpha);

  const box: Box = { x: 66, y: 46, w: 420, h: 300 };
  const [kLo, kHi] = minMax(K);
  const sx = logScale(kLo / 1.5, kHi * 1.5, box.x, box.x + box.w);
  const [yLo, yHi] = logDomain([norm, bound]);
  const sy = logScale(yLo, yHi, box.y + box.h, box.y);

  const g: string[] = [frame(box)];
  g.push(...xAxis(box, sx, decadeTicks(kLo / 1.5, kHi * 1.5), "tail start K"));
  g.push(...yAxis(box, sy, decadeTicks(yLo, yHi), "residual spectral norm"));

  // Dotted reference line with the predicted decay exponent -min(1, alpha),
  // anchored above the certified bound at the first K.
  const y0 = bound[0] * 2.5;
  const yEnd = y0 * Math.pow(K[K.length - 1] / K[0], slope);
  g.push(el("line", {
    class: "guide-line",
    "data-slope": String(slope),
    x1: sx.map(K[0]), y1: sy.map(clampLog(y0, yLo)),
    x2: sx.map(K[K.length - 1]), y2: sy.map(clampLog(yEnd, yLo)),
    stroke: "#555", "stroke-dasharray": "2 5", "stroke-width": 1.5,
  }));
  g.push(textEl({ x: sx.map(K[0]) + 8, y: sy.map(clampLog(y0, yLo)) - 6,
                  "font-size": 10, fill: "#555", class: "guide-label" },
                `slope ${slope}`));

  g.push(seriesLine(K, bound.map((v) => clampLog(v, yLo)), sx, sy,
    { class: "series tail-bound", stroke: COLORS[0], "stroke-width": 1.5 }));
  g.push(seriesLine(K, norm.map((v) => clampLog(v, yLo)), sx, sy,
    { class: "series spectral-norm", stroke: COLORS[1], "stroke-width": 1.5 }));
  g.push(...seriesDots(K, norm.map((v) => clampLog(v, yLo)), sx, sy, COLORS[1]));

  const state = ds.cells.get("state_error");
  if (state && state.some((v) => Number.isFinite(v) && v > 0)) {
    g.push(seriesLine(K, state.map((v) => clampLog(v, yLo)), sx, sy,
      { class: "series state-error", stroke: COLORS[2],
        "stroke-width": 1.2, "stroke-dasharray": "6 3" }));
  }

  g.push(...legend(box, [
    ["tail bound", { stroke: COLORS[0], "stroke-width": 1.5 }],
    ["spectral norm", { stroke: COLORS[1], "stroke-width": 1.5 }],
    [`guide slope ${slope}`, { stroke: "#555", "stroke-dasharray": "2 5" }],
  ]));

  const fitted = ds.params["fitted_slope"];
  const sub = fitted !== undefined ? `, fitted slope ${trim(fitted)}` : "";
  g.push(panelTitle(box,
    `Compression residual vs tail start (alpha=${alpha}${sub})`));

  return svgRoot(560, 420,
    { "data-kind": "scaling", "data-alpha": String(alpha) },
    [metadataBlock(job, metas), el("g", { class: "panel" }, g)]);
}

function trim(v: string): string {
  const n = Number(v);
  return Number.isFinite(n) ? String(Math.round(n * 1000) / 1000) : v;
}

// ---------------------------------------------------------------------------
// heatmap: open-boundary target, periodic surrogate, |difference| (log color)

const GEOMETRY_ROLES: Array<[string, string]> = [
  ["toeplitz-open", "open-boundary target"],
  ["circulant-periodic", "periodic surrogate"],
  ["residual", "absolute difference"],
];

function buildHeatmap(job: FigureJob, metas: SidecarMeta[]): string {
  const mats = new Map<string, MatrixDataset>();
  for (const path of job.datasets) {
    const mat = readMatrix(path);
    mats.set(mat.geometry, mat);
  }
  for (const [geometry] of GEOMETRY_ROLES) {
    if (!mats.has(geometry)) {
      throw new Error(`heatmap figure needs matrices with geometries ` +
        `${GEOMETRY_ROLES.map(([g]) => g).join(", ")}; missing "${geometry}"`);
    }
  }
  const target = mats.get("toeplitz-open")!;
  const N = target.rows;
  for (const mat of mats.values()) {
    if (mat.rows !== N || mat.cols !== N) {
      throw new Error(`matrix ${basename(mat.path)} is ` +
        `${mat.rows}x${mat.cols}, expected ${N}x${N}`);
    }
  }

  // Shared signed color range for the two operator panels.
  let vmax = 0;
  for (const geometry of ["toeplitz-open", "circulant-periodic"]) {
    for (const row of mats.get(geometry)!.values) {
      for (const v of row) vmax = Math.max(vmax, Math.abs(v));
    }
  }
  if (!(vmax > 0)) vmax = 1;

  const side = 240;
  const cell = side / N;
  const gap = 36;
  const top = 52;
  const left = 30;
  const blk = Math.max(1, Math.round(N / 8));
  const panels: string[] = [];

  for (let p = 0; p < GEOMETRY_ROLES.length; p++) {
    const [geometry, role] = GEOMETRY_ROLES[p];
    const mat = mats.get(geometry)!;
    const x0 = left + p * (side + gap);
    const cells: string[] = [];
    let caption: string;

    if (geometry === "residual") {
      let amax = 0, amin = Infinity;
      for (const row of mat.values) {
        for (const v of row) {
          if (v > 0) { amax = Math.max(amax, v); amin = Math.min(amin, v); }
        }
      }
      if (!(amax > 0)) { amax = 1e-15; amin = 1e-18; }
      const floor = Math.min(amin, amax * 1e-8);
      const span = Math.log10(amax) - Math.log10(floor) || 1;
      for (let i = 0; i < N; i++) {
        for (let j = 0; j < N; j++) {
          const v = Math.max(mat.values[i][j], floor);
          const t = (Math.log10(v) - Math.log10(floor)) / span;
          cells.push(el("rect", { x: j * cell, y: i * cell,
                                  width: cell, height: cell,
                                  fill: sequential(t) }));
        }
      }
      caption = `max ${amax.toExponential(1)}, log color`;
    } else {
      for (let i = 0; i < N; i++) {
        for (let j = 0; j < N; j++) {
          const t = (mat.values[i][j] + vmax) / (2 * vmax);
          cells.push(el("rect", { x: j * cell, y: i * cell,
                                  width: cell, height: cell,
                                  fill: diverging(t) }));
        }
      }
      caption = `range +-${vmax.toExponential(1)}`;
    }

    // The aliasing images concentrate in the wrap-around corners; outline
    // the two N/8 corner blocks so the eye lands there first.
    for (const [ci, cj] of [[0, N - blk], [N - blk, 0]]) {
      cells.push(el("rect", {
        class: "corner-highlight", x: cj * cell, y: ci * cell,
        width: blk * cell, height: blk * cell, fill: "none",
        stroke: "#ffffff", "stroke-width": 2, "stroke-dasharray": "4 3",
      }));
    }
    cells.push(el("rect", { x: 0, y: 0, width: side, height: side,
                            fill: "none", stroke: "#333" }));

    panels.push(el("g", {
      class: "panel",
      "data-geometry": geometry,
      "data-scale": geometry === "residual" ? "log" : "linear",
      transform: `translate(${x0},${top})`,
    }, [
      textEl({ x: side / 2, y: -10, "text-anchor": "middle",
               "font-size": 12, fill: "#111" }, role),
      ...cells,
      textEl({ x: side / 2, y: side + 16, "text-anchor": "middle",
               "font-size": 10, fill: "#333" }, caption),
    ]));
  }

  const params = metas[0].parameters ?? {};
  const width = left * 2 + 3 * side + 2 * gap;
  return svgRoot(width, top + side + 46, {
    "data-kind": "heatmap",
    "data-n": String(N),
    "data-alpha": String(params["alpha"] ?? ""),
  }, [
    metadataBlock(job, metas),
    textEl({ x: width / 2, y: 22, "text-anchor": "middle", "font-size": 14,
             fill: "#111" },
      `Operator entries and boundary mismatch (alpha=${params["alpha"]}, N=${N})`),
    ...panels,
  ]);
}

// ---------------------------------------------------------------------------
// functional: action overlays for the benchmark suite plus log-error panel

function buildFunctional(job: FigureJob, metas: SidecarMeta[]): string {
  const ds = readDataset(job.datasets[0]);
  requireColumns(ds, ["j", "x"]);
  assertNonEmpty(ds);
  const bases = ds.columns.filter((c) => c.endsWith("_target"))
    .map((c) => c.slice(0, -"_target".length));
  if (bases.length === 0) {
    throw new Error(`dataset ${basename(ds.path)} has no *_target ` +
      `action columns`);
  }
  for (const base of bases) {
    requireColumns(ds, [base, `${base}_native`, `${base}_padded`,
                        `${base}_native_error`, `${base}_padded_error`]);
  }
  const x = column(ds, "x");
  const [xLo, xHi] = minMax(x);

  const boxA: Box = { x: 62, y: 46, w: 330, h: 280 };
  const boxB: Box = { x: 480, y: 46, w: 330, h: 280 };

  // Left: actions for the first benchmark function.
  const base = bases[0];
  const series = [column(ds, `${base}_target`), column(ds, `${base}_native`),
                  column(ds, `${base}_padded`)];
  let lo = Infinity, hi = -Infinity;
  for (const s of series) {
    const [a, b] = minMax(s);
    lo = Math.min(lo, a); hi = Math.max(hi, b);
  }
  const padY = 0.08 * (hi - lo || 1);
  const sxA = linearScale(xLo, xHi, boxA.x, boxA.x + boxA.w);
  const syA = linearScale(lo - padY, hi + padY, boxA.y + boxA.h, boxA.y);
  const ga: string[] = [frame(boxA)];
  ga.push(...xAxis(boxA, sxA, linearTicks(xLo, xHi), "x"));
  ga.push(...yAxis(boxA, syA, linearTicks(lo - padY, hi + padY), "action"));
  ga.push(seriesLine(x, series[0], sxA, syA,
    { class: "series action-target", stroke: "#111", "stroke-width": 2 }));
  ga.push(seriesLine(x, series[1], sxA, syA,
    { class: "series action-native", stroke: COLORS[1],
      "stroke-width": 1.5, "stroke-dasharray": "5 3" }));
  ga.push(seriesLine(x, series[2], sxA, syA,
    { class: "series action-padded", stroke: COLORS[0], "stroke-width": 1.5 }));
  ga.push(...legend(boxA, [
    ["open-boundary target", { stroke: "#111", "stroke-width": 2 }],
    ["native surrogate", { stroke: COLORS[1], "stroke-dasharray": "5 3" }],
    ["padded surrogate", { stroke: COLORS[0] }],
  ]));
  ga.push(panelTitle(boxA, `Action on ${base.replace(/_/g, "-")}`));

  // Right: pointwise errors for every benchmark function, log scale.
  const errors: number[][] = [];
  for (const b of bases) {
    errors.push(column(ds, `${b}_native_error`));
    errors.push(column(ds, `${b}_padded_error`));
  }
  const [eLo, eHi] = logDomain(errors);
  const sxB = linearScale(xLo, xHi, boxB.x, boxB.x + boxB.w);
  const syB = logScale(eLo, eHi, boxB.y + boxB.h, boxB.y);
  const gb: string[] = [frame(boxB)];
  gb.push(...xAxis(boxB, sxB, linearTicks(xLo, xHi), "x"));
  gb.push(...yAxis(boxB, syB, decadeTicks(eLo, eHi), "pointwise error"));
  const legendB: Array<[string, Attrs]> = [];
  for (let b = 0; b < bases.length; b++) {
    const color = COLORS[b % COLORS.length];
    const native = column(ds, `${bases[b]}_native_error`)
      .map((v) => clampLog(v, eLo));
    const padded = column(ds, `${bases[b]}_padded_error`)
      .map((v) => clampLog(v, eLo));
    gb.push(seriesLine(x, native, sxB, syB,
      { class: "series native-error", stroke: color,
        "stroke-width": 1.2, "stroke-dasharray": "5 3" }));
    gb.push(seriesLine(x, padded, sxB, syB,
      { class: "series padded-error", stroke: color, "stroke-width": 1.5 }));
    legendB.push([bases[b].replace(/_/g, "-"), { stroke: color,
      "stroke-width": 1.5 }]);
  }
  legendB.push(["dashed: native", { stroke: "#777", "stroke-dasharray": "5 3" }]);
  gb.push(...legend(boxB, legendB));
  gb.push(panelTitle(boxB, "Errors against the open-boundary action"));

  const params = metas[0].parameters ?? {};
  return svgRoot(860, 420, {
    "data-kind": "functional",
    "data-alpha": String(params["alpha"] ?? ds.params["alpha"] ?? ""),
  }, [
    metadataBlock(job, metas),
    el("g", { class: "panel", "data-scale": "linear" }, ga),
    el("g", { class: "panel", "data-scale": "log" }, gb),
  ]);
}

// ---------------------------------------------------------------------------
// gaussian: one localized state, actions plus errors

function buildGaussian(job: FigureJob, metas: SidecarMeta[]): string {
  const ds = readDataset(job.datasets[0]);
  requireColumns(ds, ["j", "u", "target", "native", "padded",
                      "native_error", "padded_error"]);
  assertNonEmpty(ds);
  const j = column(ds, "j");
  const [jLo, jHi] = minMax(j);

  const boxA: Box = { x: 62, y: 46, w: 330, h: 280 };
  const boxB: Box = { x: 480, y: 46, w: 330, h: 280 };

  const over = [column(ds, "target"), column(ds, "native"),
                column(ds, "padded"), column(ds, "u")];
  let lo = Infinity, hi = -Infinity;
  for (const s of over) {
    const [a, b] = minMax(s);
    lo = Math.min(lo, a); hi = Math.max(hi, b);
  }
  const padY = 0.08 * (hi - lo || 1);
  const sxA = linearScale(jLo, jHi, boxA.x, boxA.x + boxA.w);
  const syA = linearScale(lo - padY, hi + padY, boxA.y + boxA.h, boxA.y);
  const ga: string[] = [frame(boxA)];
  ga.push(...xAxis(boxA, sxA, linearTicks(jLo, jHi), "site j"));
  ga.push(...yAxis(boxA, syA, linearTicks(lo - padY, hi + padY), "value"));
  ga.push(seriesLine(j, column(ds, "u"), sxA, syA,
    { class: "series state", stroke: "#aaa", "stroke-width": 1 }));
  ga.push(seriesLine(j, column(ds, "target"), sxA, syA,
    { class: "series action-target", stroke: "#111", "stroke-width": 2 }));
  ga.push(seriesLine(j, column(ds, "native"), sxA, syA,
    { class: "series action-native", stroke: COLORS[1],
      "stroke-width": 1.5, "stroke-dasharray": "5 3" }));
  ga.push(seriesLine(j, column(ds, "padded"), sxA, syA,
    { class: "series action-padded", stroke: COLORS[0], "stroke-width": 1.5 }));
  ga.push(...legend(boxA, [
    ["state", { stroke: "#aaa" }],
    ["target action", { stroke: "#111", "stroke-width": 2 }],
    ["native", { stroke: COLORS[1], "stroke-dasharray": "5 3" }],
    ["padded", { stroke: COLORS[0] }],
  ]));
  const center = ds.params["center"] ?? "?";
  ga.push(panelTitle(boxA, `Gaussian state at center ${center}`));

  const errs = [column(ds, "native_error"), column(ds, "padded_error")];
  const [eLo, eHi] = logDomain(errs);
  const sxB = linearScale(jLo, jHi, boxB.x, boxB.x + boxB.w);
  const syB = logScale(eLo, eHi, boxB.y + boxB.h, boxB.y);
  const gb: string[] = [frame(boxB)];
  gb.push(...xAxis(boxB, sxB, linearTicks(jLo, jHi), "site j"));
  gb.push(...yAxis(boxB, syB, decadeTicks(eLo, eHi), "pointwise error"));
  gb.push(seriesLine(j, errs[0].map((v) => clampLog(v, eLo)), sxB, syB,
    { class: "series native-error", stroke: COLORS[1],
      "stroke-width": 1.5, "stroke-dasharray": "5 3" }));
  gb.push(seriesLine(j, errs[1].map((v) => clampLog(v, eLo)), sxB, syB,
    { class: "series padded-error", stroke: COLORS[0], "stroke-width": 1.5 }));
  gb.push(...legend(boxB, [
    ["native error", { stroke: COLORS[1], "stroke-dasharray": "5 3" }],
    ["padded error", { stroke: COLORS[0] }],
  ]));
  gb.push(panelTitle(boxB, "Pointwise action errors"));

  const params = metas[0].parameters ?? {};
  return svgRoot(860, 420, {
    "data-kind": "gaussian",
    "data-alpha": String(params["alpha"] ?? ds.params["alpha"] ?? ""),
  }, [
    metadataBlock(job, metas),
    el("g", { class: "panel", "data-scale": "linear" }, ga),
    el("g", { class: "panel", "data-scale": "log" }, gb),
  ]);
}

// ---------------------------------------------------------------------------
// sweep: relative errors as the state center moves toward the boundary

function buildSweep(job: FigureJob, metas: SidecarMeta[]): string {
  const ds = readDataset(job.datasets[0]);
  requireColumns(ds, ["center", "native_relative_error",
                      "padded_relative_error"]);
  assertNonEmpty(ds);
  const centers = column(ds, "center");
  const native = column(ds, "native_relative_error");
  const padded = column(ds, "padded_relative_error");
  const [cLo, cHi] = minMax(centers);

  const box: Box = { x: 66, y: 46, w: 420, h: 300 };
  const sx = linearScale(cLo - 0.5, cHi + 0.5, box.x, box.x + box.w);
  const [eLo, eHi] = logDomain([native, padded]);
  const sy = logScale(eLo, eHi, box.y + box.h, box.y);

  const g: string[] = [frame(box)];
  g.push(...xAxis(box, sx, linearTicks(cLo, cHi), "state center (site index)"));
  g.push(...yAxis(box, sy, decadeTicks(eLo, eHi), "relative action error"));
  g.push(seriesLine(centers, native.map((v) => clampLog(v, eLo)), sx, sy,
    { class: "series native-error", stroke: COLORS[1],
      "stroke-width": 1.5, "stroke-dasharray": "5 3" }));
  g.push(...seriesDots(centers, native.map((v) => clampLog(v, eLo)), sx, sy,
                       COLORS[1]));
  g.push(seriesLine(centers, padded.map((v) => clampLog(v, eLo)), sx, sy,
    { class: "series padded-error", stroke: COLORS[0], "stroke-width": 1.5 }));
  g.push(...seriesDots(centers, padded.map((v) => clampLog(v, eLo)), sx, sy,
                       COLORS[0]));
  g.push(...legend(box, [
    ["native surrogate", { stroke: COLORS[1], "stroke-dasharray": "5 3" }],
    ["padded surrogate", { stroke: COLORS[0] }],
  ]));
  const params = metas[0].parameters ?? {};
  g.push(panelTitle(box,
    `Boundary sensitivity (alpha=${params["alpha"]}, N=${ds.params["N"]})`));

  return svgRoot(560, 420, {
    "data-kind": "sweep",
    "data-alpha": String(params["alpha"] ?? ds.params["alpha"] ?? ""),
  }, [metadataBlock(job, metas), el("g", { class: "panel", "data-scale": "log" }, g)]);
}

// ---------------------------------------------------------------------------

const BUILDERS: Record<FigureKind, (job: FigureJob,
                                    metas: SidecarMeta[]) => string> = {
  heatmap: buildHeatmap,
  functional: buildFunctional,
  scaling: buildScaling,
  gaussian: buildGaussian,
  sweep: buildSweep,
};

/** Validate, build, then write job.output; returns the output path. */
export function renderFigure(job: FigureJob): string {
  const metas = validateJob(job);
  const svg = BUILDERS[job.kind](job, metas);
  writeFileSync(job.output, svg, "utf8");
  return job.output;
}
