/**
 * Figure jobs and sidecar validation.
 *
 * A FigureJob points at one or more dataset files plus an output image
 * path.  Rendering refuses to start unless every dataset has a metadata
 * sidecar whose kind matches the requested figure kind, so a scaling
 * figure cannot silently be drawn from, say, heatmap matrices.
 */

import { existsSync, readFileSync } from "node:fs";
import { basename } from "node:path";

export const FIGURE_KINDS = [
  "heatmap", "functional", "scaling", "gaussian", "sweep",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureJob {
  kind: FigureKind;
  /** Input data files (CSV or JSON), order preserved. */
  datasets: string[];
  /** SVG path to write; rendering overwrites only this file. */
  output: string;
}

export interface SidecarMeta {
  kind: string;
  created?: string;
  tool?: string;
  version?: string;
  parameters?: Record<string, unknown>;
  note?: string;
}

/**
 * Sidecar path for a data file.  Matrix files share one sidecar per
 * figure stem (`..._target.csv` -> `....meta.json`); auxiliary JSON
 * (`.report.json`, `.table.json`) maps back to the same stem.
 */
export function sidecarPath(dataset: string): string {
  const role = dataset.match(/_(target|surrogate|absdiff)\.csv$/);
  if (role) return dataset.slice(0, -role[0].length) + ".meta.json";
  const aux = dataset.match(/\.(report|table)\.json$/);
  if (aux) return dataset.slice(0, -aux[0].length) + ".meta.json";
  return dataset.replace(/\.(csv|json)$/, "") + ".meta.json";
}

export function loadSidecar(dataset: string): SidecarMeta {
  const path = sidecarPath(dataset);
  if (!existsSync(path)) {
    throw new Error(`no metadata sidecar for ${basename(dataset)} ` +
      `(expected ${path})`);
  }
  const meta = JSON.parse(readFileSync(path, "utf8")) as SidecarMeta;
  if (typeof meta.kind !== "string") {
    throw new Error(`sidecar ${path} has no "kind" field`);
  }
  return meta;
}

/**
 * Check a job before any file is touched: known kind, at least one
 * dataset, and every sidecar kind equal to the job kind.  Returns the
 * sidecars in dataset order.
 */
export function validateJob(job: FigureJob): SidecarMeta[] {
  if (!(FIGURE_KINDS as readonly string[]).includes(job.kind)) {
    throw new Error(`unknown figure kind "${job.kind}" ` +
      `(expected one of: ${FIGURE_KINDS.join(", ")})`);
  }
  if (job.datasets.length === 0) {
    throw new Error("figure job has no input datasets");
  }
  const metas: SidecarMeta[] = [];
  for (const dataset of job.datasets) {
    const meta = loadSidecar(dataset);
    if (meta.kind !== job.kind) {
      throw new Error(
        `dataset ${basename(dataset)} was produced for kind "${meta.kind}"; ` +
        `refusing to render a "${job.kind}" figure from it`);
    }
    metas.push(meta);
  }
  return metas;
}
