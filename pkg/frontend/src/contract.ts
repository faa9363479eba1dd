/**
 * Readers for the dataset files the fraclap CLI emits.
 *
 * Two shapes exist on disk:
 *  - column datasets: CSV with `# experiment=...` and `# columns: ...`
 *    header comments, or the equivalent column-oriented JSON payload;
 *  - dense matrices: CSV under a single `# geometry=...` comment.
 *
 * Every data file has a JSON sidecar (stem.meta.json) carrying the figure
 * kind, tool version and run parameters; see job.ts for sidecar handling.
 */

import { readFileSync } from "node:fs";
import { basename } from "node:path";

export interface Dataset {
  experiment: string;
  /** key=value pairs from the header comment, values kept as strings. */
  params: Record<string, string>;
  columns: string[];
  cells: Map<string, number[]>;
  length: number;
  path: string;
}

export interface MatrixDataset {
  geometry: string;
  params: Record<string, string>;
  values: number[][];
  rows: number;
  cols: number;
  path: string;
}

/**
 * Parse `key=value` pairs from a header comment.  Values may contain
 * spaces (e.g. `M_list=[32, 64, 128, 256]`); a token without `=` is a
 * continuation of the previous value.
 */
export function parseHeaderPairs(line: string): Record<string, string> {
  const params: Record<string, string> = {};
  let lastKey = "";
  for (const token of line.trim().split(/\s+/)) {
    const eq = token.indexOf("=");
    if (eq > 0) {
      lastKey = token.slice(0, eq);
      params[lastKey] = token.slice(eq + 1);
    } else if (lastKey !== "") {
      params[lastKey] += " " + token;
    }
  }
  return params;
}

function parseCell(text: string): number {
  if (text === "") return NaN;  // blank cells mean "not defined here"
  return Number(text);
}

export function parseDatasetCsv(text: string, path = "<string>"): Dataset {
  const lines = text.split(/\r?\n/);
  if (!lines[0] || !lines[0].startsWith("# experiment=")) {
    throw new Error(`${path} is not a column dataset ` +
      `(expected a "# experiment=..." header line)`);
  }
  const params = parseHeaderPairs(lines[0].slice(2));
  const experiment = params["experiment"] ?? "";
  delete params["experiment"];

  let i = 1;
  while (i < lines.length && lines[i].startsWith("#")) i++;
  if (i >= lines.length || lines[i] === "") {
    throw new Error(`${path} has no column header row`);
  }
  const columns = lines[i].split(",");
  const series: number[][] = columns.map(() => []);
  for (i += 1; i < lines.length; i++) {
    if (lines[i] === "") continue;
    const parts = lines[i].split(",");
    if (parts.length !== columns.length) {
      throw new Error(`${path}: row ${i + 1} has ${parts.length} cells, ` +
        `expected ${columns.length}`);
    }
    for (let c = 0; c < columns.length; c++) {
      series[c].push(parseCell(parts[c]));
    }
  }
  const cells = new Map<string, number[]>();
  for (let c = 0; c < columns.length; c++) cells.set(columns[c], series[c]);
  return { experiment, params, columns, cells, length: series[0]?.length ?? 0, path };
}

/** Column-oriented JSON twin of the CSV dataset format. */
export function parseDatasetJson(text: string, path = "<string>"): Dataset {
  let payload: any;
  try {
    payload = JSON.parse(text);
  } catch (err) {
    throw new Error(`${path} is not valid JSON: ${(err as Error).message}`);
  }
  if (typeof payload !== "object" || payload === null ||
      typeof payload.columns !== "object" || payload.columns === null) {
    throw new Error(`${path} is not a column dataset (no "columns" object)`);
  }
  const params: Record<string, string> = {};
  for (const [k, v] of Object.entries(payload.parameters ?? {})) {
    params[k] = Array.isArray(v) ? JSON.stringify(v) : String(v);
  }
  const columns = Object.keys(payload.columns);
  const cells = new Map<string, number[]>();
  let length = 0;
  for (const name of columns) {
    const values = (payload.columns[name] as unknown[]).map((v) =>
      typeof v === "number" ? v : parseCell(String(v ?? "")));
    cells.set(name, values);
    length = values.length;
  }
  return { experiment: String(payload.experiment ?? ""), params, columns,
           cells, length, path };
}

export function readDataset(path: string): Dataset {
  const text = readFileSync(path, "utf8");
  if (path.endsWith(".json")) return parseDatasetJson(text, path);
  return parseDatasetCsv(text, path);
}

export function parseMatrixCsv(text: string, path = "<string>"): MatrixDataset {
  const lines = text.split(/\r?\n/).filter((l) => l !== "");
  if (!lines[0] || !lines[0].startsWith("# geometry=")) {
    throw new Error(`${path} is not a matrix file ` +
      `(expected a "# geometry=..." header line)`);
  }
  const params = parseHeaderPairs(lines[0].slice(2));
  const geometry = params["geometry"] ?? "";
  delete params["geometry"];
  const values: number[][] = [];
  for (let i = 1; i < lines.length; i++) {
    values.push(lines[i].split(",").map(Number));
  }
  if (values.length === 0) {
    throw new Error(`${path} contains no matrix rows`);
  }
  const cols = values[0].length;
  for (const row of values) {
    if (row.length !== cols) {
      throw new Error(`${path} is ragged: rows of ${cols} and ${row.length} cells`);
    }
  }
  return { geometry, params, values, rows: values.length, cols, path };
}

export function readMatrix(path: string): MatrixDataset {
  return parseMatrixCsv(readFileSync(path, "utf8"), path);
}

/** Throw if any named column is absent; the message names the column. */
export function requireColumns(ds: Dataset, names: string[]): void {
  for (const name of names) {
    if (!ds.cells.has(name)) {
      throw new Error(
        `dataset ${basename(ds.path)} is missing required column "${name}" ` +
        `(has: ${ds.columns.join(", ")})`);
    }
  }
}

export function column(ds: Dataset, name: string): number[] {
  requireColumns(ds, [name]);
  return ds.cells.get(name)!;
}
