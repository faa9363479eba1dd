/**
 * End-to-end renderer tests against real datasets produced by the
 * fraclap CLI.  One shared data directory is populated in beforeAll;
 * each test renders into its own output path.
 */

import { spawnSync } from "node:child_process";
import {
  existsSync, mkdtempSync, readFileSync, readdirSync, writeFileSync,
} from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { renderFigure } from "../src/render.js";
import { unescText } from "../src/svg.js";
import type { FigureKind } from "../src/job.js";

let dataDir: string;
let outDir: string;

const SCALING = "scaling_alpha1.5_h1_N16_M256.csv";
const HEAT16 = "heatmap_alpha1_h1_N16_M16";
const HEAT64 = "heatmap_alpha1.5_h1_N64_M64";
const FUNCTIONAL = "functional_alpha1.5_h1_N16_M256.csv";
const GAUSSIAN = "gaussian_alpha1.5_h1_N32_M64.csv";
const SWEEP = "sweep_alpha1.5_h1_N32_M64.csv";

function fraclap(...args: string[]): void {
  const res = spawnSync(
    "python3", ["-m", "fraclap.cli", ...args, "--output-dir", dataDir],
    { encoding: "utf8" });
  if (res.status !== 0) {
    throw new Error(`fraclap ${args.join(" ")} exited ${res.status}: ` +
      `${res.stderr}`);
  }
}

function render(kind: FigureKind, name: string, ...datasets: string[]): string {
  const output = join(outDir, name);
  renderFigure({ kind, datasets: datasets.map((d) => join(dataDir, d)),
                 output });
  return output;
}

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

function heatmapFiles(stem: string): string[] {
  return [`${stem}_target.csv`, `${stem}_surrogate.csv`, `${stem}_absdiff.csv`];
}

beforeAll(() => {
  dataDir = mkdtempSync(join(tmpdir(), "fraclap-data-"));
  outDir = mkdtempSync(join(tmpdir(), "fraclap-figures-"));
  fraclap("figure", "scaling", "--alpha", "1.5", "--N", "16",
          "--M-list", "32,64,128,256");
  fraclap("figure", "heatmap", "--alpha", "1", "--N", "16");
  fraclap("figure", "heatmap", "--alpha", "1.5", "--N", "64");
  fraclap("figure", "functional", "--alpha", "1.5", "--N", "16");
  fraclap("figure", "gaussian", "--alpha", "1.5", "--N", "32");
  fraclap("figure", "sweep", "--alpha", "1.5", "--N", "32");
});

describe("scaling figure", () => {
  it("draws the dotted guide line with slope -1 for alpha=1.5", () => {
    const out = render("scaling", "scaling.svg", SCALING);
    expect(existsSync(out)).toBe(true);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain('data-kind="scaling"');
    expect(svg).toContain('class="guide-line"');
    expect(svg).toContain('data-slope="-1"');
    expect(svg).toContain('stroke-dasharray');
    expect(svg).toContain('class="series tail-bound"');
    expect(svg).toContain('class="series spectral-norm"');
  });

  it("round-trips the sidecar metadata into the image", () => {
    const out = render("scaling", "scaling_meta.svg", SCALING);
    const svg = readFileSync(out, "utf8");
    const m = svg.match(/<metadata id="figure-meta">(.*?)<\/metadata>/s);
    expect(m).not.toBeNull();
    const embedded = JSON.parse(unescText(m![1]));
    const sidecar = JSON.parse(readFileSync(
      join(dataDir, SCALING.replace(/\.csv$/, ".meta.json")), "utf8"));
    expect(embedded.kind).toBe("scaling");
    expect(embedded.sources).toEqual([SCALING]);
    expect(embedded.parameters).toEqual(sidecar.parameters);
  });

  it("writes identical bytes when re-rendered", () => {
    const a = render("scaling", "scaling_a.svg", SCALING);
    const b = render("scaling", "scaling_b.svg", SCALING);
    expect(readFileSync(a, "utf8")).toBe(readFileSync(b, "utf8"));
  });
});

describe("heatmap figure", () => {
  it("renders three panels with a log-scale difference panel", () => {
    const out = render("heatmap", "heatmap16.svg", ...heatmapFiles(HEAT16));
    const svg = readFileSync(out, "utf8");
    expect(count(svg, '<g class="panel"')).toBe(3);
    expect(svg).toContain('data-geometry="toeplitz-open" data-scale="linear"');
    expect(svg).toContain(
      'data-geometry="circulant-periodic" data-scale="linear"');
    expect(svg).toContain('data-geometry="residual" data-scale="log"');
    expect(svg).toContain('data-n="16"');
  });

  it("highlights the wrap-around corner blocks in every panel", () => {
    const out = render("heatmap", "heatmap16b.svg", ...heatmapFiles(HEAT16));
    const svg = readFileSync(out, "utf8");
    expect(count(svg, 'class="corner-highlight"')).toBe(6);
  });

  it("accepts the matrices in any argument order", () => {
    const files = heatmapFiles(HEAT64);
    const out = render("heatmap", "heatmap64.svg",
                       files[2], files[0], files[1]);
    const svg = readFileSync(out, "utf8");
    expect(count(svg, '<g class="panel"')).toBe(3);
    expect(svg).toContain('data-n="64"');
    expect(svg).toContain('data-alpha="1.5"');
  });

  it("reports which matrix is absent", () => {
    const files = heatmapFiles(HEAT16);
    const out = join(outDir, "heatmap_missing.svg");
    expect(() => renderFigure({
      kind: "heatmap",
      datasets: [join(dataDir, files[0]), join(dataDir, files[1])],
      output: out,
    })).toThrow(/missing "residual"/);
    expect(existsSync(out)).toBe(false);
  });
});

describe("functional figure", () => {
  it("renders the action overlay and a log error panel", () => {
    const out = render("functional", "functional.svg", FUNCTIONAL);
    const svg = readFileSync(out, "utf8");
    expect(count(svg, '<g class="panel"')).toBe(2);
    expect(svg).toContain('data-scale="log"');
    expect(svg).toContain('class="series action-target"');
    expect(svg).toContain('class="series padded-error"');
    expect(svg).toContain("gauss-bump");
    expect(svg).toContain("sine-bump");
  });
});

describe("gaussian figure", () => {
  it("renders state, actions and errors", () => {
    const out = render("gaussian", "gaussian.svg", GAUSSIAN);
    const svg = readFileSync(out, "utf8");
    expect(count(svg, '<g class="panel"')).toBe(2);
    expect(svg).toContain('class="series state"');
    expect(svg).toContain('class="series native-error"');
    expect(svg).toContain('data-kind="gaussian"');
  });
});

describe("sweep figure", () => {
  it("renders both error series against the center", () => {
    const out = render("sweep", "sweep.svg", SWEEP);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain('data-kind="sweep"');
    expect(svg).toContain('class="series native-error"');
    expect(svg).toContain('class="series padded-error"');
  });
});

describe("refusals", () => {
  it("refuses to draw a scaling figure from heatmap matrices", () => {
    const out = join(outDir, "mismatch.svg");
    expect(() => renderFigure({
      kind: "scaling",
      datasets: [join(dataDir, `${HEAT16}_target.csv`)],
      output: out,
    })).toThrow(/produced for kind "heatmap"/);
    expect(existsSync(out)).toBe(false);
  });

  it("names the missing column and writes nothing", () => {
    const dir = mkdtempSync(join(tmpdir(), "fraclap-bad-"));
    writeFileSync(join(dir, "partial.csv"),
      "# experiment=scaling alpha=1.5 N=16\n# columns: K,spectral_norm\n" +
      "K,spectral_norm\n17,0.25\n");
    writeFileSync(join(dir, "partial.meta.json"),
      JSON.stringify({ kind: "scaling", parameters: { alpha: 1.5 } }));
    const out = join(outDir, "partial.svg");
    expect(() => renderFigure({
      kind: "scaling", datasets: [join(dir, "partial.csv")], output: out,
    })).toThrow(/missing required column "tail_bound"/);
    expect(existsSync(out)).toBe(false);
  });

  it("rejects an empty dataset without writing a file", () => {
    const dir = mkdtempSync(join(tmpdir(), "fraclap-empty-"));
    writeFileSync(join(dir, "empty.csv"),
      "# experiment=scaling alpha=1.5 N=16\n" +
      "# columns: K,spectral_norm,tail_bound\nK,spectral_norm,tail_bound\n");
    writeFileSync(join(dir, "empty.meta.json"),
      JSON.stringify({ kind: "scaling", parameters: { alpha: 1.5 } }));
    const out = join(outDir, "empty.svg");
    expect(() => renderFigure({
      kind: "scaling", datasets: [join(dir, "empty.csv")], output: out,
    })).toThrow(/is empty; nothing to render/);
    expect(existsSync(out)).toBe(false);
  });

  it("requires a metadata sidecar next to every dataset", () => {
    const dir = mkdtempSync(join(tmpdir(), "fraclap-orphan-"));
    writeFileSync(join(dir, "orphan.csv"),
      "# experiment=sweep\n# columns: center\ncenter\n1\n");
    expect(() => renderFigure({
      kind: "sweep", datasets: [join(dir, "orphan.csv")],
      output: join(outDir, "orphan.svg"),
    })).toThrow(/no metadata sidecar/);
  });

  it("only ever writes its own output file", () => {
    const before = readdirSync(dataDir).sort();
    render("sweep", "sweep_again.svg", SWEEP);
    expect(readdirSync(dataDir).sort()).toEqual(before);
  });
});
