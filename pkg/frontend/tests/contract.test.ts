import { describe, expect, it } from "vitest";

import {
  column, parseDatasetCsv, parseDatasetJson, parseHeaderPairs, parseMatrixCsv,
  requireColumns,
} from "../src/contract.js";

const DATASET = [
  "# experiment=scaling alpha=1.5 h=1.0 seed=0 format=csv N=16 " +
    "M_list=[32, 64, 128, 256] sigma=4.0",
  "# columns: K,spectral_norm,tail_bound,state_error",
  "K,spectral_norm,tail_bound,state_error",
  "17,0.25,0.5,",
  "33,0.12,0.25,0.01",
  "",
].join("\n");

describe("parseHeaderPairs", () => {
  it("keeps list values containing spaces intact", () => {
    const params = parseHeaderPairs(
      "experiment=scaling alpha=1.5 M_list=[32, 64, 128, 256] sigma=4.0");
    expect(params["alpha"]).toBe("1.5");
    expect(params["M_list"]).toBe("[32, 64, 128, 256]");
    expect(params["sigma"]).toBe("4.0");
  });
});

describe("parseDatasetCsv", () => {
  it("reads columns, params and rows", () => {
    const ds = parseDatasetCsv(DATASET, "scaling.csv");
    expect(ds.experiment).toBe("scaling");
    expect(ds.params["N"]).toBe("16");
    expect(ds.columns).toEqual(
      ["K", "spectral_norm", "tail_bound", "state_error"]);
    expect(ds.length).toBe(2);
    expect(column(ds, "K")).toEqual([17, 33]);
    expect(column(ds, "tail_bound")).toEqual([0.5, 0.25]);
  });

  it("maps blank cells to NaN", () => {
    const ds = parseDatasetCsv(DATASET);
    const state = column(ds, "state_error");
    expect(Number.isNaN(state[0])).toBe(true);
    expect(state[1]).toBe(0.01);
  });

  it("rejects files without the experiment header", () => {
    expect(() => parseDatasetCsv("a,b\n1,2\n", "x.csv"))
      .toThrow(/not a column dataset/);
  });

  it("rejects ragged rows with the row number", () => {
    const bad = DATASET.replace("33,0.12,0.25,0.01", "33,0.12");
    expect(() => parseDatasetCsv(bad, "x.csv")).toThrow(/row 5 has 2 cells/);
  });
});

describe("parseDatasetJson", () => {
  it("reads the column-oriented JSON twin", () => {
    const text = JSON.stringify({
      experiment: "sweep",
      parameters: { alpha: 1.5, N: 32, centers: [0, 8, 16] },
      columns: { center: [0, 8], native_relative_error: [0.1, 0.05] },
    });
    const ds = parseDatasetJson(text, "sweep.json");
    expect(ds.experiment).toBe("sweep");
    expect(ds.params["alpha"]).toBe("1.5");
    expect(ds.params["centers"]).toBe("[0,8,16]");
    expect(column(ds, "center")).toEqual([0, 8]);
    expect(ds.length).toBe(2);
  });

  it("rejects payloads without a columns object", () => {
    expect(() => parseDatasetJson("{\"rows\": []}", "x.json"))
      .toThrow(/no "columns" object/);
    expect(() => parseDatasetJson("nonsense", "x.json"))
      .toThrow(/not valid JSON/);
  });
});

describe("parseMatrixCsv", () => {
  const MATRIX = [
    "# geometry=toeplitz-open alpha=1.0 h=1.0 N=2 M=2",
    "1.5707963267948966,-0.63661977236758138",
    "-0.63661977236758138,1.5707963267948966",
    "",
  ].join("\n");

  it("reads geometry, params and a rectangular grid", () => {
    const mat = parseMatrixCsv(MATRIX, "m.csv");
    expect(mat.geometry).toBe("toeplitz-open");
    expect(mat.params["N"]).toBe("2");
    expect(mat.rows).toBe(2);
    expect(mat.cols).toBe(2);
    expect(mat.values[0][1]).toBeCloseTo(-2 / Math.PI, 14);
  });

  it("rejects ragged and empty matrices", () => {
    expect(() => parseMatrixCsv(MATRIX.replace(",1.5707963267948966\n", "\n"),
                                "m.csv")).toThrow(/ragged/);
    expect(() => parseMatrixCsv("# geometry=residual alpha=1 h=1 N=0 M=0\n",
                                "m.csv")).toThrow(/no matrix rows/);
    expect(() => parseMatrixCsv("1,2\n3,4\n", "m.csv"))
      .toThrow(/not a matrix file/);
  });
});

describe("requireColumns", () => {
  it("names the missing column and lists what exists", () => {
    const ds = parseDatasetCsv(DATASET, "scaling.csv");
    expect(() => requireColumns(ds, ["K", "fitted_slope"]))
      .toThrow(/missing required column "fitted_slope"/);
    expect(() => requireColumns(ds, ["fitted_slope"]))
      .toThrow(/has: K, spectral_norm, tail_bound, state_error/);
  });

  it("accepts datasets that carry every requested column", () => {
    const ds = parseDatasetCsv(DATASET);
    expect(() => requireColumns(ds, ["K", "tail_bound"])).not.toThrow();
  });
});
