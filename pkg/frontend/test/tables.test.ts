import { readFileSync } from "fs";
import { join } from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";

import {
  HashMismatch,
  MissingColumn,
  assertSameHash,
  parseTableCsv,
  readTableFile,
  requireColumns,
  seriesIsFlat,
  seriesIsNonDecreasing,
} from "../src/tables.js";

const FIXTURES = fileURLToPath(new URL("fixtures", import.meta.url));
const ERMAKOV = join(FIXTURES, "constant", "ermakov.csv");

describe("parseTableCsv", () => {
  it("reads the hash stamp and the columns", () => {
    const table = parseTableCsv(readFileSync(ERMAKOV, "utf8"), ERMAKOV);
    expect(table.scenarioHash).toMatch(/^[0-9a-f]{12}$/);
    expect(table.columns).toEqual(["t", "rho", "rho_dot", "omega_rho"]);
    expect(table.rows).toBeGreaterThan(100);
    expect(table.data.t[0]).toBe(0);
    expect(table.data.rho[0]).toBe(1);
  });

  it("rejects input without the hash stamp", () => {
    expect(() => parseTableCsv("t,rho\n0,1\n", "raw")).toThrow(MissingColumn);
  });

  it("rejects empty input", () => {
    expect(() => parseTableCsv("", "empty")).toThrow(MissingColumn);
  });

  it("rejects non-numeric cells", () => {
    const text = "# scenario_hash=abcdefabcdef\nt,rho\n0,oops\n";
    expect(() => parseTableCsv(text, "bad")).toThrow(MissingColumn);
  });

  it("rejects ragged rows", () => {
    const text = "# scenario_hash=abcdefabcdef\nt,rho\n0,1\n1\n";
    expect(() => parseTableCsv(text, "ragged")).toThrow(MissingColumn);
  });
});

describe("readTableFile", () => {
  it("folds a missing file into MissingColumn", () => {
    expect(() => readTableFile(join(FIXTURES, "nope.csv"))).toThrow(MissingColumn);
  });
});

describe("requireColumns", () => {
  it("names the absent column", () => {
    const table = readTableFile(ERMAKOV);
    expect(() => requireColumns(table, ["t", "gamma"])).toThrow(/gamma/);
    expect(() => requireColumns(table, ["t", "gamma"])).toThrow(MissingColumn);
    expect(requireColumns(table, ["t", "rho"])).toBeUndefined();
  });
});

describe("assertSameHash", () => {
  it("accepts matching hashes and rejects different ones", () => {
    const a = readTableFile(ERMAKOV);
    const b = readTableFile(join(FIXTURES, "fig2", "ermakov.csv"));
    expect(assertSameHash([a, a])).toBe(a.scenarioHash);
    expect(() => assertSameHash([a, b])).toThrow(HashMismatch);
  });
});

describe("series helpers", () => {
  it("classify flat and monotone series", () => {
    expect(seriesIsFlat([1, 1, 1 + 1e-13], 1e-9)).toBe(true);
    expect(seriesIsFlat([1, 2], 1e-9)).toBe(false);
    expect(seriesIsNonDecreasing([0, 0.5, 0.5, 1])).toBe(true);
    expect(seriesIsNonDecreasing([0, 0.5, 0.4])).toBe(false);
  });
});
