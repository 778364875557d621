import { existsSync, mkdtempSync, statSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";

import { runCli } from "../src/cli.js";

const FIXTURES = fileURLToPath(new URL("fixtures", import.meta.url));

describe("runCli", () => {
  it("renders a figure from a scenario directory", () => {
    const out = join(mkdtempSync(join(tmpdir(), "cli-")), "fig.svg");
    const code = runCli(["render-figure", join(FIXTURES, "fig2"), "--out", out]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(statSync(out).size).toBeGreaterThan(2000);
  });

  it("renders a density snapshot", () => {
    const out = join(mkdtempSync(join(tmpdir(), "cli-")), "density.svg");
    const code = runCli([
      "render-density",
      join(FIXTURES, "constant", "density_t1p5708.csv"),
      join(FIXTURES, "constant", "density_t1p5708.json"),
      "--out",
      out,
    ]);
    expect(code).toBe(0);
    expect(statSync(out).size).toBeGreaterThan(2000);
  });

  it("fails cleanly on a directory without tables", () => {
    const dir = mkdtempSync(join(tmpdir(), "cli-"));
    const code = runCli(["render-figure", dir, "--out", join(dir, "fig.svg")]);
    expect(code).toBe(1);
  });

  it("fails cleanly on an unknown command", () => {
    expect(runCli(["render-nothing"])).toBe(1);
  });
});
