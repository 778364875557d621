import {
  HashMismatch,
  MissingColumn,
  readJsonFile,
  readTableFile,
} from "./tables.js";
import { colorRamp, escapeText, svgDocument } from "./svg.js";

export interface DensityData {
  scenarioHash: string;
  t: number;
  mass: number;
  x: number[];
  p: number[];
  /** values[i][j] is the density at (x[i], p[j]). */
  values: number[][];
  max: number;
  argmax: { x: number; p: number };
}

/**
 * Load one `evolve` snapshot: the long-format grid CSV (x, p, gamma) plus
 * its metadata JSON, cross-checking the scenario hashes.
 */
export function loadDensityData(gridCsv: string, metaJson: string): DensityData {
  const table = readTableFile(gridCsv);
  requireGrid(table.data, table.source);
  const meta = readJsonFile(metaJson);
  const metaHash = String(meta.scenario_hash ?? "");
  if (metaHash !== table.scenarioHash) {
    throw new HashMismatch(
      `${metaJson} carries scenario hash ${metaHash}, ` +
        `grid ${gridCsv} carries ${table.scenarioHash}`,
    );
  }
  const nX = Number(meta.n_x);
  const nP = Number(meta.n_p);
  if (!Number.isInteger(nX) || !Number.isInteger(nP) || nX < 2 || nP < 2) {
    throw new MissingColumn(`${metaJson}: invalid grid shape n_x=${meta.n_x}, n_p=${meta.n_p}`);
  }
  if (table.rows !== nX * nP) {
    throw new MissingColumn(
      `${gridCsv}: ${table.rows} rows do not match n_x*n_p = ${nX * nP}`,
    );
  }

  const x: number[] = [];
  const p: number[] = [];
  for (let i = 0; i < nX; i++) x.push(table.data.x[i * nP]);
  for (let j = 0; j < nP; j++) p.push(table.data.p[j]);

  const values: number[][] = [];
  let max = -Infinity;
  let argmax = { x: x[0], p: p[0] };
  for (let i = 0; i < nX; i++) {
    const row: number[] = [];
    for (let j = 0; j < nP; j++) {
      const v = table.data.gamma[i * nP + j];
      row.push(v);
      if (v > max) {
        max = v;
        argmax = { x: x[i], p: p[j] };
      }
    }
    values.push(row);
  }
  return {
    scenarioHash: table.scenarioHash,
    t: Number(meta.t ?? NaN),
    mass: Number(meta.mass ?? NaN),
    x,
    p,
    values,
    max,
    argmax,
  };
}

function requireGrid(data: Record<string, number[]>, source: string): void {
  const absent = ["x", "p", "gamma"].filter((name) => !(name in data));
  if (absent.length > 0) {
    throw new MissingColumn(`${source}: missing column(s) ${absent.join(", ")}`);
  }
}

/**
 * Heatmap of the snapshot, colors normalized to the grid maximum, with a
 * vertical colorbar.  Dense grids are strided down to at most maxCells
 * cells per axis before rasterizing into rects.
 */
export function renderDensity(data: DensityData, maxCells = 128): string {
  const plotSize = 460;
  const barWidth = 46;
  const margin = { left: 52, right: 16 + barWidth + 44, top: 34, bottom: 44 };
  const width = plotSize + margin.left + margin.right;
  const height = plotSize + margin.top + margin.bottom;

  const strideX = Math.max(1, Math.ceil(data.x.length / maxCells));
  const strideP = Math.max(1, Math.ceil(data.p.length / maxCells));
  const nX = Math.floor((data.x.length - 1) / strideX) + 1;
  const nP = Math.floor((data.p.length - 1) / strideP) + 1;
  const cellW = plotSize / nX;
  const cellH = plotSize / nP;

  const bits: string[] = [];
  bits.push(
    `<text x="${margin.left + plotSize / 2}" y="20" text-anchor="middle" font-size="13" ` +
      `font-family="sans-serif">density at t = ${escapeText(String(data.t))} ` +
      `(mass ${data.mass.toPrecision(6)})</text>`,
  );
  bits.push(`<g class="heatmap">`);
  for (let a = 0; a < nX; a++) {
    const i = a * strideX;
    for (let b = 0; b < nP; b++) {
      const j = b * strideP;
      const fraction = data.max > 0 ? data.values[i][j] / data.max : 0;
      const px = margin.left + a * cellW;
      const py = margin.top + plotSize - (b + 1) * cellH;
      bits.push(
        `<rect x="${px.toFixed(2)}" y="${py.toFixed(2)}" width="${(cellW + 0.5).toFixed(2)}" ` +
          `height="${(cellH + 0.5).toFixed(2)}" fill="${colorRamp(fraction)}"/>`,
      );
    }
  }
  bits.push("</g>");

  const xMin = data.x[0];
  const xMax = data.x[data.x.length - 1];
  const pMin = data.p[0];
  const pMax = data.p[data.p.length - 1];
  bits.push(
    `<rect x="${margin.left}" y="${margin.top}" width="${plotSize}" height="${plotSize}" fill="none" stroke="#444"/>`,
    `<text x="${margin.left}" y="${margin.top + plotSize + 16}" font-size="9" font-family="sans-serif">${xMin.toPrecision(3)}</text>`,
    `<text x="${margin.left + plotSize}" y="${margin.top + plotSize + 16}" text-anchor="end" font-size="9" font-family="sans-serif">${xMax.toPrecision(3)}</text>`,
    `<text x="${margin.left + plotSize / 2}" y="${margin.top + plotSize + 32}" text-anchor="middle" font-size="11" font-family="sans-serif">x</text>`,
    `<text x="${margin.left - 6}" y="${margin.top + plotSize}" text-anchor="end" font-size="9" font-family="sans-serif">${pMin.toPrecision(3)}</text>`,
    `<text x="${margin.left - 6}" y="${margin.top + 8}" text-anchor="end" font-size="9" font-family="sans-serif">${pMax.toPrecision(3)}</text>`,
    `<text x="${margin.left - 32}" y="${margin.top + plotSize / 2}" text-anchor="middle" font-size="11" font-family="sans-serif" transform="rotate(-90 ${margin.left - 32} ${margin.top + plotSize / 2})">p</text>`,
  );

  const barX = margin.left + plotSize + 16;
  const steps = 24;
  const stepH = plotSize / steps;
  bits.push(`<g class="colorbar">`);
  for (let s = 0; s < steps; s++) {
    const fraction = (s + 0.5) / steps;
    const py = margin.top + plotSize - (s + 1) * stepH;
    bits.push(
      `<rect x="${barX}" y="${py.toFixed(2)}" width="${barWidth}" height="${(stepH + 0.5).toFixed(2)}" fill="${colorRamp(fraction)}"/>`,
    );
  }
  bits.push(
    `<rect x="${barX}" y="${margin.top}" width="${barWidth}" height="${plotSize}" fill="none" stroke="#444"/>`,
    `<text x="${barX + barWidth + 4}" y="${margin.top + 8}" font-size="9" font-family="sans-serif">${data.max.toPrecision(3)}</text>`,
    `<text x="${barX + barWidth + 4}" y="${margin.top + plotSize}" font-size="9" font-family="sans-serif">0</text>`,
    "</g>",
  );
  bits.push(
    `<text x="${width - 6}" y="${height - 6}" text-anchor="end" font-size="9" ` +
      `font-family="sans-serif" fill="#999">scenario ${escapeText(data.scenarioHash)}</text>`,
  );
  return svgDocument(width, height, bits.join("\n"));
}

export function densitySvg(gridCsv: string, metaJson: string): string {
  return renderDensity(loadDensityData(gridCsv, metaJson));
}
