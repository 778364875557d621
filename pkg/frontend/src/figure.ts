import { join } from "path";

import {
  assertSameHash,
  readTableFile,
  requireColumns,
  type Table,
} from "./tables.js";
import {
  escapeText,
  extentOf,
  linearScale,
  linePanel,
  polylinePath,
  svgDocument,
  type PanelBox,
} from "./svg.js";

export interface FigureData {
  scenarioHash: string;
  t: number[];
  rho: number[];
  rhoDot: number[];
  omega: number[];
  centreT: number[];
  xC: number[];
  pC: number[];
}

/**
 * Load the auxiliary-solution and centre-trajectory tables of one scenario
 * directory, refusing mixed scenario hashes.
 */
export function loadFigureData(dir: string): FigureData {
  const ermakov: Table = readTableFile(join(dir, "ermakov.csv"));
  requireColumns(ermakov, ["t", "rho", "rho_dot", "omega_rho"]);
  const centre: Table = readTableFile(join(dir, "centre.csv"));
  requireColumns(centre, ["t", "x_c", "p_c"]);
  const scenarioHash = assertSameHash([ermakov, centre]);
  return {
    scenarioHash,
    t: ermakov.data.t,
    rho: ermakov.data.rho,
    rhoDot: ermakov.data.rho_dot,
    omega: ermakov.data.omega_rho,
    centreT: centre.data.t,
    xC: centre.data.x_c,
    pC: centre.data.p_c,
  };
}

/**
 * Axonometric projection of the centre curve (x_c, p_c, t): each axis is
 * normalized to [0, 1], time recedes along a fixed oblique direction.
 */
function trajectoryPanel(data: FigureData, box: PanelBox): string {
  const ex = extentOf(data.xC);
  const ep = extentOf(data.pC);
  const et = extentOf(data.centreT);
  const nx = linearScale(ex, 0, 1);
  const np = linearScale(ep, 0, 1);
  const nt = linearScale(et, 0, 1);

  const depth = { u: 0.42, v: 0.28 };
  const us: number[] = [];
  const vs: number[] = [];
  for (let i = 0; i < data.centreT.length; i++) {
    const z = nt(data.centreT[i]);
    us.push(nx(data.xC[i]) + depth.u * z);
    vs.push(np(data.pC[i]) + depth.v * z);
  }

  const margin = 34;
  const inner: PanelBox = {
    x: box.x + margin,
    y: box.y + margin,
    width: box.width - 2 * margin,
    height: box.height - 2 * margin,
  };
  const su = linearScale({ min: 0, max: 1 + depth.u }, inner.x, inner.x + inner.width);
  const sv = linearScale({ min: 0, max: 1 + depth.v }, inner.y + inner.height, inner.y);

  const origin = { u: su(0), v: sv(0) };
  const axes = [
    { u: su(1), v: sv(0), label: "x_c" },
    { u: su(0), v: sv(1), label: "p_c" },
    { u: su(depth.u), v: sv(depth.v), label: "t" },
  ];
  const bits: string[] = [`<g class="panel">`];
  bits.push(
    `<text x="${box.x + box.width / 2}" y="${box.y + 14}" text-anchor="middle" font-size="13" font-family="sans-serif">phase-space centre</text>`,
  );
  for (const axis of axes) {
    bits.push(
      `<line x1="${origin.u}" y1="${origin.v}" x2="${axis.u}" y2="${axis.v}" stroke="#888" stroke-dasharray="3 3"/>`,
      `<text x="${axis.u}" y="${axis.v - 4}" font-size="10" font-family="sans-serif">${escapeText(axis.label)}</text>`,
    );
  }
  bits.push(
    `<path d="${polylinePath(us, vs, su, sv)}" fill="none" stroke="#b2421f" stroke-width="1.4"/>`,
  );
  const endU = su(us[us.length - 1]);
  const endV = sv(vs[vs.length - 1]);
  bits.push(
    `<circle cx="${su(us[0])}" cy="${sv(vs[0])}" r="3" fill="#1f6fb2"/>`,
    `<circle cx="${endU}" cy="${endV}" r="3" fill="#b2421f"/>`,
  );
  bits.push("</g>");
  return bits.join("\n");
}

/** Render the four panels into a standalone SVG string. */
export function renderFigure(data: FigureData): string {
  const panelW = 360;
  const panelH = 260;
  const boxes: PanelBox[] = [
    { x: 0, y: 0, width: panelW, height: panelH },
    { x: panelW, y: 0, width: panelW, height: panelH },
    { x: 0, y: panelH, width: panelW, height: panelH },
    { x: panelW, y: panelH, width: panelW, height: panelH },
  ];
  const parts = [
    linePanel({
      box: boxes[0],
      title: "auxiliary amplitude",
      xLabel: "t",
      yLabel: "rho",
      x: data.t,
      y: data.rho,
    }),
    linePanel({
      box: boxes[1],
      title: "amplitude rate",
      xLabel: "t",
      yLabel: "d rho / dt",
      x: data.t,
      y: data.rhoDot,
    }),
    linePanel({
      box: boxes[2],
      title: "accumulated phase",
      xLabel: "t",
      yLabel: "omega",
      x: data.t,
      y: data.omega,
    }),
    trajectoryPanel(data, boxes[3]),
    `<text x="${2 * panelW - 6}" y="${2 * panelH - 6}" text-anchor="end" font-size="9" ` +
      `font-family="sans-serif" fill="#999">scenario ${escapeText(data.scenarioHash)}</text>`,
  ];
  return svgDocument(2 * panelW, 2 * panelH, parts.join("\n"));
}

export function figureSvg(dir: string): string {
  return renderFigure(loadFigureData(dir));
}
