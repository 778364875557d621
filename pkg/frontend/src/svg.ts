/** Minimal deterministic SVG building blocks shared by both renderers. */

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (min === max) {
    const pad = Math.max(Math.abs(min) * 0.05, 0.5);
    return { min: min - pad, max: max + pad };
  }
  return { min, max };
}

export type Scale = (value: number) => number;

export function linearScale(domain: Extent, rangeMin: number, rangeMax: number): Scale {
  const span = domain.max - domain.min;
  return (value) => rangeMin + ((value - domain.min) / span) * (rangeMax - rangeMin);
}

export function escapeText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function fmt(value: number): string {
  const rounded = Number(value.toFixed(2));
  return String(rounded);
}

export function polylinePath(xs: number[], ys: number[], sx: Scale, sy: Scale): string {
  const parts: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    parts.push(`${i === 0 ? "M" : "L"}${fmt(sx(xs[i]))} ${fmt(sy(ys[i]))}`);
  }
  return parts.join(" ");
}

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

function ticks(domain: Extent, count: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(domain.min + ((domain.max - domain.min) * i) / (count - 1));
  }
  return out;
}

function tickLabel(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 0.01 && magnitude < 1000) return String(Number(value.toPrecision(3)));
  return value.toExponential(1);
}

export interface LinePanelSpec {
  box: PanelBox;
  title: string;
  xLabel: string;
  yLabel: string;
  x: number[];
  y: number[];
  stroke?: string;
}

/** A framed 2D panel: box, 4 ticks per axis, labels and one series. */
export function linePanel(spec: LinePanelSpec): string {
  const { box } = spec;
  const margin = { left: 46, right: 10, top: 24, bottom: 34 };
  const inner: PanelBox = {
    x: box.x + margin.left,
    y: box.y + margin.top,
    width: box.width - margin.left - margin.right,
    height: box.height - margin.top - margin.bottom,
  };
  const dx = extentOf(spec.x);
  const dy = extentOf(spec.y);
  const sx = linearScale(dx, inner.x, inner.x + inner.width);
  const sy = linearScale(dy, inner.y + inner.height, inner.y);

  const bits: string[] = [`<g class="panel">`];
  bits.push(
    `<rect x="${inner.x}" y="${inner.y}" width="${inner.width}" height="${inner.height}" fill="white" stroke="#444"/>`,
  );
  bits.push(
    `<text x="${box.x + box.width / 2}" y="${box.y + 14}" text-anchor="middle" font-size="13" font-family="sans-serif">${escapeText(spec.title)}</text>`,
  );
  for (const t of ticks(dx, 4)) {
    const px = fmt(sx(t));
    bits.push(
      `<line x1="${px}" y1="${inner.y + inner.height}" x2="${px}" y2="${inner.y + inner.height + 4}" stroke="#444"/>`,
      `<text x="${px}" y="${inner.y + inner.height + 16}" text-anchor="middle" font-size="9" font-family="sans-serif">${tickLabel(t)}</text>`,
    );
  }
  for (const t of ticks(dy, 4)) {
    const py = fmt(sy(t));
    bits.push(
      `<line x1="${inner.x - 4}" y1="${py}" x2="${inner.x}" y2="${py}" stroke="#444"/>`,
      `<text x="${inner.x - 6}" y="${Number(py) + 3}" text-anchor="end" font-size="9" font-family="sans-serif">${tickLabel(t)}</text>`,
    );
  }
  bits.push(
    `<text x="${box.x + box.width / 2}" y="${box.y + box.height - 4}" text-anchor="middle" font-size="11" font-family="sans-serif">${escapeText(spec.xLabel)}</text>`,
  );
  bits.push(
    `<text x="${box.x + 12}" y="${inner.y + inner.height / 2}" text-anchor="middle" font-size="11" font-family="sans-serif" transform="rotate(-90 ${box.x + 12} ${inner.y + inner.height / 2})">${escapeText(spec.yLabel)}</text>`,
  );
  bits.push(
    `<path d="${polylinePath(spec.x, spec.y, sx, sy)}" fill="none" stroke="${spec.stroke ?? "#1f6fb2"}" stroke-width="1.4"/>`,
  );
  bits.push("</g>");
  return bits.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>\n` +
    `${body}\n</svg>\n`
  );
}

const VIRIDIS: Array<[number, number, number]> = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

/** Map a value in [0, 1] onto a perceptually ordered color ramp. */
export function colorRamp(fraction: number): string {
  const f = Math.min(1, Math.max(0, fraction));
  const pos = f * (VIRIDIS.length - 1);
  const i = Math.min(VIRIDIS.length - 2, Math.floor(pos));
  const w = pos - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * w);
  const [r1, g1, b1] = VIRIDIS[i];
  const [r2, g2, b2] = VIRIDIS[i + 1];
  return `rgb(${mix(r1, r2)},${mix(g1, g2)},${mix(b1, b2)})`;
}
