export {
  HashMismatch,
  MissingColumn,
  assertSameHash,
  parseTableCsv,
  readJsonFile,
  readTableFile,
  requireColumns,
  seriesIsFlat,
  seriesIsNonDecreasing,
} from "./tables.js";
export type { Table } from "./tables.js";
export { colorRamp, extentOf, linearScale, linePanel, svgDocument } from "./svg.js";
export type { Extent, PanelBox } from "./svg.js";
export { figureSvg, loadFigureData, renderFigure } from "./figure.js";
export type { FigureData } from "./figure.js";
export { densitySvg, loadDensityData, renderDensity } from "./density.js";
export type { DensityData } from "./density.js";
export { runCli } from "./cli.js";
