import { readFileSync } from "fs";
import Papa from "papaparse";

/** A required column (or the table structure around it) is absent. */
export class MissingColumn extends Error {
  constructor(message: string) {
    super(message);
    this.name = "MissingColumn";
  }
}

/** Two inputs that must come from the same scenario carry different hashes. */
export class HashMismatch extends Error {
  constructor(message: string) {
    super(message);
    this.name = "HashMismatch";
  }
}

export interface Table {
  scenarioHash: string;
  columns: string[];
  data: Record<string, number[]>;
  rows: number;
  source: string;
}

const HASH_PREFIX = "# scenario_hash=";

/**
 * Parse a hash-stamped CSV table: a `# scenario_hash=<hex>` comment line,
 * a header row, then numeric rows.
 */
export function parseTableCsv(text: string, source = "<string>"): Table {
  const firstBreak = text.indexOf("\n");
  if (firstBreak < 0) {
    throw new MissingColumn(`${source}: empty or headerless table`);
  }
  const hashLine = text.slice(0, firstBreak).trim();
  if (!hashLine.startsWith(HASH_PREFIX)) {
    throw new MissingColumn(`${source}: missing scenario hash comment line`);
  }
  const scenarioHash = hashLine.slice(HASH_PREFIX.length).trim();

  const parsed = Papa.parse<string[]>(text.slice(firstBreak + 1), {
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new MissingColumn(`${source}: malformed CSV (${first.message})`);
  }
  const grid = parsed.data;
  if (grid.length === 0) {
    throw new MissingColumn(`${source}: table has no header row`);
  }
  const columns = grid[0].map((name) => name.trim());
  const data: Record<string, number[]> = {};
  for (const name of columns) data[name] = [];
  for (let r = 1; r < grid.length; r++) {
    const row = grid[r];
    if (row.length !== columns.length) {
      throw new MissingColumn(
        `${source}: row ${r + 2} has ${row.length} fields, expected ${columns.length}`,
      );
    }
    for (let c = 0; c < columns.length; c++) {
      const value = Number(row[c]);
      if (Number.isNaN(value)) {
        throw new MissingColumn(
          `${source}: non-numeric value ${JSON.stringify(row[c])} in column ${columns[c]}`,
        );
      }
      data[columns[c]].push(value);
    }
  }
  return { scenarioHash, columns, data, rows: grid.length - 1, source };
}

export function readTableFile(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new MissingColumn(`cannot read table ${path}: ${(err as Error).message}`);
  }
  return parseTableCsv(text, path);
}

export function readJsonFile(path: string): Record<string, unknown> {
  return JSON.parse(readFileSync(path, "utf8")) as Record<string, unknown>;
}

export function requireColumns(table: Table, names: string[]): void {
  const absent = names.filter((name) => !(name in table.data));
  if (absent.length > 0) {
    throw new MissingColumn(
      `${table.source}: missing column(s) ${absent.join(", ")}; ` +
        `found ${table.columns.join(", ")}`,
    );
  }
}

export function assertSameHash(tables: Table[]): string {
  const hash = tables[0].scenarioHash;
  for (const table of tables) {
    if (table.scenarioHash !== hash) {
      throw new HashMismatch(
        `${table.source} carries scenario hash ${table.scenarioHash}, ` +
          `expected ${hash} from ${tables[0].source}`,
      );
    }
  }
  return hash;
}

/** Every value equals the first within tol. */
export function seriesIsFlat(values: number[], tol = 0.0): boolean {
  return values.every((v) => Math.abs(v - values[0]) <= tol);
}

export function seriesIsNonDecreasing(values: number[], tol = 0.0): boolean {
  for (let i = 1; i < values.length; i++) {
    if (values[i] < values[i - 1] - tol) return false;
  }
  return true;
}
