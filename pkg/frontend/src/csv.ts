/**
 * Minimal numeric CSV handling for the simulation output schemas.
 */

export interface Table {
  header: string[];
  rows: number[][];
}

export function parseCsv(text: string, source = "<csv>"): Table {
  const lines = text
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error(`empty CSV: ${source}`);
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line, k) => {
    const cells = line.split(",").map(Number);
    if (cells.length !== header.length || cells.some((v) => Number.isNaN(v))) {
      throw new Error(`malformed CSV row ${k + 2} in ${source}`);
    }
    return cells;
  });
  if (rows.length === 0) {
    throw new Error(`empty CSV (header only): ${source}`);
  }
  return { header, rows };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column "${name}"`);
  }
  return idx;
}

export function column(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((r) => r[idx]);
}

export function requireColumns(table: Table, names: string[]): void {
  for (const name of names) {
    columnIndex(table, name);
  }
}

/** Count consecutive columns named `${prefix}1`, `${prefix}2`, ... */
export function prefixedCount(table: Table, prefix: string): number {
  let n = 0;
  while (table.header.includes(`${prefix}${n + 1}`)) {
    n += 1;
  }
  return n;
}
