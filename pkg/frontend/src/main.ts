#!/usr/bin/env node
/**
 * Render one figure from a simulation CSV.
 *
 * Usage:
 *   node dist/main.js --in out/sim.csv   --kind field-top     --out fig_field_top.svg
 *   node dist/main.js --in out/sim.csv   --kind field-surface --out fig_field_side.svg
 *   node dist/main.js --in out/sim.csv   --kind error         --out fig_error.svg
 *   node dist/main.js --in out/power.csv --kind power         --out fig_power.svg
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { parseCsv } from "./csv.js";
import { FigureKind, build } from "./figures.js";

const KINDS: FigureKind[] = ["field-top", "field-surface", "error", "power"];

function parseArgs(argv: string[]): { input: string; output: string; kind: FigureKind } {
  const opts = new Map<string, string>();
  for (let k = 0; k < argv.length; k += 2) {
    const flag = argv[k];
    const value = argv[k + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`bad argument pair near "${flag}"`);
    }
    opts.set(flag.slice(2), value);
  }
  const input = opts.get("in");
  const output = opts.get("out");
  const kind = opts.get("kind") as FigureKind | undefined;
  if (!input || !output || !kind) {
    throw new Error("required flags: --in <csv> --kind <kind> --out <svg>");
  }
  if (!KINDS.includes(kind)) {
    throw new Error(`--kind must be one of ${KINDS.join(", ")}`);
  }
  return { input, output, kind };
}

export function main(argv: string[]): number {
  try {
    const { input, output, kind } = parseArgs(argv);
    const table = parseCsv(readFileSync(input, "utf-8"), input);
    const svg = build(kind, table);
    writeFileSync(output, svg);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (import.meta.url === pathToFileURL(process.argv[1] ?? "").href) {
  process.exit(main(process.argv.slice(2)));
}
