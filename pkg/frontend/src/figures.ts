/**
 * Figure builders for the simulation CSV schemas.
 *
 * field-top      space-time voltage heatmap; simulated values inside the
 *                moving segment, the analytic solution (recomputed here
 *                from its closed form) faded outside, boundary curves on
 *                top.
 * field-surface  waterfall of voltage profiles over time, same masking.
 * error          |simulated - analytic| heatmap inside the segment only.
 * power          energy rate vs. port power, with their absolute
 *                mismatch on a log axis below.
 */

import { Table, column, prefixedCount, requireColumns } from "./csv.js";
import { errorColor, fieldColor } from "./colormap.js";
import {
  Frame,
  axes,
  document,
  fmt,
  makeFrame,
  polyline,
  rect,
  text,
  tickLabel,
  xPix,
  yPix,
} from "./svg.js";

export function analyticVoltage(t: number, s: number): number {
  return Math.sin(Math.max(0, t - s));
}

export interface SimData {
  t: number[];
  a: number[];
  b: number[];
  nElements: number;
  /** physical-coordinate voltage at the element midpoints, per row */
  voltageMid: number[][];
}

export interface Cell {
  row: number;
  sLo: number;
  sHi: number;
  value: number;
}

export function extractSim(table: Table): SimData {
  requireColumns(table, ["t", "a", "b", "e_1"]);
  const nEffort = prefixedCount(table, "e_");
  if (nEffort < 4 || nEffort % 2 !== 0) {
    throw new Error(`effort column count ${nEffort} is not a node grid`);
  }
  const nNodes = nEffort / 2;
  const N = nNodes - 1;
  const t = column(table, "t");
  const a = column(table, "a");
  const b = column(table, "b");
  const eBase = table.header.indexOf("e_1");
  const voltageMid = table.rows.map((row, r) => {
    const sw = Math.sqrt(b[r] - a[r]);
    const vals: number[] = [];
    for (let i = 0; i < N; i++) {
      const vHat = 0.5 * (row[eBase + 2 * i] + row[eBase + 2 * (i + 1)]);
      vals.push(vHat / sw);
    }
    return vals;
  });
  return { t, a, b, nElements: N, voltageMid };
}

/** Deterministic subsample of row indices, at most `limit` of them. */
export function sampleRows(count: number, limit: number): number[] {
  if (count <= limit) {
    return Array.from({ length: count }, (_, k) => k);
  }
  const out: number[] = [];
  for (let k = 0; k < limit; k++) {
    const idx = Math.round((k * (count - 1)) / (limit - 1));
    if (out.length === 0 || idx !== out[out.length - 1]) {
      out.push(idx);
    }
  }
  return out;
}

/** Simulated-field cells, one per element, clipped to the moving segment. */
export function domainCells(sim: SimData, rows: number[]): Cell[] {
  const cells: Cell[] = [];
  for (const r of rows) {
    const w = sim.b[r] - sim.a[r];
    for (let i = 0; i < sim.nElements; i++) {
      cells.push({
        row: r,
        sLo: sim.a[r] + (w * i) / sim.nElements,
        sHi: sim.a[r] + (w * (i + 1)) / sim.nElements,
        value: sim.voltageMid[r][i],
      });
    }
  }
  return cells;
}

function timeEdges(sim: SimData, rows: number[], r: number): [number, number] {
  const k = rows.indexOf(r);
  const tLo = k === 0 ? sim.t[r] : 0.5 * (sim.t[rows[k - 1]] + sim.t[r]);
  const tHi = k === rows.length - 1 ? sim.t[r] : 0.5 * (sim.t[r] + sim.t[rows[k + 1]]);
  return [tLo, tHi];
}

const BACKGROUND_S_CELLS = 48;
const MAX_TIME_COLUMNS = 300;

export function buildFieldTop(table: Table): string {
  const sim = extractSim(table);
  const rows = sampleRows(sim.t.length, MAX_TIME_COLUMNS);
  const frame = makeFrame(sim.t[0], sim.t[sim.t.length - 1], 0.0, 1.0);

  const cells = domainCells(sim, rows);
  let lo = Infinity;
  let hi = -Infinity;
  for (const c of cells) {
    lo = Math.min(lo, c.value);
    hi = Math.max(hi, c.value);
  }
  for (const r of rows) {
    for (let k = 0; k < BACKGROUND_S_CELLS; k++) {
      const v = analyticVoltage(sim.t[r], (k + 0.5) / BACKGROUND_S_CELLS);
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }

  const parts: string[] = [];
  parts.push('<g class="background-field" opacity="0.32">');
  for (const r of rows) {
    const [tLo, tHi] = timeEdges(sim, rows, r);
    const x = xPix(frame, tLo);
    const wPix = xPix(frame, tHi) - x;
    for (let k = 0; k < BACKGROUND_S_CELLS; k++) {
      const sLo = k / BACKGROUND_S_CELLS;
      const sHi = (k + 1) / BACKGROUND_S_CELLS;
      const v = analyticVoltage(sim.t[r], 0.5 * (sLo + sHi));
      const y = yPix(frame, sHi);
      parts.push(rect(x, y, wPix, yPix(frame, sLo) - y, fieldColor(v, lo, hi)));
    }
  }
  parts.push("</g>");

  parts.push('<g class="domain-field">');
  for (const c of cells) {
    const [tLo, tHi] = timeEdges(sim, rows, c.row);
    const x = xPix(frame, tLo);
    const y = yPix(frame, c.sHi);
    parts.push(
      rect(x, y, xPix(frame, tHi) - x, yPix(frame, c.sLo) - y, fieldColor(c.value, lo, hi)),
    );
  }
  parts.push("</g>");

  parts.push(boundaryCurves(sim, frame));
  parts.push(axes(frame, "time (s)", "position (m)"));
  parts.push(
    text(frame.left, 20, "Voltage: simulated inside the moving segment, analytic outside (faded)", 'font-size="13"'),
  );
  parts.push(
    text(frame.width - frame.right, 20, `range [${tickLabel(lo)}, ${tickLabel(hi)}] V`, 'font-size="11" text-anchor="end"'),
  );
  return document(frame.width, frame.height, parts.join("\n"));
}

function boundaryCurves(sim: SimData, frame: Frame): string {
  const aPts: [number, number][] = sim.t.map((tv, r) => [xPix(frame, tv), yPix(frame, sim.a[r])]);
  const bPts: [number, number][] = sim.t.map((tv, r) => [xPix(frame, tv), yPix(frame, sim.b[r])]);
  return (
    '<g class="boundaries">' +
    polyline(aPts, 'stroke="#d62728" stroke-width="1.5"') +
    polyline(bPts, 'stroke="#d62728" stroke-width="1.5"') +
    "</g>"
  );
}

const SURFACE_PROFILES = 12;
const SURFACE_OFFSET = 0.9;

export function buildFieldSurface(table: Table): string {
  const sim = extractSim(table);
  const rows = sampleRows(sim.t.length, SURFACE_PROFILES);
  const yTop = SURFACE_OFFSET * (rows.length - 1) + 1.3;
  const frame = makeFrame(0.0, 1.0, -1.3, yTop, { height: 560 });

  const parts: string[] = [];
  rows.forEach((r, k) => {
    const off = SURFACE_OFFSET * (rows.length - 1 - k);
    const analytic: [number, number][] = [];
    for (let j = 0; j <= 96; j++) {
      const s = j / 96;
      analytic.push([xPix(frame, s), yPix(frame, off + analyticVoltage(sim.t[r], s))]);
    }
    parts.push(polyline(analytic, 'stroke="#9ecae1" stroke-width="1" class="analytic-profile"'));
    const inside: [number, number][] = [];
    const w = sim.b[r] - sim.a[r];
    for (let i = 0; i < sim.nElements; i++) {
      const sMid = sim.a[r] + (w * (i + 0.5)) / sim.nElements;
      inside.push([xPix(frame, sMid), yPix(frame, off + sim.voltageMid[r][i])]);
    }
    parts.push(polyline(inside, 'stroke="#1f77b4" stroke-width="1.8" class="domain-profile"'));
    for (const sEdge of [sim.a[r], sim.b[r]]) {
      const px = xPix(frame, sEdge);
      parts.push(
        polyline(
          [[px, yPix(frame, off) - 5], [px, yPix(frame, off) + 5]],
          'stroke="#d62728" stroke-width="1.3"',
        ),
      );
    }
    parts.push(
      text(frame.width - frame.right + 2, yPix(frame, off), `t=${sim.t[r].toFixed(1)}`, 'font-size="9"'),
    );
  });
  parts.push(axes(frame, "position (m)", "voltage, profiles offset by time", {
    yTickFormat: () => "",
  }));
  parts.push(
    text(frame.left, 20, "Voltage profiles over time (bright: simulated segment, light: analytic)", 'font-size="13"'),
  );
  return document(frame.width, frame.height, parts.join("\n"));
}

export function buildError(table: Table): string {
  const sim = extractSim(table);
  const rows = sampleRows(sim.t.length, MAX_TIME_COLUMNS);
  const frame = makeFrame(sim.t[0], sim.t[sim.t.length - 1], 0.0, 1.0);

  const cells = domainCells(sim, rows).map((c) => ({
    ...c,
    value: Math.abs(c.value - analyticVoltage(sim.t[c.row], 0.5 * (c.sLo + c.sHi))),
  }));
  const hi = cells.reduce((m, c) => Math.max(m, c.value), 0);

  const parts: string[] = [];
  parts.push('<g class="error-field">');
  for (const c of cells) {
    const [tLo, tHi] = timeEdges(sim, rows, c.row);
    const x = xPix(frame, tLo);
    const y = yPix(frame, c.sHi);
    parts.push(
      rect(x, y, xPix(frame, tHi) - x, yPix(frame, c.sLo) - y, errorColor(c.value, hi)),
    );
  }
  parts.push("</g>");
  parts.push(boundaryCurves(sim, frame));
  parts.push(axes(frame, "time (s)", "position (m)"));
  parts.push(
    text(frame.left, 20, "Absolute voltage error inside the moving segment", 'font-size="13"'),
  );
  parts.push(
    text(frame.width - frame.right, 20, `max ${hi.toExponential(2)} V`, 'font-size="11" text-anchor="end"'),
  );
  return document(frame.width, frame.height, parts.join("\n"));
}

export function buildPower(table: Table): string {
  requireColumns(table, ["t", "dH_dt", "port_power", "residual"]);
  const t = column(table, "t");
  const dH = column(table, "dH_dt");
  const pp = column(table, "port_power");
  const res = column(table, "residual");

  const width = 720;
  const height = 560;
  const span = (vals: number[]) => {
    let lo = Math.min(...vals);
    let hi = Math.max(...vals);
    const pad = 0.05 * (hi - lo || 1);
    return [lo - pad, hi + pad] as [number, number];
  };
  const [pLo, pHi] = span([...dH, ...pp]);
  const top = makeFrame(t[0], t[t.length - 1], pLo, pHi, {
    height: 290,
    bottom: 36,
  });
  const logRes = res.map((v) => Math.log10(Math.max(v, 1e-18)));
  const [rLo, rHi] = span(logRes);
  const bottom = makeFrame(t[0], t[t.length - 1], rLo, rHi, {
    height: 230,
    top: 26,
    bottom: 46,
  });

  const lineOf = (frame: Frame, ys: number[], attrs: string, yOff = 0): string =>
    polyline(
      t.map((tv, k) => [xPix(frame, tv), yOff + yPix(frame, ys[k])] as [number, number]),
      attrs,
    );

  const parts: string[] = [];
  parts.push('<g class="panel" id="power-panel">');
  parts.push(lineOf(top, pp, 'stroke="#111111" stroke-width="1.6" stroke-dasharray="6,4"'));
  parts.push(lineOf(top, dH, 'stroke="#1f77b4" stroke-width="1.4"'));
  parts.push(axes(top, "", "power (W)"));
  parts.push(text(top.left, 20, "Energy rate (solid) vs. boundary port power (dashed)", 'font-size="13"'));
  parts.push("</g>");

  const yShift = 290;
  parts.push(`<g class="panel" id="residual-panel" transform="translate(0 ${yShift})">`);
  parts.push(lineOf(bottom, logRes, 'stroke="#d62728" stroke-width="1.3"'));
  parts.push(axes(bottom, "time (s)", "log10 |mismatch| (W)"));
  parts.push("</g>");
  return document(width, height, parts.join("\n"));
}

export type FigureKind = "field-top" | "field-surface" | "error" | "power";

export function build(kind: FigureKind, table: Table): string {
  switch (kind) {
    case "field-top":
      return buildFieldTop(table);
    case "field-surface":
      return buildFieldSurface(table);
    case "error":
      return buildError(table);
    case "power":
      return buildPower(table);
    default:
      throw new Error(`unknown figure kind "${kind}"`);
  }
}
