/**
 * Small deterministic SVG toolkit: fixed canvas geometry, fixed-precision
 * coordinates, no timestamps or randomness anywhere.
 */

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

export function makeFrame(
  x0: number,
  x1: number,
  y0: number,
  y1: number,
  opts: Partial<Frame> = {},
): Frame {
  return {
    width: opts.width ?? 720,
    height: opts.height ?? 420,
    left: opts.left ?? 64,
    right: opts.right ?? 16,
    top: opts.top ?? 40,
    bottom: opts.bottom ?? 46,
    x0,
    x1,
    y0,
    y1,
  };
}

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "0";
  const out = v.toFixed(2);
  return out === "-0.00" ? "0.00" : out;
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function xPix(f: Frame, x: number): number {
  return f.left + ((x - f.x0) / (f.x1 - f.x0 || 1)) * (f.width - f.left - f.right);
}

export function yPix(f: Frame, y: number): number {
  return f.height - f.bottom - ((y - f.y0) / (f.y1 - f.y0 || 1)) * (f.height - f.top - f.bottom);
}

export function niceTicks(lo: number, hi: number, count = 6): number[] {
  const range = hi - lo || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-9 * range; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * range ? 0 : v);
  }
  return ticks;
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0);
  return parseFloat(v.toPrecision(4)).toString();
}

export function rect(
  x: number,
  y: number,
  w: number,
  h: number,
  fill: string,
  attrs = "",
): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"${attrs ? " " + attrs : ""}/>`;
}

export function polyline(points: [number, number][], attrs: string): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" ${attrs}/>`;
}

export function text(x: number, y: number, s: string, attrs = ""): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}"${attrs ? " " + attrs : ""}>${esc(s)}</text>`;
}

export function axes(
  f: Frame,
  xLabel: string,
  yLabel: string,
  opts: { yTickFormat?: (v: number) => string } = {},
): string {
  const parts: string[] = [];
  const plotW = f.width - f.left - f.right;
  const plotH = f.height - f.top - f.bottom;
  parts.push(
    `<rect x="${fmt(f.left)}" y="${fmt(f.top)}" width="${fmt(plotW)}" height="${fmt(plotH)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const v of niceTicks(f.x0, f.x1)) {
    const px = xPix(f, v);
    parts.push(polyline([[px, f.height - f.bottom], [px, f.height - f.bottom + 4]], 'stroke="#333"'));
    parts.push(text(px, f.height - f.bottom + 17, tickLabel(v), 'text-anchor="middle" font-size="11"'));
  }
  const yfmt = opts.yTickFormat ?? tickLabel;
  for (const v of niceTicks(f.y0, f.y1, 5)) {
    const py = yPix(f, v);
    parts.push(polyline([[f.left - 4, py], [f.left, py]], 'stroke="#333"'));
    parts.push(text(f.left - 7, py + 4, yfmt(v), 'text-anchor="end" font-size="11"'));
  }
  parts.push(
    text((f.left + f.width - f.right) / 2, f.height - 10, xLabel, 'text-anchor="middle" font-size="12"'),
  );
  parts.push(
    `<text x="14" y="${fmt((f.top + f.height - f.bottom) / 2)}" text-anchor="middle" font-size="12" transform="rotate(-90 14 ${fmt((f.top + f.height - f.bottom) / 2)})">${esc(yLabel)}</text>`,
  );
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body +
    "\n</svg>\n"
  );
}
