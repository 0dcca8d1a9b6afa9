/**
 * Perceptually ordered colormap (viridis anchor points with linear
 * interpolation) plus a white-to-crimson ramp for error magnitudes.
 * Pure table lookups keep the rendered colors byte-deterministic.
 */

const VIRIDIS: [number, number, number][] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

function clamp01(u: number): number {
  return Math.min(1, Math.max(0, u));
}

function hex2(v: number): string {
  return Math.round(v).toString(16).padStart(2, "0");
}

function ramp(stops: [number, number, number][], u: number): string {
  u = clamp01(u);
  const x = u * (stops.length - 1);
  const k = Math.min(stops.length - 2, Math.floor(x));
  const f = x - k;
  const [r0, g0, b0] = stops[k];
  const [r1, g1, b1] = stops[k + 1];
  return `#${hex2(r0 + f * (r1 - r0))}${hex2(g0 + f * (g1 - g0))}${hex2(b0 + f * (b1 - b0))}`;
}

/** Map a value in [lo, hi] to a viridis color. */
export function fieldColor(value: number, lo: number, hi: number): string {
  return ramp(VIRIDIS, (value - lo) / (hi - lo || 1));
}

const ERRS: [number, number, number][] = [
  [255, 255, 255],
  [254, 224, 210],
  [252, 146, 114],
  [222, 45, 38],
  [103, 0, 13],
];

/** Map an error magnitude in [0, hi] to a white-to-dark-red color. */
export function errorColor(value: number, hi: number): string {
  return ramp(ERRS, value / (hi || 1));
}
