/** Color ramps for matrix heatmaps.  Stops are interpolated in RGB. */

type Rgb = [number, number, number];

// Perceptually ordered dark-to-bright ramp for magnitudes.
const SEQUENTIAL: Rgb[] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

// Blue-white-red ramp for signed entries, centered at t = 0.5.
const DIVERGING: Rgb[] = [
  [59, 76, 192],
  [144, 178, 254],
  [221, 221, 221],
  [245, 156, 125],
  [180, 4, 38],
];

function ramp(stops: Rgb[], t: number): string {
  if (!Number.isFinite(t)) t = 0;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  const pos = t * (stops.length - 1);
  const lo = Math.min(stops.length - 2, Math.floor(pos));
  const frac = pos - lo;
  const rgb = [0, 1, 2].map((c) =>
    Math.round(stops[lo][c] + frac * (stops[lo + 1][c] - stops[lo][c])));
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

export function sequential(t: number): string {
  return ramp(SEQUENTIAL, t);
}

export function diverging(t: number): string {
  return ramp(DIVERGING, t);
}
