/** Scales, quantiles and palettes; all deterministic, no external services. */

export interface Linear {
  (value: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Linear {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0;
  const fn = ((value: number) =>
    span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0)) as Linear;
  fn.domain = domain;
  return fn;
}

export function extent(values: number[]): [number, number] {
  if (values.length === 0) return [0, 1];
  let lo = values[0]!;
  let hi = values[0]!;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

/** Quantile with linear interpolation on the sorted values. */
export function quantile(values: number[], q: number): number {
  if (values.length === 0) return NaN;
  const sorted = [...values].sort((a, b) => a - b);
  const pos = (sorted.length - 1) * q;
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  const frac = pos - lo;
  return sorted[lo]! * (1 - frac) + sorted[hi]! * frac;
}

export const CATEGORICAL = [
  '#4269d0', '#efb118', '#ff725c', '#6cc5b0', '#3ca951',
  '#ff8ab7', '#a463f2', '#97bbf5', '#9c6b4e', '#9498a0',
];

export const HIGHLIGHT_COLOR = '#1f9d55'; // the "stands out" green

export function categoricalColor(value: string, categories: string[]): string {
  const idx = categories.indexOf(value);
  return CATEGORICAL[(idx >= 0 ? idx : 0) % CATEGORICAL.length]!;
}

/** Light-to-dark blue ramp for numeric columns. */
export function sequentialColor(value: number, lo: number, hi: number): string {
  const t = hi === lo ? 0.5 : Math.max(0, Math.min(1, (value - lo) / (hi - lo)));
  const from = [222, 235, 247];
  const to = [8, 69, 148];
  const rgb = from.map((f, i) => Math.round(f + (to[i]! - f) * t));
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

export function fmt(value: number): string {
  if (Number.isInteger(value)) return String(value);
  return value.toPrecision(6).replace(/\.?0+$/, '');
}
