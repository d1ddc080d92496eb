/** Order statistics matching the harness analyzer (linear interpolation). */

export function percentile(sorted: number[], p: number): number {
  if (sorted.length === 0) {
    throw new RangeError("percentile of no samples");
  }
  if (p < 0 || p > 100) {
    throw new RangeError(`percentile ${p} out of range`);
  }
  const pos = (p / 100) * (sorted.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  const lower = sorted[lo]!;
  const upper = sorted[hi]!;
  return lower + (upper - lower) * (pos - lo);
}

export function median(sorted: number[]): number {
  return percentile(sorted, 50);
}

export interface BoxStats {
  min: number;
  whiskerLow: number;
  q1: number;
  median: number;
  q3: number;
  whiskerHigh: number;
  max: number;
  outliers: number[];
}

/** Tukey box-plot statistics: whiskers at the furthest samples within
 * 1.5 IQR of the box, everything beyond reported as outliers. */
export function boxStats(values: number[]): BoxStats {
  const sorted = [...values].sort((a, b) => a - b);
  const q1 = percentile(sorted, 25);
  const q3 = percentile(sorted, 75);
  const iqr = q3 - q1;
  const loFence = q1 - 1.5 * iqr;
  const hiFence = q3 + 1.5 * iqr;
  const inside = sorted.filter((v) => v >= loFence && v <= hiFence);
  const whiskerLow = inside.length > 0 ? inside[0]! : q1;
  const whiskerHigh = inside.length > 0 ? inside[inside.length - 1]! : q3;
  return {
    min: sorted[0]!,
    whiskerLow,
    q1,
    median: median(sorted),
    q3,
    whiskerHigh,
    max: sorted[sorted.length - 1]!,
    outliers: sorted.filter((v) => v < loFence || v > hiFence),
  };
}
