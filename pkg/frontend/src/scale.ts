/** Axis scales for the figure renderers.
 *
 * The symlog scale is linear inside [-threshold, threshold] and
 * base-10 logarithmic outside, with a continuous joint at the
 * threshold: forward(t) = 1 and forward(10 t) = 2 in scale units.
 */

export class ScaleError extends Error {}

export class SymlogScale {
  readonly threshold: number;
  readonly domainMin: number;
  readonly domainMax: number;
  readonly rangeMin: number;
  readonly rangeMax: number;
  private readonly tMin: number;
  private readonly tMax: number;

  constructor(
    threshold: number,
    domain: [number, number],
    range: [number, number],
  ) {
    if (!(threshold > 0)) {
      throw new ScaleError(`linear threshold must be positive, got ${threshold}`);
    }
    const [lo, hi] = domain;
    if (!(hi > lo)) {
      throw new ScaleError(`degenerate domain [${lo}, ${hi}]`);
    }
    this.threshold = threshold;
    this.domainMin = lo;
    this.domainMax = hi;
    this.rangeMin = range[0];
    this.rangeMax = range[1];
    this.tMin = symlogForward(lo, threshold);
    this.tMax = symlogForward(hi, threshold);
  }

  /** Map a data value to its range (pixel) coordinate. */
  apply(value: number): number {
    const t = symlogForward(value, this.threshold);
    const frac = (t - this.tMin) / (this.tMax - this.tMin);
    return this.rangeMin + frac * (this.rangeMax - this.rangeMin);
  }

  /** Tick values: zero, signed thresholds and decades inside the domain. */
  ticks(): number[] {
    const out: number[] = [];
    const within = (v: number) =>
      v >= this.domainMin - 1e-9 && v <= this.domainMax + 1e-9;
    if (within(0)) out.push(0);
    for (const sign of [1, -1]) {
      for (let k = 0; k < 40; k++) {
        const v = sign * this.threshold * 10 ** k;
        if (Math.abs(v) > Math.max(Math.abs(this.domainMin), Math.abs(this.domainMax))) {
          break;
        }
        if (within(v)) out.push(v);
      }
    }
    return out.sort((a, b) => a - b);
  }
}

/** Symlog transform in threshold units (monotonic, odd). */
export function symlogForward(value: number, threshold: number): number {
  const a = Math.abs(value);
  if (a <= threshold) {
    return value / threshold;
  }
  return Math.sign(value) * (1 + Math.log10(a / threshold));
}

/** Symlog ticks padded with linear steps inside the threshold and
 * 2x/5x subdivisions in the log region, so short axes stay readable. */
export function symlogTicks(scale: SymlogScale): number[] {
  const base = new Set(scale.ticks());
  const lo = scale.domainMin;
  const hi = scale.domainMax;
  const linHi = Math.min(hi, scale.threshold);
  const linLo = Math.max(lo, -scale.threshold);
  if (linHi > linLo) {
    for (const v of linearTicks(linLo, linHi, 5)) base.add(v);
  }
  for (const sign of [1, -1]) {
    for (let k = 0; k < 40; k++) {
      const decade = scale.threshold * 10 ** k;
      if (decade > Math.max(Math.abs(lo), Math.abs(hi))) break;
      for (const m of [2, 5]) {
        const v = sign * m * decade;
        if (v >= lo && v <= hi) base.add(v);
      }
    }
  }
  return [...base].sort((a, b) => a - b);
}

/** Plain linear scale for bar overviews. */
export class LinearScale {
  constructor(
    readonly domainMin: number,
    readonly domainMax: number,
    readonly rangeMin: number,
    readonly rangeMax: number,
  ) {
    if (!(domainMax > domainMin)) {
      throw new ScaleError(`degenerate domain [${domainMin}, ${domainMax}]`);
    }
  }

  apply(value: number): number {
    const frac = (value - this.domainMin) / (this.domainMax - this.domainMin);
    return this.rangeMin + frac * (this.rangeMax - this.rangeMin);
  }
}

/** Round tick positions covering [lo, hi] with a 1/2/5 step. */
export function linearTicks(lo: number, hi: number, want = 6): number[] {
  if (!(hi > lo)) {
    throw new ScaleError(`degenerate domain [${lo}, ${hi}]`);
  }
  const span = hi - lo;
  const rawStep = span / Math.max(want - 1, 1);
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    step = m * mag;
    if (span / step <= want) break;
  }
  const first = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

/** Compact axis label: 4000000 -> "4M", 2500 -> "2.5k", 232 -> "232". */
export function formatTick(value: number): string {
  const a = Math.abs(value);
  const render = (v: number, suffix: string) => {
    const shown = Math.round(v * 100) / 100;
    return `${shown}${suffix}`;
  };
  if (a >= 1e9) return render(value / 1e9, "G");
  if (a >= 1e6) return render(value / 1e6, "M");
  if (a >= 1e3) return render(value / 1e3, "k");
  return render(value, "");
}
