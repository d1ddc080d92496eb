/** Latency distribution figure: one box per report on a symlog axis.
 *
 * The default linear threshold (2496 ns) suits an overview across
 * scenarios whose tails stretch out by orders of magnitude; pass
 * DETAIL_THRESHOLD_NS (240) for a close-up of a single fast scenario.
 * Reports from different stack profiles of the same scenario sit side
 * by side and share a color per profile.
 */

import { SummaryReport, groupLabel, stackOf } from "./report.js";
import { SymlogScale, formatTick, symlogTicks } from "./scale.js";
import { boxStats } from "./stats.js";
import { circle, line, rect, svgDocument, text } from "./svg.js";

export const OVERVIEW_THRESHOLD_NS = 2496;
export const DETAIL_THRESHOLD_NS = 240;

export class PlotError extends Error {}

export interface LatencyPlotOptions {
  thresholdNs?: number;
  width?: number;
  height?: number;
  title?: string;
}

const STACK_COLORS: Record<string, string> = {
  "bare-metal": "#31688e",
  rtos: "#e07a30",
};
const FALLBACK_COLORS = ["#35b779", "#a44fb0", "#c23a3a", "#8a8a2a"];

function colorFor(stack: string, seen: Map<string, string>): string {
  const known = STACK_COLORS[stack];
  if (known) return known;
  let assigned = seen.get(stack);
  if (!assigned) {
    assigned = FALLBACK_COLORS[seen.size % FALLBACK_COLORS.length]!;
    seen.set(stack, assigned);
  }
  return assigned;
}

export function renderLatencyFigure(
  reports: SummaryReport[],
  options: LatencyPlotOptions = {},
): string {
  if (reports.length === 0) {
    throw new PlotError("no latency reports to plot");
  }
  for (const r of reports) {
    if (r.count === 0 || r.samples.length === 0) {
      throw new PlotError(`${r.scenario}: empty report (no samples)`);
    }
    if (r.mode !== "latency") {
      throw new PlotError(`${r.scenario}: not a latency report`);
    }
  }
  const threshold = options.thresholdNs ?? OVERVIEW_THRESHOLD_NS;
  const width = options.width ?? Math.max(460, 150 + reports.length * 110);
  const height = options.height ?? 420;
  const margin = { top: 48, right: 24, bottom: 72, left: 78 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const allMin = Math.min(...reports.map((r) => Math.min(...r.samples)));
  const allMax = Math.max(...reports.map((r) => Math.max(...r.samples)));
  const domainLo = Math.min(0, allMin);
  const domainHi = allMax <= domainLo ? domainLo + 1 : allMax * 1.06;
  const scale = new SymlogScale(
    threshold,
    [domainLo, domainHi],
    [margin.top + plotH, margin.top],
  );

  const parts: string[] = [];
  parts.push(
    rect(0, 0, width, height, { fill: "#ffffff" }),
    text(margin.left, 24, options.title ?? "Interrupt latency distribution", {
      "font-size": 15,
      "font-weight": "bold",
      fill: "#222",
    }),
    text(margin.left, 40, `symlog axis, linear below ${threshold} ns`, {
      "font-size": 11,
      fill: "#666",
    }),
  );

  for (const tick of symlogTicks(scale)) {
    const y = scale.apply(tick);
    parts.push(
      line(margin.left, y, margin.left + plotW, y, {
        stroke: tick === threshold ? "#bbbbbb" : "#e5e5e5",
        "stroke-dasharray": tick === threshold ? "4 3" : "none",
      }),
      text(margin.left - 8, y + 4, formatTick(tick), {
        "font-size": 11,
        fill: "#444",
        "text-anchor": "end",
      }),
    );
  }
  parts.push(
    text(16, margin.top + plotH / 2, "latency [ns]", {
      "font-size": 12,
      fill: "#222",
      transform: `rotate(-90 16 ${margin.top + plotH / 2})`,
      "text-anchor": "middle",
    }),
  );

  const slot = plotW / reports.length;
  const boxW = Math.min(46, slot * 0.5);
  const seenStacks = new Map<string, string>();
  reports.forEach((report, i) => {
    const cx = margin.left + slot * (i + 0.5);
    const color = colorFor(stackOf(report), seenStacks);
    const st = boxStats(report.samples);
    const y = (v: number) => scale.apply(v);
    parts.push(
      line(cx, y(st.whiskerLow), cx, y(st.q1), { stroke: color }),
      line(cx, y(st.q3), cx, y(st.whiskerHigh), { stroke: color }),
      line(cx - boxW / 4, y(st.whiskerLow), cx + boxW / 4, y(st.whiskerLow), {
        stroke: color,
      }),
      line(cx - boxW / 4, y(st.whiskerHigh), cx + boxW / 4, y(st.whiskerHigh), {
        stroke: color,
      }),
      rect(cx - boxW / 2, y(st.q3), boxW, Math.max(1, y(st.q1) - y(st.q3)), {
        fill: color,
        "fill-opacity": 0.25,
        stroke: color,
        class: "box",
      }),
      line(cx - boxW / 2, y(st.median), cx + boxW / 2, y(st.median), {
        stroke: color,
        "stroke-width": 2,
        class: "median",
      }),
    );
    for (let j = 0; j < st.outliers.length; j++) {
      const dx = ((j % 5) - 2) * (boxW / 10);
      parts.push(
        circle(cx + dx, y(st.outliers[j]!), 1.6, {
          fill: color,
          "fill-opacity": 0.6,
          class: "outlier",
        }),
      );
    }
    parts.push(
      text(cx, margin.top + plotH + 18, groupLabel(report), {
        "font-size": 11,
        fill: "#222",
        "text-anchor": "middle",
      }),
      text(cx, margin.top + plotH + 34, `n=${report.count}`, {
        "font-size": 10,
        fill: "#666",
        "text-anchor": "middle",
      }),
    );
    if (report.misses > 0) {
      parts.push(
        text(cx, margin.top + plotH + 48, `${report.misses} missed`, {
          "font-size": 10,
          fill: "#c23a3a",
          "text-anchor": "middle",
        }),
      );
    }
  });

  parts.push(
    line(margin.left, margin.top, margin.left, margin.top + plotH, {
      stroke: "#222",
    }),
    line(
      margin.left,
      margin.top + plotH,
      margin.left + plotW,
      margin.top + plotH,
      { stroke: "#222" },
    ),
  );
  return svgDocument(width, height, parts.join(""));
}
