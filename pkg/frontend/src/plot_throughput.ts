/** Throughput figure: median bars plus a per-group deviation detail.
 *
 * The left panel shows each report's median on a linear axis. The
 * right panel re-centers every group on its own median and plots the
 * sample deviations inside a fixed 500 kHz window on a symlog axis
 * whose linear threshold defaults to 1 Hz, which is what makes
 * sub-hertz spread visible next to kilohertz excursions.
 */

import { SummaryReport, groupLabel, stackOf } from "./report.js";
import {
  LinearScale,
  SymlogScale,
  formatTick,
  linearTicks,
  symlogTicks,
} from "./scale.js";
import { PlotError } from "./plot_latency.js";
import { circle, line, rect, svgDocument, text } from "./svg.js";

export const DETAIL_WINDOW_HZ = 500_000;
export const DETAIL_THRESHOLD_HZ = 1;

export interface ThroughputPlotOptions {
  windowHz?: number;
  thresholdHz?: number;
  width?: number;
  height?: number;
  title?: string;
}

const STACK_COLORS: Record<string, string> = {
  "bare-metal": "#31688e",
  rtos: "#e07a30",
};

function colorFor(stack: string): string {
  return STACK_COLORS[stack] ?? "#35b779";
}

function reportMedian(report: SummaryReport): number {
  if (report.median !== null) return report.median;
  const sorted = [...report.samples].sort((a, b) => a - b);
  const mid = sorted.length >> 1;
  return sorted.length % 2
    ? sorted[mid]!
    : (sorted[mid - 1]! + sorted[mid]!) / 2;
}

export function renderThroughputFigure(
  reports: SummaryReport[],
  options: ThroughputPlotOptions = {},
): string {
  if (reports.length === 0) {
    throw new PlotError("no throughput reports to plot");
  }
  for (const r of reports) {
    if (r.count === 0 || r.samples.length === 0) {
      throw new PlotError(`${r.scenario}: empty report (no samples)`);
    }
    if (r.mode !== "throughput") {
      throw new PlotError(`${r.scenario}: not a throughput report`);
    }
  }
  const windowHz = options.windowHz ?? DETAIL_WINDOW_HZ;
  const thresholdHz = options.thresholdHz ?? DETAIL_THRESHOLD_HZ;
  if (windowHz <= 0) {
    throw new PlotError(`detail window must be positive, got ${windowHz}`);
  }
  const n = reports.length;
  const width = options.width ?? Math.max(740, 260 + n * 170);
  const height = options.height ?? 430;
  const margin = { top: 48, bottom: 76, left: 86, mid: 96, right: 30 };
  const panelW = (width - margin.left - margin.mid - margin.right) / 2;
  const plotH = height - margin.top - margin.bottom;
  const baseY = margin.top + plotH;

  const medians = reports.map(reportMedian);
  const overview = new LinearScale(
    0,
    Math.max(...medians) * 1.12,
    baseY,
    margin.top,
  );
  const half = windowHz / 2;
  const detail = new SymlogScale(
    thresholdHz,
    [-half, half],
    [baseY, margin.top],
  );

  const parts: string[] = [];
  parts.push(
    rect(0, 0, width, height, { fill: "#ffffff" }),
    text(margin.left, 24, options.title ?? "Interrupt throughput", {
      "font-size": 15,
      "font-weight": "bold",
      fill: "#222",
    }),
    text(
      margin.left,
      40,
      `medians (left); deviation from median inside a ` +
        `${formatTick(windowHz)}Hz window, symlog below ${thresholdHz} Hz (right)`,
      { "font-size": 11, fill: "#666" },
    ),
  );

  const leftX = margin.left;
  for (const tick of linearTicks(0, overview.domainMax, 6)) {
    const y = overview.apply(tick);
    parts.push(
      line(leftX, y, leftX + panelW, y, { stroke: "#e5e5e5" }),
      text(leftX - 8, y + 4, formatTick(tick), {
        "font-size": 11,
        fill: "#444",
        "text-anchor": "end",
      }),
    );
  }
  parts.push(
    text(18, margin.top + plotH / 2, "throughput [Hz]", {
      "font-size": 12,
      fill: "#222",
      transform: `rotate(-90 18 ${margin.top + plotH / 2})`,
      "text-anchor": "middle",
    }),
  );
  const slotL = panelW / n;
  const barW = Math.min(52, slotL * 0.55);
  reports.forEach((report, i) => {
    const cx = leftX + slotL * (i + 0.5);
    const color = colorFor(stackOf(report));
    const top = overview.apply(medians[i]!);
    parts.push(
      rect(cx - barW / 2, top, barW, Math.max(1, baseY - top), {
        fill: color,
        "fill-opacity": 0.8,
        class: "bar",
      }),
      text(cx, top - 6, formatTick(medians[i]!), {
        "font-size": 10,
        fill: "#222",
        "text-anchor": "middle",
      }),
      text(cx, baseY + 18, groupLabel(report), {
        "font-size": 11,
        fill: "#222",
        "text-anchor": "middle",
      }),
    );
  });

  const rightX = margin.left + panelW + margin.mid;
  for (const tick of symlogTicks(detail)) {
    const y = detail.apply(tick);
    const emphasized = tick === 0 || Math.abs(tick) === thresholdHz;
    parts.push(
      line(rightX, y, rightX + panelW, y, {
        stroke: emphasized ? "#bbbbbb" : "#ececec",
        "stroke-dasharray": Math.abs(tick) === thresholdHz ? "4 3" : "none",
      }),
      text(rightX - 8, y + 4, formatTick(tick), {
        "font-size": 10,
        fill: "#444",
        "text-anchor": "end",
      }),
    );
  }
  parts.push(
    text(rightX - 62, margin.top + plotH / 2, "sample - median [Hz]", {
      "font-size": 12,
      fill: "#222",
      transform: `rotate(-90 ${rightX - 62} ${margin.top + plotH / 2})`,
      "text-anchor": "middle",
    }),
  );
  const slotR = panelW / n;
  reports.forEach((report, i) => {
    const cx = rightX + slotR * (i + 0.5);
    const color = colorFor(stackOf(report));
    const med = medians[i]!;
    report.samples.forEach((v, j) => {
      const dev = Math.max(-half, Math.min(half, v - med));
      const dx = ((j % 7) - 3) * (slotR / 22);
      parts.push(
        circle(cx + dx, detail.apply(dev), 2, {
          fill: color,
          "fill-opacity": 0.5,
          class: "dev",
        }),
      );
    });
    parts.push(
      line(cx - slotR * 0.28, detail.apply(0), cx + slotR * 0.28, detail.apply(0), {
        stroke: color,
        "stroke-width": 2,
        class: "median",
      }),
      text(cx, baseY + 18, groupLabel(report), {
        "font-size": 11,
        fill: "#222",
        "text-anchor": "middle",
      }),
    );
  });

  for (const x of [leftX, rightX]) {
    parts.push(
      line(x, margin.top, x, baseY, { stroke: "#222" }),
      line(x, baseY, x + panelW, baseY, { stroke: "#222" }),
    );
  }
  return svgDocument(width, height, parts.join(""));
}
