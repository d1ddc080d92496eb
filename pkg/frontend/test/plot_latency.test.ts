import { describe, expect, it } from "vitest";
import { fileURLToPath } from "node:url";

import { SummaryReport, loadReport } from "../src/report.js";
import {
  DETAIL_THRESHOLD_NS,
  OVERVIEW_THRESHOLD_NS,
  PlotError,
  renderLatencyFigure,
} from "../src/plot_latency.js";

const fixture = (name: string): SummaryReport =>
  loadReport(fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url)));

const count = (svg: string, needle: string): number =>
  svg.split(needle).length - 1;

describe("renderLatencyFigure", () => {
  it("renders one box per report from golden fixtures", () => {
    const reports = [
      fixture("latency-T1-bare-metal.json"),
      fixture("latency-T1-rtos.json"),
      fixture("latency-T2-bare-metal.json"),
      fixture("latency-T2-rtos.json"),
      fixture("latency-T3-bare-metal.json"),
    ];
    const svg = renderLatencyFigure(reports);
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.endsWith("</svg>")).toBe(true);
    expect(count(svg, 'class="box"')).toBe(5);
    expect(count(svg, 'class="median"')).toBe(5);
    expect(svg).toContain("T2 [bare-metal]");
    expect(svg).toContain("T2 [rtos]");
    expect(svg).toContain("latency [ns]");
  });

  it("defaults to the overview linear threshold", () => {
    const svg = renderLatencyFigure([fixture("latency-T2-bare-metal.json")]);
    expect(OVERVIEW_THRESHOLD_NS).toBe(2496);
    expect(svg).toContain(`linear below ${OVERVIEW_THRESHOLD_NS} ns`);
  });

  it("supports the close-up threshold", () => {
    const svg = renderLatencyFigure([fixture("latency-T2-rtos.json")], {
      thresholdNs: DETAIL_THRESHOLD_NS,
    });
    expect(DETAIL_THRESHOLD_NS).toBe(240);
    expect(svg).toContain("linear below 240 ns");
  });

  it("places higher medians higher up the axis", () => {
    const svg = renderLatencyFigure([
      fixture("latency-T2-bare-metal.json"),
      fixture("latency-T3-bare-metal.json"),
    ]);
    const ys = [...svg.matchAll(/y1="([\d.]+)"[^>]*class="median"/g)].map(
      (m) => Number(m[1]),
    );
    expect(ys).toHaveLength(2);
    expect(ys[1]!).toBeLessThan(ys[0]!);
  });

  it("is deterministic", () => {
    const reports = [fixture("latency-T6-2-bare-metal.json")];
    expect(renderLatencyFigure(reports)).toBe(renderLatencyFigure(reports));
  });

  it("rejects an empty report list", () => {
    expect(() => renderLatencyFigure([])).toThrow(PlotError);
  });

  it("rejects a report with no samples", () => {
    const empty = {
      ...fixture("latency-T1-rtos.json"),
      count: 0,
      samples: [],
    };
    expect(() => renderLatencyFigure([empty])).toThrow(/empty report/);
  });

  it("rejects throughput reports", () => {
    const wrong = fixture("throughput-T2-bare-metal.json");
    expect(() => renderLatencyFigure([wrong])).toThrow(/not a latency report/);
  });

  it("annotates missed stimulations", () => {
    const missing = { ...fixture("latency-T1-bare-metal.json"), misses: 3 };
    expect(renderLatencyFigure([missing])).toContain("3 missed");
  });
});
