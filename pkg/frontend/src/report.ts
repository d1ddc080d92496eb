/** Reader for the versioned summary-report JSON produced by the harness. */

import fs from "node:fs";

export const SUPPORTED_SCHEMA_VERSION = 1;

export interface SummaryReport {
  schema_version: number;
  scenario: string;
  mode: "latency" | "throughput";
  unit: string;
  count: number;
  misses: number;
  min: number | null;
  median: number | null;
  max: number | null;
  p95: number | null;
  p99: number | null;
  samples: number[];
  warnings: string[];
  metadata: Record<string, unknown>;
}

export class ReportError extends Error {}

const REQUIRED_FIELDS: (keyof SummaryReport)[] = [
  "schema_version",
  "scenario",
  "mode",
  "unit",
  "count",
  "misses",
  "samples",
  "warnings",
  "metadata",
];

/** Validate a parsed JSON object against the report schema. */
export function asReport(raw: unknown, source: string): SummaryReport {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new ReportError(`${source}: not a JSON object`);
  }
  const obj = raw as Record<string, unknown>;
  if (obj.schema_version !== SUPPORTED_SCHEMA_VERSION) {
    throw new ReportError(
      `${source}: schema_version ${String(obj.schema_version)} is not ` +
        `supported (expected ${SUPPORTED_SCHEMA_VERSION})`,
    );
  }
  for (const field of REQUIRED_FIELDS) {
    if (!(field in obj)) {
      throw new ReportError(`${source}: missing field ${field}`);
    }
  }
  if (obj.mode !== "latency" && obj.mode !== "throughput") {
    throw new ReportError(`${source}: unknown mode ${String(obj.mode)}`);
  }
  if (!Array.isArray(obj.samples)) {
    throw new ReportError(`${source}: samples is not an array`);
  }
  const samples = obj.samples as unknown[];
  for (const v of samples) {
    if (typeof v !== "number" || !Number.isFinite(v)) {
      throw new ReportError(`${source}: non-numeric sample ${String(v)}`);
    }
  }
  if (samples.length !== obj.count) {
    throw new ReportError(
      `${source}: count ${String(obj.count)} does not match ` +
        `${samples.length} samples`,
    );
  }
  return obj as unknown as SummaryReport;
}

/** Read and validate one report file. */
export function loadReport(path: string): SummaryReport {
  let text: string;
  try {
    text = fs.readFileSync(path, "utf-8");
  } catch (err) {
    throw new ReportError(`${path}: ${(err as Error).message}`);
  }
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new ReportError(`${path}: invalid JSON (${(err as Error).message})`);
  }
  return asReport(raw, path);
}

/** Read several reports, requiring a uniform mode across them. */
export function loadReports(
  paths: string[],
  mode: "latency" | "throughput",
): SummaryReport[] {
  if (paths.length === 0) {
    throw new ReportError("no report files given");
  }
  const reports = paths.map(loadReport);
  for (let i = 0; i < reports.length; i++) {
    const r = reports[i]!;
    if (r.mode !== mode) {
      throw new ReportError(
        `${paths[i]}: ${r.mode} report passed to a ${mode} plot`,
      );
    }
  }
  return reports;
}

/** Stack-profile name recorded by the harness, if any. */
export function stackOf(report: SummaryReport): string {
  const stack = report.metadata["stack"];
  return typeof stack === "string" ? stack : "default";
}

/** Group label combining scenario and stack profile. */
export function groupLabel(report: SummaryReport): string {
  return `${report.scenario} [${stackOf(report)}]`;
}
