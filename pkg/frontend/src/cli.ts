/** Command line entry: render latency or throughput figures to SVG.
 *
 *   node dist/cli.js latency  --out fig.svg [--threshold 2496] r1.json ...
 *   node dist/cli.js throughput --out fig.svg [--window 500000]
 *                               [--threshold 1] r1.json ...
 */

import fs from "node:fs";

import { ReportError, loadReports } from "./report.js";
import {
  DETAIL_THRESHOLD_NS,
  OVERVIEW_THRESHOLD_NS,
  PlotError,
  renderLatencyFigure,
} from "./plot_latency.js";
import {
  DETAIL_THRESHOLD_HZ,
  DETAIL_WINDOW_HZ,
  renderThroughputFigure,
} from "./plot_throughput.js";

interface ParsedArgs {
  command: string;
  out: string;
  threshold?: number;
  window?: number;
  detail: boolean;
  files: string[];
}

const USAGE = `usage:
  cli.js latency    --out FIG.svg [--threshold NS | --detail] REPORT.json...
  cli.js throughput --out FIG.svg [--window HZ] [--threshold HZ] REPORT.json...

defaults: latency threshold ${OVERVIEW_THRESHOLD_NS} ns (detail ${DETAIL_THRESHOLD_NS} ns);
throughput window ${DETAIL_WINDOW_HZ} Hz, threshold ${DETAIL_THRESHOLD_HZ} Hz`;

class UsageError extends Error {}

function parseArgs(argv: string[]): ParsedArgs {
  if (argv.length === 0) {
    throw new UsageError("missing command");
  }
  const [command, ...rest] = argv;
  if (command !== "latency" && command !== "throughput") {
    throw new UsageError(`unknown command ${command}`);
  }
  const parsed: ParsedArgs = { command, out: "", detail: false, files: [] };
  let i = 0;
  const numberArg = (flag: string): number => {
    const raw = rest[++i];
    if (raw === undefined) throw new UsageError(`${flag} needs a value`);
    const v = Number(raw);
    if (!Number.isFinite(v)) throw new UsageError(`${flag}: ${raw} is not a number`);
    return v;
  };
  for (; i < rest.length; i++) {
    const arg = rest[i]!;
    if (arg === "--out") {
      const raw = rest[++i];
      if (raw === undefined) throw new UsageError("--out needs a value");
      parsed.out = raw;
    } else if (arg === "--threshold") {
      parsed.threshold = numberArg("--threshold");
    } else if (arg === "--window") {
      parsed.window = numberArg("--window");
    } else if (arg === "--detail") {
      parsed.detail = true;
    } else if (arg.startsWith("--")) {
      throw new UsageError(`unknown flag ${arg}`);
    } else {
      parsed.files.push(arg);
    }
  }
  if (parsed.out === "") throw new UsageError("--out is required");
  if (parsed.files.length === 0) throw new UsageError("no report files given");
  return parsed;
}

export function main(argv: string[]): number {
  let args: ParsedArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}\n${USAGE}`);
      return 2;
    }
    throw err;
  }
  try {
    let svg: string;
    if (args.command === "latency") {
      const reports = loadReports(args.files, "latency");
      const thresholdNs =
        args.threshold ??
        (args.detail ? DETAIL_THRESHOLD_NS : OVERVIEW_THRESHOLD_NS);
      svg = renderLatencyFigure(reports, { thresholdNs });
    } else {
      const reports = loadReports(args.files, "throughput");
      svg = renderThroughputFigure(reports, {
        windowHz: args.window,
        thresholdHz: args.threshold,
      });
    }
    fs.writeFileSync(args.out, svg + "\n");
    console.log(`${args.files.length} report(s) -> ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof ReportError || err instanceof PlotError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
