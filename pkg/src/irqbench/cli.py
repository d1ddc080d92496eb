"""Command line front end: run, analyze, bench, export-csv."""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

from . import analysis, scenarios, sim, trace
from .stimulus import Mode
from .timing import DEFAULT_TIMING, TimingModel, load_timing_file

_UNITS = {"s": 1_000_000_000, "ms": 1_000_000, "us": 1_000, "ns": 1}

# Bench defaults: latency runs shrink 1000x and still collect thousands of
# samples in seconds; throughput phases are 9.75 s a piece, so they shrink
# harder to keep full 12-phase sets cheap.
BENCH_LATENCY_SCALE = 1_000
BENCH_THROUGHPUT_SCALE = 100_000
BENCH_LATENCY_DURATION_NS = 10_000_000_000
BENCH_THROUGHPUT_DURATION_NS = 120_000_000_000


class CliError(Exception):
    pass


def parse_duration(text: str) -> int:
    """'30s', '250ms', '45us', '500ns', or a bare nanosecond count."""
    text = text.strip()
    for suffix in sorted(_UNITS, key=len, reverse=True):
        if text.endswith(suffix):
            number = text[:-len(suffix)].strip()
            try:
                return int(number) * _UNITS[suffix]
            except ValueError:
                break
    try:
        return int(text)
    except ValueError:
        raise CliError(f"cannot parse duration {text!r}") from None


def parse_seeds(text: str) -> list[int]:
    """'0..9' for a range (inclusive), or '1,2,5' for a list."""
    text = text.strip()
    if ".." in text:
        lo_text, _, hi_text = text.partition("..")
        try:
            lo, hi = int(lo_text), int(hi_text)
        except ValueError:
            raise CliError(f"cannot parse seed range {text!r}") from None
        if hi < lo:
            raise CliError(f"empty seed range {text!r}")
        return list(range(lo, hi + 1))
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise CliError(f"cannot parse seeds {text!r}") from None


def _load_timing(path: str | None) -> TimingModel:
    if path is None:
        return DEFAULT_TIMING
    return load_timing_file(path)


def _resolve_mode(config: scenarios.ScenarioConfig,
                  requested: str | None) -> Mode:
    if requested is not None:
        mode = Mode(requested)
        if mode not in config.modes:
            have = ", ".join(sorted(m.value for m in config.modes))
            raise CliError(
                f"{config.name} is not measured in {requested} mode "
                f"(available: {have})")
        return mode
    return (Mode.LATENCY if Mode.LATENCY in config.modes
            else next(iter(config.modes)))


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = scenarios.resolve(args.scenario, args.parallel_cores)
    except scenarios.ScenarioError:
        raise CliError(
            f"unknown scenario {args.scenario!r}; valid names: "
            f"{', '.join(scenarios.all_names())}") from None
    mode = _resolve_mode(config, args.mode)
    timing = _load_timing(args.timing)
    duration = (parse_duration(args.duration) if args.duration
                else None)
    capture = sim.run(config, mode, timing=timing, seed=args.seed,
                      duration_ns=duration, time_scale=args.scale,
                      stack=args.stack)
    out = args.out or f"{config.name}-{mode.value}-seed{args.seed}.itrc"
    trace.write_file(capture, out)
    meta = capture.metadata
    print(f"{config.name} [{mode.value}] seed {args.seed}: "
          f"{meta['phase_count']} phases, {len(capture.events)} events "
          f"-> {out}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    capture = trace.read_file(args.trace)
    meta = capture.metadata
    mode = args.mode or meta.get("mode")
    if mode is None:
        raise CliError(
            f"{args.trace} has no mode in its metadata; pass --mode")
    if args.mode and meta.get("mode") and args.mode != meta["mode"]:
        raise CliError(
            f"{args.trace} was captured in {meta['mode']} mode, not "
            f"{args.mode}")
    stim_channel = meta.get("stim_channel", 0)
    isr_channels = meta.get("isr_channels", [0])
    report = analysis.report_for(capture, mode, stim_channel, isr_channels)
    out = Path(args.out)
    out.write_text(report.to_json() + "\n")
    printed = f"{report.count} samples"
    if report.misses:
        printed += f", {report.misses} missed"
    if report.median is not None:
        printed += f", median {report.median:g} {report.unit}"
    print(f"{report.scenario} [{report.mode}]: {printed} -> {out}")
    if args.csv:
        with open(args.csv, "w", newline="") as f:
            analysis.export_report_csv(report, f)
        print(f"samples -> {args.csv}")
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def _bench_one(name: str, seeds: list[int], args: argparse.Namespace,
               timing: TimingModel, out_dir: Path) -> dict:
    bench = scenarios.benchmark(name, args.parallel_cores)
    if args.scale is not None:
        scale = args.scale
    elif bench.mode is Mode.THROUGHPUT:
        scale = BENCH_THROUGHPUT_SCALE
    else:
        scale = BENCH_LATENCY_SCALE
    if args.duration is not None:
        duration = parse_duration(args.duration)
    elif bench.mode is Mode.THROUGHPUT:
        duration = BENCH_THROUGHPUT_DURATION_NS
    else:
        duration = BENCH_LATENCY_DURATION_NS
    bench_dir = out_dir / name
    bench_dir.mkdir(parents=True, exist_ok=True)
    per_stack: dict[str, list[float]] = {}
    unit = "Hz" if bench.mode is Mode.THROUGHPUT else "ns"
    for stack in timing.stacks:
        pooled: list[float] = []
        for seed in seeds:
            capture = sim.run(bench.config, bench.mode, timing=timing,
                              seed=seed, duration_ns=duration,
                              time_scale=scale, stack=stack.name)
            meta = capture.metadata
            report = analysis.report_for(
                capture, bench.mode.value, meta["stim_channel"],
                meta["isr_channels"])
            report.metadata["benchmark"] = name
            report.metadata["constituents"] = list(bench.constituents)
            path = bench_dir / f"{stack.name}-seed{seed}.json"
            path.write_text(report.to_json() + "\n")
            pooled.extend(report.samples)
        per_stack[stack.name] = pooled
    overall = [v for values in per_stack.values() for v in values]
    aggregate = {
        "schema_version": analysis.SCHEMA_VERSION,
        "benchmark": name,
        "constituents": list(bench.constituents),
        "mode": bench.mode.value,
        "unit": unit,
        "seeds": seeds,
        "time_scale": scale,
        "duration_ns": duration,
        "stacks": {
            stack: {
                "count": len(values),
                "median": statistics.median(values) if values else None,
                "min": min(values) if values else None,
                "max": max(values) if values else None,
            }
            for stack, values in per_stack.items()
        },
        "median": statistics.median(overall) if overall else None,
        "count": len(overall),
    }
    (bench_dir / "aggregate.json").write_text(
        json.dumps(aggregate, indent=2) + "\n")
    return aggregate


def cmd_bench(args: argparse.Namespace) -> int:
    names = (list(scenarios.BENCHMARK_NAMES) if args.benchmark == "all"
             else [args.benchmark])
    for name in names:
        if name not in scenarios.BENCHMARK_NAMES:
            raise CliError(
                f"unknown benchmark {name!r}; valid: "
                f"{', '.join(scenarios.BENCHMARK_NAMES)} or all")
    seeds = parse_seeds(args.seeds)
    timing = _load_timing(args.timing)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    started = time.monotonic()
    for name in names:
        aggregate = _bench_one(name, seeds, args, timing, out_dir)
        rows.append(aggregate)
    elapsed = time.monotonic() - started
    stack_names = [s.name for s in timing.stacks]
    header = ["benchmark", "mode", "unit"] + \
        [f"median[{s}]" for s in stack_names] + ["median", "count"]
    lines = [",".join(header)]
    print(f"{'benchmark':<10} {'mode':<12} " +
          " ".join(f"{('median[' + s + ']'):>18}" for s in stack_names) +
          f" {'overall':>12}")
    for agg in rows:
        cells = [agg["benchmark"], agg["mode"], agg["unit"]]
        shown = []
        for s in stack_names:
            median = agg["stacks"].get(s, {}).get("median")
            cells.append("" if median is None else f"{median:.6g}")
            shown.append("n/a" if median is None
                         else f"{median:.6g} {agg['unit']}")
        cells.append("" if agg["median"] is None else f"{agg['median']:.6g}")
        cells.append(str(agg["count"]))
        lines.append(",".join(cells))
        overall = ("n/a" if agg["median"] is None
                   else f"{agg['median']:.6g} {agg['unit']}")
        print(f"{agg['benchmark']:<10} {agg['mode']:<12} " +
              " ".join(f"{v:>18}" for v in shown) + f" {overall:>12}")
    (out_dir / "comparison.csv").write_text("\n".join(lines) + "\n")
    print(f"{len(rows)} benchmark(s) in {elapsed:.1f} s -> {out_dir}")
    return 0


def cmd_export_csv(args: argparse.Namespace) -> int:
    capture = trace.read_file(args.trace)
    with open(args.out, "w", newline="") as f:
        rows = trace.export_csv(capture.events, f)
    print(f"{rows} events -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irqbench",
        description="Deterministic interrupt delivery simulator and "
                    "latency/throughput benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario to a trace")
    p_run.add_argument("scenario",
                       help="test case (T1..T7, T4-36, T6-2, ...) or "
                            "benchmark (B-Lmin, B-Lmax, B-Tmax)")
    p_run.add_argument("--mode", choices=["latency", "throughput"])
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--duration",
                       help="full-scale duration (e.g. 30s); default is the "
                            "procedure length for the mode")
    p_run.add_argument("--scale", type=int, default=1000,
                       help="time-scale divisor (default 1000)")
    p_run.add_argument("--stack", default=None,
                       help="stack profile name (default from scenario)")
    p_run.add_argument("--timing", help="timing model file")
    p_run.add_argument("--parallel-cores", type=int, default=4,
                       choices=list(scenarios.T6_VARIANTS),
                       help="parallel-handling variant folded into B-Lmax")
    p_run.add_argument("-o", "--out", help="trace output path")
    p_run.set_defaults(func=cmd_run)

    p_an = sub.add_parser("analyze", help="extract a report from a trace")
    p_an.add_argument("trace")
    p_an.add_argument("--mode", choices=["latency", "throughput"],
                      help="default comes from the trace metadata")
    p_an.add_argument("-o", "--out", default="report.json")
    p_an.add_argument("--csv", help="also write per-sample CSV here")
    p_an.set_defaults(func=cmd_analyze)

    p_bench = sub.add_parser(
        "bench", help="run a benchmark across seeds and stack profiles")
    p_bench.add_argument("benchmark",
                         help="B-Lmin, B-Lmax, B-Tmax, or all")
    p_bench.add_argument("--seeds", default="0..9",
                         help="'0..9' or comma list (default 0..9)")
    p_bench.add_argument("--scale", type=int, default=None,
                         help="override the per-mode default time scale")
    p_bench.add_argument("--duration", default=None,
                         help="override the per-mode default duration")
    p_bench.add_argument("--timing", help="timing model file")
    p_bench.add_argument("--parallel-cores", type=int, default=4,
                         choices=list(scenarios.T6_VARIANTS))
    p_bench.add_argument("--out-dir", default="bench-out")
    p_bench.set_defaults(func=cmd_bench)

    p_csv = sub.add_parser("export-csv", help="dump trace events as CSV")
    p_csv.add_argument("trace")
    p_csv.add_argument("-o", "--out", default="events.csv")
    p_csv.set_defaults(func=cmd_export_csv)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (trace.TraceError, analysis.AnalysisError, sim.SimError,
            scenarios.ScenarioError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
