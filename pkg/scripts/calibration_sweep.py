#!/usr/bin/env python3
"""Sweep scenarios across seeds and stacks, printing latency medians.

The main use is checking the calibration anchor (the reference
configuration should sit at 232 ns) and the relative ordering of the
measurement scenarios after a change to the timing model. Each row pools
samples from every requested seed before taking statistics, which is the
same aggregation the bench subcommand applies.

Example:

    python3 scripts/calibration_sweep.py --seeds 0..9 --csv sweep.csv
    python3 scripts/calibration_sweep.py --scenarios T2,T6-2 --mode throughput
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time

from irqbench import analysis, sim
from irqbench.cli import parse_duration, parse_seeds
from irqbench.scenarios import all_names, resolve
from irqbench.stimulus import Mode
from irqbench.timing import DEFAULT_TIMING

ANCHOR_SCENARIO = "T2"
ANCHOR_NS = 232.0


def pooled_samples(name: str, mode: Mode, seeds: list[int], stack: str,
                   duration_ns: int, scale: int) -> tuple[list[float], int]:
    config = resolve(name)
    values: list[float] = []
    misses = 0
    for seed in seeds:
        capture = sim.run(config, mode, seed=seed, duration_ns=duration_ns,
                          time_scale=scale, stack=stack)
        meta = capture.metadata
        report = analysis.report_for(capture, mode.value,
                                     meta["stim_channel"],
                                     meta["isr_channels"])
        values.extend(report.samples)
        misses += report.misses
    return values, misses


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scenarios", default="all",
                        help="comma list of scenario names, or 'all'")
    parser.add_argument("--mode", choices=["latency", "throughput"],
                        default="latency")
    parser.add_argument("--seeds", default="0..9",
                        help="seed list, e.g. '0..9' or '1,5,7'")
    parser.add_argument("--duration", default=None,
                        help="pattern duration, e.g. '2.5s' (default: "
                             "2.5s latency, 10s throughput)")
    parser.add_argument("--scale", type=int, default=None,
                        help="time-scale divisor (default: 1000 latency, "
                             "1000000 throughput)")
    parser.add_argument("--csv", default=None,
                        help="also write one row per (scenario, stack)")
    args = parser.parse_args(argv)

    mode = Mode(args.mode)
    seeds = parse_seeds(args.seeds)
    if args.duration is not None:
        duration_ns = parse_duration(args.duration)
    else:
        duration_ns = (10_000_000_000 if mode is Mode.THROUGHPUT
                       else 2_500_000_000)
    if args.scale is not None:
        scale = args.scale
    else:
        scale = 1_000_000 if mode is Mode.THROUGHPUT else 1000

    if args.scenarios == "all":
        names = [n for n in all_names()
                 if mode in resolve(n).modes]
    else:
        names = [n.strip() for n in args.scenarios.split(",") if n.strip()]
        for n in names:
            if mode not in resolve(n).modes:
                parser.error(f"{n} does not support {mode.value} mode")

    unit = "Hz" if mode is Mode.THROUGHPUT else "ns"
    stacks = [s.name for s in DEFAULT_TIMING.stacks]
    print(f"{len(names)} scenario(s), seeds {seeds[0]}..{seeds[-1]}, "
          f"duration {duration_ns} ns / scale {scale}, unit {unit}")
    print(f"{'scenario':<8} {'stack':<12} {'count':>7} {'misses':>7} "
          f"{'min':>12} {'median':>12} {'p95':>12} {'max':>12}")

    rows = []
    started = time.monotonic()
    for name in names:
        for stack in stacks:
            values, misses = pooled_samples(name, mode, seeds, stack,
                                            duration_ns, scale)
            if not values:
                print(f"{name:<8} {stack:<12} {'0':>7} {misses:>7}"
                      "  (no samples)")
                continue
            row = {
                "scenario": name,
                "stack": stack,
                "unit": unit,
                "count": len(values),
                "misses": misses,
                "min": min(values),
                "median": statistics.median(values),
                "p95": analysis.percentile(values, 95.0),
                "max": max(values),
            }
            rows.append(row)
            print(f"{name:<8} {stack:<12} {row['count']:>7} "
                  f"{row['misses']:>7} {row['min']:>12g} "
                  f"{row['median']:>12g} {row['p95']:>12g} "
                  f"{row['max']:>12g}")
    elapsed = time.monotonic() - started

    if mode is Mode.LATENCY:
        anchored = [r for r in rows if r["scenario"] == ANCHOR_SCENARIO]
        for row in anchored:
            drift = row["median"] - ANCHOR_NS
            tag = "ok" if abs(drift) <= 10 else "DRIFTED"
            print(f"anchor {ANCHOR_SCENARIO}[{row['stack']}]: "
                  f"median {row['median']:g} ns "
                  f"({drift:+g} ns from {ANCHOR_NS:g}) {tag}")

    if args.csv:
        fields = ["scenario", "stack", "unit", "count", "misses",
                  "min", "median", "p95", "max"]
        with open(args.csv, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=fields)
            writer.writeheader()
            writer.writerows(rows)
        print(f"{len(rows)} rows -> {args.csv}")
    print(f"done in {elapsed:.1f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
