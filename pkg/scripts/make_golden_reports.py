#!/usr/bin/env python3
"""Produce the golden report files consumed by the plotting frontend.

Writes summary-report JSON for a small set of scenarios (both stack
profiles) plus one benchmark aggregate directory, using fixed seeds so
the files are reproducible byte for byte. The frontend test suite keeps
a committed copy under frontend/test/fixtures and renders plots from it;
re-run this after a timing or schema change and commit the diff.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from irqbench import analysis, sim
from irqbench.cli import main as cli_main
from irqbench.scenarios import resolve
from irqbench.stimulus import Mode
from irqbench.timing import DEFAULT_TIMING

LATENCY_SCENARIOS = ("T1", "T2", "T3", "T4-36", "T6-2", "T6-4")
THROUGHPUT_SCENARIOS = ("T2", "T6-2", "T6-4", "B-Tmax")
LATENCY_DURATION_NS = 2_500_000_000
LATENCY_SCALE = 1000
THROUGHPUT_DURATION_NS = 400_000_000_000
THROUGHPUT_SCALE = 1_000_000
SEED = 0


def write_report(name: str, mode: Mode, stack: str, out_dir: Path) -> Path:
    if mode is Mode.THROUGHPUT:
        duration_ns, scale = THROUGHPUT_DURATION_NS, THROUGHPUT_SCALE
    else:
        duration_ns, scale = LATENCY_DURATION_NS, LATENCY_SCALE
    capture = sim.run(resolve(name), mode, seed=SEED,
                      duration_ns=duration_ns, time_scale=scale,
                      stack=stack)
    meta = capture.metadata
    report = analysis.report_for(capture, mode.value, meta["stim_channel"],
                                 meta["isr_channels"])
    path = out_dir / f"{mode.value}-{name}-{stack}.json"
    path.write_text(report.to_json() + "\n")
    return path


def main(argv: list[str] | None = None) -> int:
    repo_root = Path(__file__).resolve().parents[1]
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir",
                        default=str(repo_root / "frontend" / "test"
                                    / "fixtures"))
    parser.add_argument("--bench-seeds", default="0..2",
                        help="seeds for the benchmark aggregate fixture")
    args = parser.parse_args(argv)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stacks = [s.name for s in DEFAULT_TIMING.stacks]

    written = []
    for name in LATENCY_SCENARIOS:
        for stack in stacks:
            written.append(write_report(name, Mode.LATENCY, stack, out_dir))
    for name in THROUGHPUT_SCENARIOS:
        for stack in stacks:
            written.append(write_report(name, Mode.THROUGHPUT, stack,
                                        out_dir))
    for path in written:
        print(f"wrote {path}")

    bench_dir = out_dir / "bench"
    rc = cli_main(["bench", "B-Lmin", "--seeds", args.bench_seeds,
                   "--out-dir", str(bench_dir)])
    if rc != 0:
        print("benchmark fixture generation failed", file=sys.stderr)
        return rc
    print(f"wrote {bench_dir / 'B-Lmin'} and {bench_dir / 'comparison.csv'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
