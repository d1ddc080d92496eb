"""Latency and throughput extraction from captures, plus report building.

Both extractions segment the capture into phases at the rising edges of the
stimulus channel, in stream order: phase i spans from its rising-edge record
to the record just before rising edge i+1 (the last phase runs to the end of
the capture).

Latency per phase is the tick distance from the rising edge to the first
software event inside the window, times the tick width.  A software event on
the same tick as the edge but later in the stream legitimately yields a
0 ns sample; a phase without any software event is a miss and is reported as
a count, never folded into the samples.

Throughput per phase is the number of software events in the window divided
by the high-stretch duration (rising edge to the first falling edge on the
stimulus channel inside the window).  Phases without a falling edge or with
a zero-tick high stretch cannot be normalized and are skipped.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence, TextIO

from .trace import EventKind, TraceCapture

SCHEMA_VERSION = 1


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class LatencySample:
    phase_index: int
    rise_tick: int
    entry_tick: int
    tick_ns: int = 4

    @property
    def latency_ns(self) -> int:
        return (self.entry_tick - self.rise_tick) * self.tick_ns


@dataclass(frozen=True)
class ThroughputSample:
    phase_index: int
    isr_count: int
    high_ns: int

    @property
    def throughput_hz(self) -> float:
        return self.isr_count / (self.high_ns * 1e-9)


@dataclass
class LatencyResult:
    samples: list[LatencySample]
    misses: int
    phase_count: int


@dataclass
class ThroughputResult:
    samples: list[ThroughputSample]
    phase_count: int
    warnings: list[str] = field(default_factory=list)


def phase_positions(capture: TraceCapture, stim_channel: int) -> list[int]:
    """Stream positions of the rising edges on the stimulus channel."""
    return [i for i, ev in enumerate(capture.events)
            if ev.kind == EventKind.HW_RISING and ev.channel == stim_channel]


def extract_latencies(capture: TraceCapture, stim_channel: int,
                      isr_channels: Iterable[int]) -> LatencyResult:
    chans = frozenset(isr_channels)
    events = capture.events
    rises = phase_positions(capture, stim_channel)
    samples: list[LatencySample] = []
    misses = 0
    for i, pos in enumerate(rises):
        end = rises[i + 1] if i + 1 < len(rises) else len(events)
        rise_tick = events[pos].tick
        for j in range(pos + 1, end):
            ev = events[j]
            if ev.kind == EventKind.SW_EVENT and ev.channel in chans:
                samples.append(LatencySample(i, rise_tick, ev.tick,
                                             capture.tick_ns))
                break
        else:
            misses += 1
    return LatencyResult(samples, misses, len(rises))


def extract_throughputs(capture: TraceCapture, stim_channel: int,
                        isr_channels: Iterable[int]) -> ThroughputResult:
    chans = frozenset(isr_channels)
    events = capture.events
    rises = phase_positions(capture, stim_channel)
    result = ThroughputResult([], len(rises))
    if len(rises) < 2:
        result.warnings.append(
            f"only {len(rises)} stimulation phase(s) captured; throughput "
            f"medians need more to mean anything")
    for i, pos in enumerate(rises):
        end = rises[i + 1] if i + 1 < len(rises) else len(events)
        rise_tick = events[pos].tick
        fall_tick = None
        count = 0
        for j in range(pos + 1, end):
            ev = events[j]
            if (fall_tick is None and ev.kind == EventKind.HW_FALLING
                    and ev.channel == stim_channel):
                fall_tick = ev.tick
            elif ev.kind == EventKind.SW_EVENT and ev.channel in chans:
                count += 1
        if fall_tick is None or fall_tick == rise_tick:
            result.warnings.append(
                f"phase {i}: no usable high stretch, skipped")
            continue
        high_ns = (fall_tick - rise_tick) * capture.tick_ns
        result.samples.append(ThroughputSample(i, count, high_ns))
    return result


def percentile(values: Sequence[float], p: float) -> float:
    """Linear interpolation between closest ranks."""
    if not values:
        raise AnalysisError("percentile of nothing")
    ordered = sorted(values)
    if len(ordered) == 1:
        return float(ordered[0])
    rank = (p / 100.0) * (len(ordered) - 1)
    lo = int(rank)
    hi = min(lo + 1, len(ordered) - 1)
    frac = rank - lo
    return ordered[lo] * (1.0 - frac) + ordered[hi] * frac


@dataclass
class SummaryReport:
    scenario: str
    mode: str
    unit: str
    count: int
    misses: int
    min: float | None
    median: float | None
    max: float | None
    p95: float | None
    p99: float | None
    samples: list[float]
    warnings: list[str] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "scenario": self.scenario,
            "mode": self.mode,
            "unit": self.unit,
            "count": self.count,
            "misses": self.misses,
            "min": self.min,
            "median": self.median,
            "max": self.max,
            "p95": self.p95,
            "p99": self.p99,
            "samples": self.samples,
            "warnings": self.warnings,
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SummaryReport":
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise AnalysisError(
                f"report schema version {version!r}, expected "
                f"{SCHEMA_VERSION}")
        return cls(
            scenario=d["scenario"], mode=d["mode"], unit=d["unit"],
            count=d["count"], misses=d["misses"], min=d["min"],
            median=d["median"], max=d["max"], p95=d["p95"], p99=d["p99"],
            samples=list(d["samples"]), warnings=list(d.get("warnings", [])),
            metadata=dict(d.get("metadata", {})))


def summarize(values: Sequence[float], *, scenario: str, mode: str,
              unit: str, misses: int = 0,
              warnings: Iterable[str] = (),
              metadata: dict[str, Any] | None = None) -> SummaryReport:
    values = list(values)
    warnings = list(warnings)
    if not values:
        return SummaryReport(
            scenario=scenario, mode=mode, unit=unit, count=0, misses=misses,
            min=None, median=None, max=None, p95=None, p99=None, samples=[],
            warnings=warnings + ["no samples"],
            metadata=metadata or {})
    return SummaryReport(
        scenario=scenario, mode=mode, unit=unit,
        count=len(values), misses=misses,
        min=float(min(values)),
        median=float(statistics.median(values)),
        max=float(max(values)),
        p95=percentile(values, 95.0),
        p99=percentile(values, 99.0),
        samples=[float(v) for v in values],
        warnings=warnings,
        metadata=metadata or {})


def latency_report(capture: TraceCapture, stim_channel: int,
                   isr_channels: Iterable[int]) -> SummaryReport:
    meta = capture.metadata
    res = extract_latencies(capture, stim_channel, isr_channels)
    return summarize(
        [s.latency_ns for s in res.samples],
        scenario=str(meta.get("scenario", "unknown")),
        mode="latency", unit="ns", misses=res.misses,
        metadata=dict(meta))

def throughput_report(capture: TraceCapture, stim_channel: int,
                      isr_channels: Iterable[int]) -> SummaryReport:
    meta = capture.metadata
    res = extract_throughputs(capture, stim_channel, isr_channels)
    return summarize(
        [s.throughput_hz for s in res.samples],
        scenario=str(meta.get("scenario", "unknown")),
        mode="throughput", unit="Hz",
        warnings=res.warnings,
        metadata=dict(meta))


def report_for(capture: TraceCapture, mode: str, stim_channel: int,
               isr_channels: Iterable[int]) -> SummaryReport:
    if mode == "latency":
        return latency_report(capture, stim_channel, isr_channels)
    if mode == "throughput":
        return throughput_report(capture, stim_channel, isr_channels)
    raise AnalysisError(f"unknown mode {mode!r}")


_CSV_FIELDS = ("schema_version", "scenario", "mode", "unit", "sample_index",
               "value")


def export_report_csv(report: SummaryReport, sink: TextIO) -> int:
    """Long-form rows, one per sample, mirroring the JSON naming."""
    writer = csv.writer(sink)
    writer.writerow(_CSV_FIELDS)
    for i, value in enumerate(report.samples):
        writer.writerow([report.schema_version, report.scenario,
                         report.mode, report.unit, i, value])
    return len(report.samples)
