"""Stimulation patterns and the logic that drives them into the controller.

Two measurement modes share one shape: a rectangular wave per stimulated
line.  Throughput runs hold the line high for 9.75 s and pause for 250 ms;
latency runs pulse 1 ms high / 4 ms low.  Both stretches can be divided by a
time-scale factor, which keeps the duty cycle and phase count while shrinking
wall time.  Only complete phases are stimulated; a trailing partial phase is
dropped rather than emitting a malformed pulse.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterator, Mapping

from . import trace
from .gic import MIN_PULSE_NS, Gic

THROUGHPUT_HIGH_NS = 9_750_000_000
THROUGHPUT_LOW_NS = 250_000_000
LATENCY_HIGH_NS = 1_000_000
LATENCY_LOW_NS = 4_000_000
DEFAULT_TIME_SCALE = 1000


class Mode(enum.Enum):
    LATENCY = "latency"
    THROUGHPUT = "throughput"


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class StimulationPattern:
    """Rectangular stimulus on a set of lines.

    high_ns below the recognition threshold is normally a configuration
    mistake and rejected; allow_narrow exists so deliberately marginal pulses
    can be generated when the recognition rule itself is under test.
    """

    high_ns: int
    low_ns: int
    lines: frozenset[int] = frozenset({0})
    repetitions: int | None = None
    allow_narrow: bool = False

    def __post_init__(self):
        if self.high_ns <= 0:
            raise PatternError(f"high phase {self.high_ns} ns must be > 0")
        if self.low_ns < 0:
            raise PatternError(f"low phase {self.low_ns} ns must be >= 0")
        if self.high_ns < MIN_PULSE_NS and not self.allow_narrow:
            raise PatternError(
                f"high phase {self.high_ns} ns is below the {MIN_PULSE_NS} ns "
                f"recognition threshold")
        if not self.lines:
            raise PatternError("no lines to stimulate")
        if self.repetitions is not None and self.repetitions < 0:
            raise PatternError(f"negative repetitions {self.repetitions}")

    @property
    def period_ns(self) -> int:
        return self.high_ns + self.low_ns

    def phase_count(self, duration_ns: int) -> int:
        n = duration_ns // self.period_ns
        if self.repetitions is not None:
            n = min(n, self.repetitions)
        return n

    def edges(self, duration_ns: int) -> Iterator[tuple[int, int, int]]:
        """(phase index, rise time, fall time) for every complete phase."""
        for i in range(self.phase_count(duration_ns)):
            start = i * self.period_ns
            yield i, start, start + self.high_ns

    def scaled(self, divisor: int) -> "StimulationPattern":
        """Divide both stretches by divisor, preserving the phase count."""
        if divisor < 1:
            raise PatternError(f"time scale {divisor} must be >= 1")
        if divisor == 1:
            return self
        return replace(self, high_ns=self.high_ns // divisor,
                       low_ns=self.low_ns // divisor)


def throughput_pattern(lines: frozenset[int] = frozenset({0}),
                       time_scale: int = 1) -> StimulationPattern:
    return StimulationPattern(THROUGHPUT_HIGH_NS, THROUGHPUT_LOW_NS,
                              lines=lines).scaled(time_scale)


def latency_pattern(lines: frozenset[int] = frozenset({0}),
                    time_scale: int = 1) -> StimulationPattern:
    return StimulationPattern(LATENCY_HIGH_NS, LATENCY_LOW_NS,
                              lines=lines).scaled(time_scale)


def pattern_for(mode: Mode, time_scale: int = 1) -> StimulationPattern:
    if mode is Mode.THROUGHPUT:
        return throughput_pattern(time_scale=time_scale)
    return latency_pattern(time_scale=time_scale)


def default_duration_ns(mode: Mode) -> int:
    """Full-scale run lengths: 30 s of latency pulses, 120 s of throughput
    phases."""
    if mode is Mode.THROUGHPUT:
        return 120_000_000_000
    return 30_000_000_000


def drive(pattern: StimulationPattern, gic: Gic,
          sink: list[trace.TraceEvent], duration_ns: int,
          line_ids: Mapping[int, int] | None = None) -> int:
    """Replay the pattern into a controller, recording hardware edges.

    line_ids maps stimulus line index to interrupt id; identity when omitted.
    Returns the number of complete phases driven.  This is the offline
    variant used for analysis fixtures; the simulator proper interleaves the
    same edge schedule with handler activity.
    """
    if duration_ns < pattern.period_ns:
        raise PatternError(
            f"duration {duration_ns} ns is shorter than one "
            f"{pattern.period_ns} ns phase")
    ids = dict(line_ids) if line_ids is not None else {}
    count = 0
    for _, rise, fall in pattern.edges(duration_ns):
        for line in sorted(pattern.lines):
            iid = ids.get(line, line)
            sink.append(trace.TraceEvent(
                trace.quantize(rise), trace.EventKind.HW_RISING, line))
            gic.assert_line(iid, True, rise)
        for line in sorted(pattern.lines):
            iid = ids.get(line, line)
            sink.append(trace.TraceEvent(
                trace.quantize(fall), trace.EventKind.HW_FALLING, line))
            gic.assert_line(iid, False, fall)
        count += 1
    return count
