"""Discrete-event simulation of the interrupt delivery path.

The engine replays a stimulation pattern into the controller model and walks
every delivery through its timed legs: line recognition, distributor
selection and forwarding, the core's acknowledge read, vectoring and
software dispatch, the handler body, and the end-of-interrupt write.  Cores
race for pending interrupts exactly as the controller allows; whoever
acknowledges first wins and everyone else reads a spurious id and backs off.

Time is integer nanoseconds throughout.  Ties are broken by scheduling
order, so a run is a pure function of (scenario, mode, timing model, seed,
duration, time scale) and produces a byte-identical capture every time.

Background stressor interrupts fire on their own re-arm timers, modeled
after external pulse generators: a 40 ns pulse per firing, independent of
whether the previous instance has been handled yet.  Their handlers run on
whatever core wins the race but never emit trace events; only the measured
interrupt is instrumented.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from . import trace
from .gic import (MIN_PULSE_NS, SPURIOUS_ID, Gic, InterruptSpec, LineOutcome,
                  Trigger)
from .rng import Stream
from .scenarios import ScenarioConfig, stressor_ids
from .stimulus import (DEFAULT_TIME_SCALE, Mode, StimulationPattern,
                       default_duration_ns, pattern_for)
from .timing import PathContext, TimingModel, DEFAULT_TIMING

STIM_CHANNEL = 0

# rng stream ids; per-core and per-stressor streams are offset from these.
_STREAM_DISTRIBUTOR = 10
_STREAM_CORE_BASE = 100
_STREAM_STRESSOR_BASE = 200

# event tags, processed FIFO within a timestamp
_RISE, _FALL, _POLL, _ACK, _ENTRY, _EOI, _FREE, _REARM, _SFALL = range(9)

# core states
_IDLE, _ACK_WAIT, _HANDLING, _RETIRING = range(4)


class SimError(ValueError):
    pass


@dataclass(frozen=True)
class MemoryStressor:
    """Configuration of the background memory load: a working set far
    larger than the last-level cache, hammered from a set of cores."""

    cores: frozenset[int]
    array_bytes: int


def run_memory_stressor(cores: frozenset[int],
                        array_bytes: int) -> MemoryStressor:
    if not cores:
        raise SimError("memory stressor needs at least one core")
    if array_bytes <= 0:
        raise SimError(f"stressor array of {array_bytes} bytes")
    return MemoryStressor(frozenset(cores), array_bytes)


class Simulator:
    def __init__(self, scenario: ScenarioConfig, mode: Mode,
                 timing: TimingModel | None = None, seed: int = 0,
                 duration_ns: int | None = None,
                 time_scale: int = DEFAULT_TIME_SCALE,
                 pattern: StimulationPattern | None = None,
                 stack: str | None = None):
        if mode not in scenario.modes:
            have = ", ".join(sorted(m.value for m in scenario.modes))
            raise SimError(
                f"{scenario.name} is not measured in {mode.value} mode "
                f"(available: {have})")
        if time_scale < 1:
            raise SimError(f"time scale {time_scale} must be >= 1")
        self.scenario = scenario
        self.mode = mode
        self.timing = timing if timing is not None else DEFAULT_TIMING
        self.seed = seed
        self.time_scale = time_scale
        self.stack = self.timing.stack(stack or scenario.stack_profile)
        self.duration_ns = (duration_ns if duration_ns is not None
                            else default_duration_ns(mode))
        self.sim_end_ns = self.duration_ns // time_scale
        self.pattern = (pattern if pattern is not None
                        else pattern_for(mode, time_scale))
        if self.sim_end_ns < self.pattern.period_ns:
            raise SimError(
                f"duration {self.sim_end_ns} ns holds no complete "
                f"{self.pattern.period_ns} ns stimulation phase")
        if self.pattern.lines != frozenset({STIM_CHANNEL}):
            raise SimError("the measured stimulus drives exactly line 0")

        self.memory_stressor = None
        if scenario.memory_stressor:
            self.memory_stressor = run_memory_stressor(
                frozenset(range(scenario.cores)), scenario.memory_array_bytes)

        self._specs = self._build_specs()
        self.gic = Gic(self._specs, cores=scenario.cores,
                       priority_levels=scenario.priority_levels)
        self.ctx = PathContext(
            cache_mode=scenario.cache_mode,
            stack=self.stack,
            contending_cores=scenario.cores,
            memory_stressor=scenario.memory_stressor,
            enabled_interrupts=scenario.enabled_interrupt_count)

        self._dist_rng = Stream(seed, _STREAM_DISTRIBUTOR)
        self._core_rng = [Stream(seed, _STREAM_CORE_BASE + c)
                          for c in range(scenario.cores)]
        self._stressor_rng = [Stream(seed, _STREAM_STRESSOR_BASE + i)
                              for i in range(scenario.stressor_count)]
        self._stressor_lines = stressor_ids(scenario.stressor_count)

        self._queue: list[tuple[int, int, int, int, int]] = []
        self._seq = 0
        self._core_state = [_IDLE] * scenario.cores
        self._core_active = [0] * scenario.cores
        self._events: list[trace.TraceEvent] = []
        self._phases = 0

    def _build_specs(self) -> list[InterruptSpec]:
        sc = self.scenario
        measured_level = sc.measured_trigger_is_level(self.mode)
        measured_targets = (frozenset(range(sc.cores))
                            if sc.parallel_handling else frozenset({0}))
        specs = [InterruptSpec(
            id=sc.measured_id,
            trigger=Trigger.LEVEL if measured_level else Trigger.EDGE,
            priority=sc.measured_priority,
            targets=measured_targets)]
        all_cores = frozenset(range(sc.cores))
        for iid, prio in zip(stressor_ids(sc.stressor_count),
                             sc.stressor_priorities):
            specs.append(InterruptSpec(
                id=iid, trigger=Trigger.EDGE, priority=prio,
                targets=all_cores))
        return specs

    # -- scheduling ----------------------------------------------------

    def _push(self, t: int, tag: int, a: int = 0, b: int = 0) -> None:
        self._seq += 1
        heapq.heappush(self._queue, (t, self._seq, tag, a, b))

    def run(self) -> trace.TraceCapture:
        for _, rise, fall in self.pattern.edges(self.sim_end_ns):
            self._push(rise, _RISE)
            self._push(fall, _FALL)
            self._phases += 1
        for idx, rng in enumerate(self._stressor_rng):
            self._push(rng.randint(0, self.timing.stressor_rearm_ns), _REARM,
                       idx)

        queue = self._queue
        end = self.sim_end_ns
        handlers = (self._on_rise, self._on_fall, self._on_poll,
                    self._on_ack, self._on_entry, self._on_eoi,
                    self._on_free, self._on_rearm, self._on_sfall)
        while queue:
            t, _, tag, a, b = heapq.heappop(queue)
            if t > end:
                break
            handlers[tag](t, a, b)

        return trace.TraceCapture(events=self._events,
                                  metadata=self._metadata())

    # -- measured stimulus ----------------------------------------------

    def _on_rise(self, t: int, a: int, b: int) -> None:
        self._events.append(trace.TraceEvent(
            trace.quantize(t), trace.EventKind.HW_RISING, STIM_CHANNEL))
        self.gic.assert_line(self.scenario.measured_id, True, t)
        wait = self.timing.recognize_delay(self._dist_rng)
        if self._specs[0].trigger is Trigger.EDGE:
            wait = max(wait, MIN_PULSE_NS)
        self._push(t + wait, _POLL)

    def _on_fall(self, t: int, a: int, b: int) -> None:
        self._events.append(trace.TraceEvent(
            trace.quantize(t), trace.EventKind.HW_FALLING, STIM_CHANNEL))
        outcome = self.gic.assert_line(self.scenario.measured_id, False, t)
        if outcome is LineOutcome.RECOGNIZED:
            # Pulse width resolved only at the falling edge (marginal
            # pulses); the pending state is real now, let cores see it.
            self._wake(t)

    def _on_poll(self, t: int, a: int, b: int) -> None:
        self.gic.poll(t)
        self._wake(t)

    # -- delivery path ----------------------------------------------------

    def _wake(self, t: int) -> None:
        for core in range(self.scenario.cores):
            if self._core_state[core] == _IDLE:
                self._engage(core, t)

    def _engage(self, core: int, t: int) -> None:
        if self._core_state[core] != _IDLE:
            return
        if self.gic.signal_decision(core) is None:
            return
        rng = self._core_rng[core]
        delay = (self.timing.signal_path_delay(self.ctx, rng)
                 + self.timing.ack_delay(self.ctx, rng))
        self._core_state[core] = _ACK_WAIT
        self._push(t + delay, _ACK, core)

    def _on_ack(self, t: int, core: int, b: int) -> None:
        rid = self.gic.acknowledge(core, t)
        if rid == SPURIOUS_ID:
            # Someone else got there first, or the line dropped; the read
            # still happened, try again if anything else is pending.
            self._core_state[core] = _IDLE
            self._engage(core, t)
            return
        self._core_state[core] = _HANDLING
        self._core_active[core] = rid
        delay = self.timing.entry_delay(self.ctx, self._core_rng[core])
        self._push(t + delay, _ENTRY, core, rid)

    def _on_entry(self, t: int, core: int, rid: int) -> None:
        if rid == self.scenario.measured_id:
            self._events.append(trace.TraceEvent(
                trace.quantize(t), trace.EventKind.SW_EVENT, core, rid))
            body = self.timing.isr_body_ns
        else:
            body = self.timing.stressor_body_ns
        self._push(t + body, _EOI, core, rid)

    def _on_eoi(self, t: int, core: int, rid: int) -> None:
        self.gic.end_of_interrupt(core, rid, t)
        self._core_state[core] = _RETIRING
        self._push(t + self.timing.eoi_delay(self.ctx, self._core_rng[core]),
                   _FREE, core)
        # The interrupt may have re-pended (level line still high, or a
        # collapsed re-trigger): other cores can race for it right away.
        self._wake(t)

    def _on_free(self, t: int, core: int, b: int) -> None:
        self._core_state[core] = _IDLE
        self._engage(core, t)

    # -- background stressors ----------------------------------------------

    def _on_rearm(self, t: int, idx: int, b: int) -> None:
        self.gic.assert_line(self._stressor_lines[idx], True, t)
        self._push(t + MIN_PULSE_NS, _SFALL, idx)

    def _on_sfall(self, t: int, idx: int, b: int) -> None:
        outcome = self.gic.assert_line(self._stressor_lines[idx], False, t)
        if outcome is LineOutcome.RECOGNIZED:
            self._wake(t)
        self._push(t + self.timing.rearm_delay(self._stressor_rng[idx]),
                   _REARM, idx)

    # -- results ----------------------------------------------------------

    def _metadata(self) -> dict:
        return {
            "scenario": self.scenario.name,
            "mode": self.mode.value,
            "seed": self.seed,
            "duration_ns": self.duration_ns,
            "time_scale": self.time_scale,
            "sim_duration_ns": self.sim_end_ns,
            "stack": self.stack.name,
            "measured_id": self.scenario.measured_id,
            "stim_channel": STIM_CHANNEL,
            "isr_channels": list(range(self.scenario.cores)),
            "phase_count": self._phases,
            "pattern": {"high_ns": self.pattern.high_ns,
                        "low_ns": self.pattern.low_ns},
            "config": self.scenario.describe(),
        }


def run(scenario: ScenarioConfig, mode: Mode | None = None, *,
        timing: TimingModel | None = None, seed: int = 0,
        duration_ns: int | None = None,
        time_scale: int = DEFAULT_TIME_SCALE,
        pattern: StimulationPattern | None = None,
        stack: str | None = None) -> trace.TraceCapture:
    """Simulate one run and return its capture.

    mode defaults to latency when the scenario supports it.  duration_ns is
    the full-scale procedure duration; simulated time is duration_ns divided
    by time_scale, with the pattern shrunk by the same factor so the phase
    count is preserved.
    """
    if mode is None:
        mode = (Mode.LATENCY if Mode.LATENCY in scenario.modes
                else next(iter(scenario.modes)))
    return Simulator(scenario, mode, timing=timing, seed=seed,
                     duration_ns=duration_ns, time_scale=time_scale,
                     pattern=pattern, stack=stack).run()
