"""GICv2-style distributor and CPU interface state machine.

Models the part of the interrupt delivery chain that lives in the
controller: recognizing line transitions, latching pending state, picking
the highest-priority pending interrupt per core, filtering it against the
priority mask and the running priority, and the acknowledge /
end-of-interrupt handshake.  All timing lives elsewhere; this module is a
pure state machine over explicit nanosecond timestamps.

Numerically smaller priority values are more urgent.  A pulse on an
edge-triggered line must stay high for at least MIN_PULSE_NS to be latched,
so the outcome of a rising transition is not knowable at the instant it
happens: assert_line reports EVALUATING and the verdict falls out of the
call that resolves it (the falling edge, or any later operation once the
width requirement is already met).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

SPURIOUS_ID = 1023
MAX_INTERRUPT_ID = 1019
MIN_PULSE_NS = 40
MAX_CORES = 4


class GicError(ValueError):
    """Protocol misuse: bad configuration or an out-of-order operation."""


class Trigger(enum.Enum):
    EDGE = "edge"
    LEVEL = "level"


class Lifecycle(enum.Enum):
    INACTIVE = "inactive"
    PENDING = "pending"
    ACTIVE = "active"
    ACTIVE_AND_PENDING = "active-and-pending"


class LineOutcome(enum.Enum):
    """What a single assert_line call did."""

    RECOGNIZED = "recognized"
    IGNORED = "ignored"
    EVALUATING = "evaluating"


@dataclass(frozen=True)
class InterruptSpec:
    """Static configuration of one interrupt line."""

    id: int
    trigger: Trigger
    priority: int = 0
    targets: frozenset[int] = frozenset({0})
    enabled: bool = True


@dataclass(frozen=True)
class InterruptState:
    lifecycle: Lifecycle
    line_level: bool
    pend_count: int


@dataclass(frozen=True)
class CpuInterfaceState:
    priority_mask: int
    running_priority: int
    active_id: int | None
    signaled: int | None


class _Line:
    __slots__ = ("spec", "lifecycle", "level", "pend_count", "rise_ns",
                 "last_ns")

    def __init__(self, spec: InterruptSpec):
        self.spec = spec
        self.lifecycle = Lifecycle.INACTIVE
        self.level = False
        self.pend_count = 0
        self.rise_ns: int | None = None   # open edge-width evaluation
        self.last_ns = -1


class _Iface:
    __slots__ = ("priority_mask", "active_id", "signaled")

    def __init__(self, mask: int):
        self.priority_mask = mask
        self.active_id: int | None = None
        self.signaled: int | None = None


class Gic:
    """Distributor plus one CPU interface per core.

    priority_levels is the number of distinct urgency levels; the idle
    running priority and the reset priority mask both sit one past the least
    urgent level so that everything passes by default.
    """

    def __init__(self, specs: list[InterruptSpec] | tuple[InterruptSpec, ...],
                 cores: int = 1, priority_levels: int = 16):
        if not 1 <= cores <= MAX_CORES:
            raise GicError(f"core count {cores} outside 1..{MAX_CORES}")
        if not 2 <= priority_levels <= 256:
            raise GicError(f"priority levels {priority_levels} outside 2..256")
        self.cores = cores
        self.priority_levels = priority_levels
        self.idle_priority = priority_levels
        self._lines: dict[int, _Line] = {}
        for spec in specs:
            self._check_spec(spec)
            if spec.id in self._lines:
                raise GicError(f"duplicate interrupt id {spec.id}")
            self._lines[spec.id] = _Line(spec)
        self._order = sorted(self._lines)
        self._ifaces = [_Iface(priority_levels) for _ in range(cores)]
        self._now = 0

    def _check_spec(self, spec: InterruptSpec) -> None:
        if not 0 <= spec.id <= MAX_INTERRUPT_ID:
            raise GicError(f"interrupt id {spec.id} outside 0..1019")
        if not 0 <= spec.priority < self.priority_levels:
            raise GicError(
                f"interrupt {spec.id}: priority {spec.priority} outside "
                f"0..{self.priority_levels - 1}")
        if not spec.targets:
            raise GicError(f"interrupt {spec.id}: empty target set")
        bad = [c for c in spec.targets if not 0 <= c < self.cores]
        if bad:
            raise GicError(
                f"interrupt {spec.id}: target core {bad[0]} not configured")

    # -- line side ---------------------------------------------------------

    def assert_line(self, interrupt_id: int, level: bool,
                    time_ns: int) -> LineOutcome:
        """Drive one line to the given level at time_ns."""
        line = self._line(interrupt_id)
        if time_ns < line.last_ns:
            raise GicError(
                f"interrupt {interrupt_id}: time {time_ns} precedes "
                f"{line.last_ns}")
        line.last_ns = time_ns
        self._now = max(self._now, time_ns)
        outcome = self._transition(line, level, time_ns)
        self._settle(time_ns)
        return outcome

    def poll(self, time_ns: int) -> None:
        """Advance time so edge pulses past the width threshold latch."""
        if time_ns < self._now:
            raise GicError(f"poll time {time_ns} precedes {self._now}")
        self._now = time_ns
        self._settle(time_ns)

    def _transition(self, line: _Line, level: bool,
                    time_ns: int) -> LineOutcome:
        if level == line.level:
            return LineOutcome.IGNORED
        line.level = level
        if line.spec.trigger is Trigger.LEVEL:
            if level:
                self._pend(line)
                return LineOutcome.RECOGNIZED
            # Line released before anyone claimed it: pending evaporates.
            if line.lifecycle is Lifecycle.PENDING:
                line.lifecycle = Lifecycle.INACTIVE
            elif line.lifecycle is Lifecycle.ACTIVE_AND_PENDING:
                line.lifecycle = Lifecycle.ACTIVE
            return LineOutcome.IGNORED
        # Edge-triggered: a rising transition opens a width evaluation; the
        # falling transition (or sufficient elapsed time) closes it.
        if level:
            line.rise_ns = time_ns
            return LineOutcome.EVALUATING
        if line.rise_ns is None:
            return LineOutcome.IGNORED
        width = time_ns - line.rise_ns
        line.rise_ns = None
        if width >= MIN_PULSE_NS:
            self._pend(line)
            return LineOutcome.RECOGNIZED
        return LineOutcome.IGNORED

    def _settle(self, time_ns: int) -> None:
        for iid in self._order:
            line = self._lines[iid]
            if (line.rise_ns is not None and line.level
                    and time_ns - line.rise_ns >= MIN_PULSE_NS):
                line.rise_ns = None
                self._pend(line)

    def _pend(self, line: _Line) -> None:
        if line.lifecycle is Lifecycle.INACTIVE:
            line.lifecycle = Lifecycle.PENDING
        elif line.lifecycle in (Lifecycle.ACTIVE,
                                Lifecycle.ACTIVE_AND_PENDING):
            # Re-trigger while the handler runs: the controller holds a
            # single pending bit, so any number of edges here collapses to
            # one extra delivery.
            line.lifecycle = Lifecycle.ACTIVE_AND_PENDING
            line.pend_count += 1
        # Already PENDING: collapsed, nothing changes.

    # -- core side ---------------------------------------------------------

    def select_pending(self, core: int) -> int | None:
        """Distributor choice for one core: most urgent pending interrupt
        that is enabled and targets the core, lowest id on ties."""
        self._core_index(core)
        best: tuple[int, int] | None = None
        for iid in self._order:
            line = self._lines[iid]
            spec = line.spec
            if (line.lifecycle is Lifecycle.PENDING and spec.enabled
                    and core in spec.targets):
                key = (spec.priority, spec.id)
                if best is None or key < best:
                    best = key
        return None if best is None else best[1]

    def signal_decision(self, core: int) -> int | None:
        """CPU interface filter: forward the selected interrupt only if it
        beats both the priority mask and the running priority."""
        iface = self._ifaces[self._core_index(core)]
        chosen = self.select_pending(core)
        iface.signaled = None
        if chosen is None:
            return None
        prio = self._lines[chosen].spec.priority
        running = self._running_priority(iface)
        if prio < iface.priority_mask and prio < running:
            iface.signaled = chosen
            return chosen
        return None

    def acknowledge(self, core: int, time_ns: int) -> int:
        """Core reads the interrupt id, activating it, or gets SPURIOUS_ID
        when nothing (any longer) warrants a signal."""
        iface = self._ifaces[self._core_index(core)]
        self.poll(time_ns)
        if iface.active_id is not None:
            # One interrupt is already being handled on this core; nesting
            # is not modeled, the handler runs to EOI first.
            return SPURIOUS_ID
        chosen = self.signal_decision(core)
        if chosen is None:
            return SPURIOUS_ID
        line = self._lines[chosen]
        if line.spec.trigger is Trigger.LEVEL and line.level:
            line.lifecycle = Lifecycle.ACTIVE_AND_PENDING
        elif line.pend_count > 0:
            line.lifecycle = Lifecycle.ACTIVE_AND_PENDING
        else:
            line.lifecycle = Lifecycle.ACTIVE
        iface.active_id = chosen
        iface.signaled = None
        return chosen

    def end_of_interrupt(self, core: int, interrupt_id: int,
                         time_ns: int) -> None:
        iface = self._ifaces[self._core_index(core)]
        self.poll(time_ns)
        if iface.active_id != interrupt_id:
            raise GicError(
                f"end of interrupt {interrupt_id} on core {core}, but "
                f"active is {iface.active_id}")
        line = self._lines[interrupt_id]
        if line.lifecycle is Lifecycle.ACTIVE_AND_PENDING:
            line.lifecycle = Lifecycle.PENDING
            line.pend_count = 0
        elif line.spec.trigger is Trigger.LEVEL and line.level:
            line.lifecycle = Lifecycle.PENDING
        else:
            line.lifecycle = Lifecycle.INACTIVE
        iface.active_id = None

    def set_priority_mask(self, core: int, level: int) -> None:
        """Interrupts pass the mask only if strictly more urgent (smaller)
        than it; priority_levels therefore means fully open, 0 fully shut."""
        if not 0 <= level <= self.priority_levels:
            raise GicError(
                f"mask {level} outside 0..{self.priority_levels}")
        self._ifaces[self._core_index(core)].priority_mask = level

    # -- introspection -----------------------------------------------------

    def state(self, interrupt_id: int) -> InterruptState:
        line = self._line(interrupt_id)
        return InterruptState(line.lifecycle, line.level, line.pend_count)

    def cpu_state(self, core: int) -> CpuInterfaceState:
        iface = self._ifaces[self._core_index(core)]
        return CpuInterfaceState(
            priority_mask=iface.priority_mask,
            running_priority=self._running_priority(iface),
            active_id=iface.active_id,
            signaled=iface.signaled)

    def interrupt_ids(self) -> list[int]:
        return list(self._order)

    def _running_priority(self, iface: _Iface) -> int:
        if iface.active_id is None:
            return self.idle_priority
        return self._lines[iface.active_id].spec.priority

    def _line(self, interrupt_id: int) -> _Line:
        try:
            return self._lines[interrupt_id]
        except KeyError:
            raise GicError(f"interrupt {interrupt_id} not configured") from None

    def _core_index(self, core: int) -> int:
        if not 0 <= core < self.cores:
            raise GicError(f"core {core} not configured (0..{self.cores - 1})")
        return core
