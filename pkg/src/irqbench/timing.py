"""Timing model: how long each leg of the delivery path takes.

Stage durations are base nanosecond costs plus bounded uniform jitter, all
integers.  The defaults are calibrated so that the reference single-interrupt
scenario (caches on, one core, no load) lands on a 232 ns median entry
latency under both software stacks, matching the hardware rig this simulator
stands in for.  Jitter bounds are kept strictly below their base cost so a
stage can never dominate the path by noise alone.

The sum of the hardware-side bases is 140 ns (recognize 40, select 20,
forward 12, signal 12, ack 32, vector 24).  Six of those stages carry a
uniform 0..8 ns jitter whose summed median is 24 ns.  The bare-metal stack
adds a 60 ns dispatch with 0..16 ns jitter (median 8); the RTOS stack a
64 ns dispatch with 0..8 ns jitter (median 4).  Both stacks therefore center
on 140 + 24 + 68 = 232 ns, the RTOS spread being visibly narrower.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields, replace
from typing import TextIO

from .rng import Stream


class TimingError(ValueError):
    pass


class CacheMode(enum.Enum):
    DISABLED = "disabled"
    ENABLED = "enabled"
    INVALIDATED = "invalidated"


@dataclass(frozen=True)
class StackProfile:
    """Software dispatch cost from vector entry to the handler body."""

    name: str
    dispatch_ns: int
    dispatch_jitter_ns: int

    def validate(self) -> None:
        if self.dispatch_ns <= 0:
            raise TimingError(f"stack {self.name}: dispatch must be > 0")
        if not 0 <= self.dispatch_jitter_ns < self.dispatch_ns:
            raise TimingError(
                f"stack {self.name}: jitter {self.dispatch_jitter_ns} not "
                f"below dispatch {self.dispatch_ns}")


BARE_METAL = StackProfile("bare-metal", 60, 16)
RTOS = StackProfile("rtos", 64, 8)


@dataclass(frozen=True)
class PathContext:
    """Everything the samplers need to know about the run configuration."""

    cache_mode: CacheMode = CacheMode.ENABLED
    stack: StackProfile = BARE_METAL
    contending_cores: int = 1
    memory_stressor: bool = False
    enabled_interrupts: int = 1


@dataclass(frozen=True)
class TimingModel:
    recognize_ns: int = 40
    select_ns: int = 20
    select_per_interrupt_ns: int = 1
    forward_ns: int = 12
    signal_ns: int = 12
    ack_ns: int = 32
    vector_ns: int = 24
    step_jitter_ns: int = 8
    uncached_dispatch_extra_ns: int = 320
    cache_refill_ns: int = 500
    contention_per_core_ns: int = 40
    memory_delay_ns: int = 120
    memory_accesses: int = 4
    isr_body_ns: int = 24
    stressor_body_ns: int = 16
    eoi_ns: int = 32
    stressor_rearm_ns: int = 50_000
    stacks: tuple[StackProfile, ...] = (BARE_METAL, RTOS)

    def __post_init__(self):
        for f in fields(self):
            if f.name == "stacks":
                continue
            v = getattr(self, f.name)
            if not isinstance(v, int) or v < 0:
                raise TimingError(f"{f.name} must be a non-negative integer")
        bases = [self.recognize_ns, self.select_ns, self.forward_ns,
                 self.signal_ns, self.ack_ns, self.vector_ns]
        if self.step_jitter_ns >= min(bases):
            raise TimingError(
                f"step jitter {self.step_jitter_ns} not below the smallest "
                f"stage base {min(bases)}")
        if self.uncached_dispatch_extra_ns == 0:
            raise TimingError("uncached dispatch must cost more than cached")
        if self.cache_refill_ns <= self.uncached_dispatch_extra_ns:
            raise TimingError(
                "invalidated caches must cost more than disabled ones")
        if not self.stacks:
            raise TimingError("no stack profiles")
        names = [s.name for s in self.stacks]
        if len(set(names)) != len(names):
            raise TimingError(f"duplicate stack profile names in {names}")
        for s in self.stacks:
            s.validate()
        if self.stressor_rearm_ns < 2:
            raise TimingError("stressor re-arm interval too small to jitter")

    def stack(self, name: str) -> StackProfile:
        for s in self.stacks:
            if s.name == name:
                return s
        known = ", ".join(s.name for s in self.stacks)
        raise TimingError(f"unknown stack profile {name!r} (have: {known})")

    # -- per-stage samplers --------------------------------------------

    def _j(self, rng: Stream) -> int:
        return rng.randint(0, self.step_jitter_ns)

    def contention_delay(self, ctx: PathContext, rng: Stream) -> int:
        """Interconnect arbitration cost of one transaction; zero when a
        single core owns the path."""
        k = ctx.contending_cores
        if k <= 1:
            return 0
        return rng.randint(0, self.contention_per_core_ns * (k - 1))

    def recognize_delay(self, rng: Stream) -> int:
        return self.recognize_ns + self._j(rng)

    def signal_path_delay(self, ctx: PathContext, rng: Stream) -> int:
        """Distributor selection through the signal reaching the core."""
        scan = self.select_per_interrupt_ns * (ctx.enabled_interrupts - 1)
        return (self.select_ns + scan + self._j(rng)
                + self.forward_ns + self._j(rng)
                + self.signal_ns + self._j(rng)
                + self.contention_delay(ctx, rng))

    def ack_delay(self, ctx: PathContext, rng: Stream) -> int:
        return (self.ack_ns + self._j(rng)
                + self.contention_delay(ctx, rng))

    def entry_delay(self, ctx: PathContext, rng: Stream) -> int:
        """Vectoring plus software dispatch up to the first handler
        instruction, including cache and memory-load effects."""
        d = self.vector_ns + self._j(rng)
        d += ctx.stack.dispatch_ns
        d += rng.randint(0, ctx.stack.dispatch_jitter_ns)
        if ctx.cache_mode is CacheMode.DISABLED:
            # Uncached fetches go out to memory, so they also arbitrate.
            d += self.uncached_dispatch_extra_ns
            d += self.contention_delay(ctx, rng)
        elif ctx.cache_mode is CacheMode.INVALIDATED:
            d += self.cache_refill_ns
            d += self.contention_delay(ctx, rng)
        if ctx.memory_stressor:
            for _ in range(self.memory_accesses):
                d += rng.randint(0, self.memory_delay_ns)
            d += self.contention_delay(ctx, rng)
        return d

    def isr_path_delay(self, ctx: PathContext, rng: Stream) -> int:
        """Full line-to-handler latency for one uncontested delivery."""
        return (self.recognize_delay(rng)
                + self.signal_path_delay(ctx, rng)
                + self.ack_delay(ctx, rng)
                + self.entry_delay(ctx, rng))

    def eoi_delay(self, ctx: PathContext, rng: Stream) -> int:
        return (self.eoi_ns + self._j(rng)
                + self.contention_delay(ctx, rng))

    def rearm_delay(self, rng: Stream) -> int:
        """Interval before a background stressor fires again, spread over
        +/- half the nominal interval so stressors do not phase-lock."""
        half = self.stressor_rearm_ns // 2
        return self.stressor_rearm_ns - half + rng.randint(0, 2 * half)


DEFAULT_TIMING = TimingModel()

_STACK_PREFIX = "stack_"
_DISPATCH_SUFFIX = "_dispatch_ns"
_JITTER_SUFFIX = "_dispatch_jitter_ns"


def save_timing(model: TimingModel, sink: TextIO) -> None:
    """Flat key = value form, one integer per line, keys sorted."""
    pairs: dict[str, int] = {}
    for f in fields(model):
        if f.name == "stacks":
            continue
        pairs[f.name] = getattr(model, f.name)
    for s in model.stacks:
        pairs[f"{_STACK_PREFIX}{s.name}{_DISPATCH_SUFFIX}"] = s.dispatch_ns
        pairs[f"{_STACK_PREFIX}{s.name}{_JITTER_SUFFIX}"] = \
            s.dispatch_jitter_ns
    for key in sorted(pairs):
        sink.write(f"{key} = {pairs[key]}\n")


def load_timing(source: TextIO) -> TimingModel:
    """Parse the save_timing format.  Unknown keys are an error; missing
    keys keep their defaults; '#' starts a comment."""
    scalars: dict[str, int] = {}
    stacks: dict[str, dict[str, int]] = {}
    known = {f.name for f in fields(TimingModel)} - {"stacks"}
    for lineno, raw in enumerate(source, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise TimingError(f"line {lineno}: expected key = value")
        key, _, value = text.partition("=")
        key = key.strip()
        try:
            number = int(value.strip())
        except ValueError:
            raise TimingError(
                f"line {lineno}: {key}: {value.strip()!r} is not an "
                f"integer") from None
        if key in known:
            scalars[key] = number
        elif key.startswith(_STACK_PREFIX) and key.endswith(_DISPATCH_SUFFIX):
            name = key[len(_STACK_PREFIX):-len(_DISPATCH_SUFFIX)]
            stacks.setdefault(name, {})["dispatch_ns"] = number
        elif key.startswith(_STACK_PREFIX) and key.endswith(_JITTER_SUFFIX):
            name = key[len(_STACK_PREFIX):-len(_JITTER_SUFFIX)]
            stacks.setdefault(name, {})["dispatch_jitter_ns"] = number
        else:
            raise TimingError(f"line {lineno}: unknown key {key!r}")
    profiles = []
    for name in sorted(stacks):
        spec = stacks[name]
        if "dispatch_ns" not in spec or "dispatch_jitter_ns" not in spec:
            raise TimingError(
                f"stack {name!r} needs both dispatch and jitter keys")
        profiles.append(StackProfile(name, spec["dispatch_ns"],
                                     spec["dispatch_jitter_ns"]))
    model = TimingModel(**scalars) if scalars else TimingModel()
    if profiles:
        model = replace(model, stacks=tuple(profiles))
    return model


def load_timing_file(path: str) -> TimingModel:
    with open(path) as f:
        return load_timing(f)


def save_timing_file(model: TimingModel, path: str) -> None:
    with open(path, "w") as f:
        save_timing(model, f)
