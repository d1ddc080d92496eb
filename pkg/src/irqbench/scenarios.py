"""Scenario catalog: the measurement configurations and their combinations.

A scenario fixes everything about a run except the seed and duration: how
many interrupts are enabled, their priorities, cache state, core count,
whether handling is spread across cores, and whether a memory stressor runs.
The measured interrupt always has the most urgent priority unless a scenario
says otherwise; background stressors sit at less urgent levels and never
appear in the trace.

Benchmarks are named combinations of scenarios.  Combining takes the union
of the load (interrupts, cores, stressors) and the strictest timing-relevant
settings, and refuses genuinely contradictory cache configurations.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .stimulus import Mode
from .timing import CacheMode

MEASURED_ID = 121
MEASURED_PRIORITY = 0
STRESSOR_ID_BASE = 32
DEFAULT_PRIORITY_LEVELS = 16
MEMORY_ARRAY_BYTES = 96 * 2 ** 20


class ScenarioError(ValueError):
    pass


class MergeError(ScenarioError):
    """Two scenarios demand contradictory configurations."""


def stressor_ids(count: int) -> tuple[int, ...]:
    ids = []
    candidate = STRESSOR_ID_BASE
    while len(ids) < count:
        if candidate != MEASURED_ID:
            ids.append(candidate)
        candidate += 1
    return tuple(ids)


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    modes: frozenset[Mode]
    cache_mode: CacheMode = CacheMode.DISABLED
    cores: int = 1
    parallel_handling: bool = False
    memory_stressor: bool = False
    stressor_priorities: tuple[int, ...] = ()
    stack_profile: str = "bare-metal"
    priority_levels: int = DEFAULT_PRIORITY_LEVELS
    measured_id: int = MEASURED_ID
    measured_priority: int = MEASURED_PRIORITY
    memory_array_bytes: int = MEMORY_ARRAY_BYTES

    def __post_init__(self):
        if not self.modes:
            raise ScenarioError(f"{self.name}: no measurement modes")
        if not 1 <= self.cores <= 4:
            raise ScenarioError(f"{self.name}: cores {self.cores} outside 1..4")
        if self.parallel_handling and self.cores < 2:
            raise ScenarioError(
                f"{self.name}: parallel handling needs at least 2 cores")
        if self.cache_mode is CacheMode.INVALIDATED and (
                self.modes != frozenset({Mode.LATENCY})):
            raise ScenarioError(
                f"{self.name}: cache invalidation in the handler only makes "
                f"sense for latency runs")
        levels = self.priority_levels
        if not 0 <= self.measured_priority < levels:
            raise ScenarioError(
                f"{self.name}: measured priority {self.measured_priority} "
                f"outside 0..{levels - 1}")
        for p in self.stressor_priorities:
            if not 0 <= p < levels:
                raise ScenarioError(
                    f"{self.name}: stressor priority {p} outside "
                    f"0..{levels - 1}")
        if self.memory_stressor and self.memory_array_bytes <= 0:
            raise ScenarioError(f"{self.name}: empty stressor array")

    @property
    def stressor_count(self) -> int:
        return len(self.stressor_priorities)

    @property
    def enabled_interrupt_count(self) -> int:
        return 1 + self.stressor_count

    @property
    def priority_assignment(self) -> dict[int, int]:
        """interrupt id -> priority level, measured interrupt first."""
        out = {self.measured_id: self.measured_priority}
        for iid, prio in zip(stressor_ids(self.stressor_count),
                             self.stressor_priorities):
            out[iid] = prio
        return out

    def measured_trigger_is_level(self, mode: Mode) -> bool:
        """Level-sensitive whenever the line must keep delivering while
        held high: all throughput runs, and parallel-handling scenarios."""
        return mode is Mode.THROUGHPUT or self.parallel_handling

    def describe(self) -> dict:
        return {
            "name": self.name,
            "modes": sorted(m.value for m in self.modes),
            "cache_mode": self.cache_mode.value,
            "cores": self.cores,
            "parallel_handling": self.parallel_handling,
            "memory_stressor": self.memory_stressor,
            "enabled_interrupts": self.enabled_interrupt_count,
            "priority_assignment": {
                str(k): v for k, v in self.priority_assignment.items()},
            "stack_profile": self.stack_profile,
            "priority_levels": self.priority_levels,
        }


_LEAST_URGENT = DEFAULT_PRIORITY_LEVELS - 1

T4_VARIANTS = (1, 36, 72, 108, 144, 180)
T6_VARIANTS = (2, 3, 4)


def _t4(count: int) -> ScenarioConfig:
    return ScenarioConfig(
        name=f"T4-{count}",
        modes=frozenset({Mode.LATENCY}),
        cache_mode=CacheMode.DISABLED,
        cores=2,
        stressor_priorities=(_LEAST_URGENT,) * count)


def _t6(cores: int) -> ScenarioConfig:
    return ScenarioConfig(
        name=f"T6-{cores}",
        modes=frozenset({Mode.LATENCY, Mode.THROUGHPUT}),
        cache_mode=CacheMode.DISABLED,
        cores=cores,
        parallel_handling=True)


_BASE_CASES: dict[str, ScenarioConfig] = {
    "T1": ScenarioConfig(
        name="T1",
        modes=frozenset({Mode.LATENCY, Mode.THROUGHPUT}),
        cache_mode=CacheMode.DISABLED),
    "T2": ScenarioConfig(
        name="T2",
        modes=frozenset({Mode.LATENCY, Mode.THROUGHPUT}),
        cache_mode=CacheMode.ENABLED),
    "T3": ScenarioConfig(
        name="T3",
        modes=frozenset({Mode.LATENCY}),
        cache_mode=CacheMode.INVALIDATED),
    "T5": ScenarioConfig(
        name="T5",
        modes=frozenset({Mode.LATENCY}),
        cache_mode=CacheMode.DISABLED,
        cores=2,
        stressor_priorities=tuple(range(14, 0, -1))),
    "T7": ScenarioConfig(
        name="T7",
        modes=frozenset({Mode.LATENCY}),
        cache_mode=CacheMode.DISABLED,
        cores=4,
        memory_stressor=True),
}

TEST_CASE_NAMES = (
    "T1", "T2", "T3",
    *[f"T4-{v}" for v in T4_VARIANTS],
    "T5",
    *[f"T6-{k}" for k in T6_VARIANTS],
    "T7",
)

BENCHMARK_NAMES = ("B-Lmin", "B-Lmax", "B-Tmax")


def test_case(name: str) -> ScenarioConfig:
    if name in _BASE_CASES:
        return _BASE_CASES[name]
    base, _, variant = name.partition("-")
    if base == "T4" and variant.isdigit() and int(variant) in T4_VARIANTS:
        return _t4(int(variant))
    if base == "T6" and variant.isdigit() and int(variant) in T6_VARIANTS:
        return _t6(int(variant))
    raise ScenarioError(
        f"unknown test case {name!r} (have: {', '.join(TEST_CASE_NAMES)})")


def merge(a: ScenarioConfig, b: ScenarioConfig) -> ScenarioConfig:
    """Combine two scenarios into the run that exercises both at once."""
    if a == b:
        return a
    modes = a.modes & b.modes
    if not modes:
        raise MergeError(
            f"{a.name} and {b.name} share no measurement mode")
    cache = _merge_cache(a, b)
    if a.stack_profile != b.stack_profile:
        raise MergeError(
            f"{a.name} runs on {a.stack_profile}, {b.name} on "
            f"{b.stack_profile}")
    if a.measured_id != b.measured_id or \
            a.measured_priority != b.measured_priority:
        raise MergeError(
            f"{a.name} and {b.name} measure different interrupts")
    merged_stressors: dict[int, int] = {}
    for cfg in (a, b):
        for iid, prio in zip(stressor_ids(cfg.stressor_count),
                             cfg.stressor_priorities):
            # Same background line claimed at two levels: the more urgent
            # one wins, the load it models is a superset either way.
            if iid in merged_stressors:
                merged_stressors[iid] = min(merged_stressors[iid], prio)
            else:
                merged_stressors[iid] = prio
    priorities = tuple(merged_stressors[iid]
                       for iid in sorted(merged_stressors))
    names = sorted({a.name, b.name})
    return ScenarioConfig(
        name="+".join(names),
        modes=frozenset(modes),
        cache_mode=cache,
        cores=max(a.cores, b.cores),
        parallel_handling=a.parallel_handling or b.parallel_handling,
        memory_stressor=a.memory_stressor or b.memory_stressor,
        stressor_priorities=priorities,
        stack_profile=a.stack_profile,
        priority_levels=max(a.priority_levels, b.priority_levels),
        measured_id=a.measured_id,
        measured_priority=a.measured_priority,
        memory_array_bytes=max(a.memory_array_bytes, b.memory_array_bytes))


def _merge_cache(a: ScenarioConfig, b: ScenarioConfig) -> CacheMode:
    pair = {a.cache_mode, b.cache_mode}
    if pair == {CacheMode.ENABLED, CacheMode.INVALIDATED}:
        raise MergeError(
            f"{a.name} and {b.name}: caches cannot be both warm and "
            f"invalidated in the handler")
    # Disabled caches yield to an explicit cache regime from the other side:
    # the combination stresses the configured one.
    for mode in (CacheMode.INVALIDATED, CacheMode.ENABLED):
        if mode in pair:
            return mode
    return CacheMode.DISABLED


@dataclass(frozen=True)
class BenchmarkDef:
    name: str
    mode: Mode
    constituents: tuple[str, ...]
    config: ScenarioConfig


def benchmark(name: str, parallel_cores: int = 4) -> BenchmarkDef:
    """The three named benchmarks.

    parallel_cores picks the parallel-handling variant folded into B-Lmax
    (the most loaded one by default).
    """
    if parallel_cores not in T6_VARIANTS:
        raise ScenarioError(
            f"parallel core count {parallel_cores} not in {T6_VARIANTS}")
    if name == "B-Lmin":
        parts: tuple[str, ...] = ("T2",)
        mode = Mode.LATENCY
    elif name == "B-Lmax":
        parts = ("T4-36", f"T6-{parallel_cores}")
        mode = Mode.LATENCY
    elif name == "B-Tmax":
        parts = ("T6-2", "T2")
        mode = Mode.THROUGHPUT
    else:
        raise ScenarioError(
            f"unknown benchmark {name!r} (have: {', '.join(BENCHMARK_NAMES)})")
    cfg = test_case(parts[0])
    for part in parts[1:]:
        cfg = merge(cfg, test_case(part))
    cfg = replace(cfg, name=name)
    if mode not in cfg.modes:
        raise ScenarioError(f"{name}: merged scenario lost its mode")
    return BenchmarkDef(name, mode, parts, cfg)


def resolve(name: str, parallel_cores: int = 4) -> ScenarioConfig:
    """Look up a test case or benchmark by its public name."""
    if name in BENCHMARK_NAMES:
        return benchmark(name, parallel_cores).config
    return test_case(name)


def all_names() -> tuple[str, ...]:
    return TEST_CASE_NAMES + BENCHMARK_NAMES
