import hashlib

import pytest

from irqbench import analysis, trace
from irqbench.scenarios import ScenarioConfig
from irqbench.scenarios import test_case as case
from irqbench.sim import MemoryStressor, SimError, Simulator, run, \
    run_memory_stressor
from irqbench.stimulus import Mode, StimulationPattern
from irqbench.timing import TimingModel
from irqbench.trace import EventKind

LAT = frozenset({Mode.LATENCY})

SHORT = dict(duration_ns=500_000_000, time_scale=1000)  # 100 phases


def sw_events(capture, iid):
    return [e for e in capture.events
            if e.kind == EventKind.SW_EVENT and e.payload == iid]


def test_identical_inputs_give_identical_bytes():
    digests = set()
    for _ in range(3):
        cap = run(case("T2"), Mode.LATENCY, seed=7, **SHORT)
        digests.add(hashlib.sha256(trace.dumps(cap)).hexdigest())
    assert len(digests) == 1


def test_different_seeds_diverge():
    a = run(case("T2"), Mode.LATENCY, seed=0, **SHORT)
    b = run(case("T2"), Mode.LATENCY, seed=1, **SHORT)
    assert trace.dumps(a) != trace.dumps(b)


def test_edge_latency_conserves_deliveries():
    # One software event per stimulation phase: none lost, none duplicated.
    for name in ("T1", "T2", "T3", "T4-36"):
        cap = run(case(name), Mode.LATENCY, seed=3, **SHORT)
        phases = cap.metadata["phase_count"]
        assert phases == 100
        assert len(sw_events(cap, cap.metadata["measured_id"])) == phases
        res = analysis.extract_latencies(cap, 0, cap.metadata["isr_channels"])
        assert res.misses == 0
        assert len(res.samples) == phases


def test_events_are_sorted_and_channels_disciplined():
    cap = run(case("T4-36"), Mode.LATENCY, seed=5, **SHORT)
    ticks = [e.tick for e in cap.events]
    assert ticks == sorted(ticks)
    hw = [e for e in cap.events if e.kind != EventKind.SW_EVENT]
    # Background stressor lines never show up in the capture.
    assert {e.channel for e in hw} == {0}
    sw = [e for e in cap.events if e.kind == EventKind.SW_EVENT]
    assert {e.payload for e in sw} == {cap.metadata["measured_id"]}
    assert all(e.channel < case("T4-36").cores for e in sw)


def test_metadata_is_complete():
    cap = run(case("T6-2"), Mode.THROUGHPUT, seed=1,
              duration_ns=20_000_000_000, time_scale=100_000)
    meta = cap.metadata
    for key in ("scenario", "mode", "seed", "duration_ns", "time_scale",
                "sim_duration_ns", "stack", "measured_id", "stim_channel",
                "isr_channels", "phase_count", "pattern", "config"):
        assert key in meta, key
    assert meta["scenario"] == "T6-2"
    assert meta["mode"] == "throughput"
    assert meta["isr_channels"] == [0, 1]
    assert meta["config"]["enabled_interrupts"] == 1


def test_throughput_saturates_the_high_phase():
    cap = run(case("T2"), Mode.THROUGHPUT, seed=2,
              duration_ns=20_000_000_000, time_scale=100_000)
    phases = cap.metadata["phase_count"]
    assert phases == 2
    sw = sw_events(cap, cap.metadata["measured_id"])
    # Hundreds of deliveries per 97.5 us high stretch, nothing in the lows.
    assert len(sw) > 100 * phases
    res = analysis.extract_throughputs(cap, 0, [0])
    assert len(res.samples) == phases
    for s in res.samples:
        assert s.throughput_hz > 1e6


def test_parallel_handling_spreads_across_cores():
    cap = run(case("T6-4"), Mode.LATENCY, seed=4, **SHORT)
    cores_seen = {e.channel for e in
                  sw_events(cap, cap.metadata["measured_id"])}
    assert len(cores_seen) > 1


def test_narrow_pulses_recognized_only_at_threshold():
    cfg = ScenarioConfig(name="edge-width", modes=LAT,
                         cache_mode=case("T2").cache_mode)
    for width, expected in ((36, 0), (40, 50)):
        pattern = StimulationPattern(high_ns=width, low_ns=5000 - width,
                                     allow_narrow=True)
        cap = run(cfg, Mode.LATENCY, seed=9, duration_ns=250_000,
                  time_scale=1, pattern=pattern)
        assert cap.metadata["phase_count"] == 50
        assert len(sw_events(cap, cfg.measured_id)) == expected


def test_full_scale_latency_run_is_exact():
    cap = run(case("T2"), Mode.LATENCY, seed=0,
              duration_ns=1_000_000_000, time_scale=1)
    assert cap.metadata["phase_count"] == 200
    assert cap.metadata["sim_duration_ns"] == 1_000_000_000
    res = analysis.extract_latencies(cap, 0, [0])
    assert len(res.samples) == 200


def test_stressors_do_not_starve_the_measured_interrupt():
    cap = run(case("T4-180"), Mode.LATENCY, seed=6, **SHORT)
    res = analysis.extract_latencies(cap, 0, cap.metadata["isr_channels"])
    assert res.misses == 0
    assert len(res.samples) == 100


def test_memory_stressor_handle():
    ms = run_memory_stressor(frozenset({0, 1}), 96 * 2 ** 20)
    assert isinstance(ms, MemoryStressor)
    with pytest.raises(SimError):
        run_memory_stressor(frozenset(), 1024)
    with pytest.raises(SimError):
        run_memory_stressor(frozenset({0}), 0)


def test_mode_must_be_supported():
    with pytest.raises(SimError, match="not measured"):
        Simulator(case("T3"), Mode.THROUGHPUT)


def test_duration_must_cover_a_phase():
    with pytest.raises(SimError, match="complete"):
        Simulator(case("T2"), Mode.LATENCY, duration_ns=4_000_000,
                  time_scale=1000)


def test_time_scale_must_be_positive():
    with pytest.raises(SimError, match="time scale"):
        Simulator(case("T2"), Mode.LATENCY, time_scale=0)


def test_custom_timing_slows_the_path():
    slow = TimingModel(uncached_dispatch_extra_ns=1000, cache_refill_ns=2000)
    cap = run(case("T1"), Mode.LATENCY, seed=1, timing=slow, **SHORT)
    res = analysis.extract_latencies(cap, 0, [0])
    fast = run(case("T1"), Mode.LATENCY, seed=1, **SHORT)
    res_fast = analysis.extract_latencies(fast, 0, [0])
    assert min(s.latency_ns for s in res.samples) > \
        max(s.latency_ns for s in res_fast.samples)


def test_default_mode_prefers_latency():
    cap = run(case("T2"), seed=0, **SHORT)
    assert cap.metadata["mode"] == "latency"
