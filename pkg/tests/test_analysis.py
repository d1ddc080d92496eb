import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from irqbench import analysis
from irqbench.analysis import (AnalysisError, SummaryReport,
                               export_report_csv, extract_latencies,
                               extract_throughputs, percentile, summarize)
from irqbench.rng import Stream
from irqbench.trace import EventKind, TraceCapture, TraceEvent

from .reference import naive_latencies, naive_throughputs

R, F, S = EventKind.HW_RISING, EventKind.HW_FALLING, EventKind.SW_EVENT


def cap(*events):
    return TraceCapture(events=[TraceEvent(*e) for e in events])


def test_latency_is_first_software_event_per_phase():
    c = cap((100, R, 0), (110, S, 0, 121), (120, S, 0, 121),
            (200, R, 0), (258, S, 0, 121))
    res = extract_latencies(c, 0, [0])
    assert [(s.phase_index, s.latency_ns) for s in res.samples] == \
        [(0, 40), (1, 232)]
    assert res.misses == 0


def test_same_tick_entry_counts_as_zero_latency():
    # Stream order decides: the entry landed in the same 4 ns tick as the
    # edge, which legitimately measures as 0 ns.
    c = cap((100, R, 0), (100, S, 0, 121))
    res = extract_latencies(c, 0, [0])
    assert [s.latency_ns for s in res.samples] == [0]


def test_phase_without_entry_is_a_miss_not_a_sample():
    c = cap((100, R, 0), (200, R, 0), (210, S, 0, 121), (300, R, 0))
    res = extract_latencies(c, 0, [0])
    assert res.misses == 2
    assert [(s.phase_index, s.latency_ns) for s in res.samples] == [(1, 40)]
    assert res.phase_count == 3


def test_isr_channel_filter():
    c = cap((100, R, 0), (110, S, 1, 121), (120, S, 0, 121))
    only0 = extract_latencies(c, 0, [0])
    assert [s.latency_ns for s in only0.samples] == [80]
    both = extract_latencies(c, 0, [0, 1])
    assert [s.latency_ns for s in both.samples] == [40]


def test_throughput_counts_over_high_duration():
    c = cap((0, R, 0), (5, S, 0, 121), (10, S, 0, 121), (2500, F, 0),
            (3000, R, 0), (3010, S, 0, 121), (5500, F, 0))
    res = extract_throughputs(c, 0, [0])
    assert [(s.phase_index, s.isr_count, s.high_ns) for s in res.samples] \
        == [(0, 2, 10000), (1, 1, 10000)]
    assert res.samples[0].throughput_hz == pytest.approx(200_000.0)


def test_throughput_warns_on_too_few_phases():
    res = extract_throughputs(cap((0, R, 0), (10, F, 0)), 0, [0])
    assert len(res.samples) == 1
    assert any("phase" in w for w in res.warnings)


def test_throughput_skips_unusable_phases():
    c = cap((0, R, 0), (0, F, 0), (10, S, 0, 121),
            (100, R, 0), (120, S, 0, 121))
    res = extract_throughputs(c, 0, [0])
    assert res.samples == []
    assert len([w for w in res.warnings if "skipped" in w]) == 2


# -- oracle equivalence (small here; the wide sweep runs in acceptance) ----


def random_capture(rng: Stream, max_events: int) -> TraceCapture:
    events = []
    tick = 0
    for _ in range(rng.randint(0, max_events)):
        tick += rng.randint(0, 30)
        kind = (R, F, S)[rng.randint(0, 2)]
        channel = rng.randint(0, 2)
        payload = 121 if kind == S else 0
        events.append(TraceEvent(tick, kind, channel, payload))
    return TraceCapture(events=events)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_extraction_matches_reference(seed):
    c = random_capture(Stream(seed, 1), 120)
    chans = {0, 1}
    mine = extract_latencies(c, 0, chans)
    ref_samples, ref_misses = naive_latencies(c, 0, chans)
    assert [(s.phase_index, s.entry_tick - s.rise_tick)
            for s in mine.samples] == ref_samples
    assert mine.misses == ref_misses
    mine_t = extract_throughputs(c, 0, chans)
    assert [(s.phase_index, s.isr_count, s.high_ns)
            for s in mine_t.samples] == naive_throughputs(c, 0, chans, 4)


# -- summaries -------------------------------------------------------------


def test_percentile_interpolates_linearly():
    values = list(range(1, 101))
    assert percentile(values, 50) == 50.5
    assert percentile(values, 95) == pytest.approx(95.05)
    assert percentile(values, 100) == 100
    assert percentile(values, 0) == 1
    assert percentile([7], 99) == 7
    with pytest.raises(AnalysisError):
        percentile([], 50)


def test_summarize_basic_stats():
    rep = summarize([4, 1, 3, 2], scenario="T2", mode="latency", unit="ns",
                    misses=1)
    assert (rep.count, rep.misses) == (4, 1)
    assert rep.min == 1 and rep.max == 4
    assert rep.median == 2.5
    assert rep.samples == [4.0, 1.0, 3.0, 2.0]


def test_summarize_empty_is_a_warning_not_a_crash():
    rep = summarize([], scenario="x", mode="latency", unit="ns", misses=5)
    assert rep.count == 0
    assert rep.median is None
    assert "no samples" in rep.warnings


def test_report_json_roundtrip_and_version_gate():
    rep = summarize([1.0, 2.0], scenario="T2", mode="latency", unit="ns",
                    metadata={"seed": 3})
    back = SummaryReport.from_dict(json.loads(rep.to_json()))
    assert back == rep
    bad = rep.to_dict()
    bad["schema_version"] = 99
    with pytest.raises(AnalysisError, match="schema version"):
        SummaryReport.from_dict(bad)


def test_report_fields_are_stable():
    rep = summarize([1.0], scenario="T2", mode="latency", unit="ns")
    assert list(rep.to_dict()) == [
        "schema_version", "scenario", "mode", "unit", "count", "misses",
        "min", "median", "max", "p95", "p99", "samples", "warnings",
        "metadata"]


def test_csv_mirrors_the_report():
    rep = summarize([232.0, 240.0], scenario="T2", mode="latency", unit="ns")
    out = io.StringIO()
    assert export_report_csv(rep, out) == 2
    lines = out.getvalue().splitlines()
    assert lines[0] == \
        "schema_version,scenario,mode,unit,sample_index,value"
    assert lines[1] == "1,T2,latency,ns,0,232.0"


def test_report_for_dispatches_on_mode():
    c = cap((0, R, 0), (40, S, 0, 121), (100, F, 0))
    lat = analysis.report_for(c, "latency", 0, [0])
    assert lat.unit == "ns"
    thr = analysis.report_for(c, "throughput", 0, [0])
    assert thr.unit == "Hz"
    with pytest.raises(AnalysisError):
        analysis.report_for(c, "power", 0, [0])
