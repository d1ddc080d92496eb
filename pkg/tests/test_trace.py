import io

import pytest
from hypothesis import given, strategies as st

from irqbench import trace
from irqbench.trace import (EventKind, TraceCapture, TraceError, TraceEvent,
                            dumps, loads, quantize)


def test_tick_is_4ns_and_quantize_rounds_down():
    assert trace.TICK_NS == 4
    assert quantize(0) == 0
    assert quantize(3) == 0
    assert quantize(4) == 1
    assert quantize(231) == 57
    assert quantize(232) == 58
    with pytest.raises(TraceError):
        quantize(-1)


@given(st.integers(0, 10 ** 15), st.integers(0, 10 ** 6))
def test_quantize_monotone(ns, delta):
    assert quantize(ns) <= quantize(ns + delta)


def _event_lists():
    event = st.builds(
        TraceEvent,
        tick=st.integers(0, 2 ** 40),
        kind=st.sampled_from(list(EventKind)),
        channel=st.integers(0, 2 ** 16 - 1),
        payload=st.integers(0, 2 ** 32 - 1))
    return st.lists(event, max_size=60).map(
        lambda evs: sorted(evs, key=lambda e: e.tick))


@given(_event_lists(), st.dictionaries(
    st.text(min_size=1, max_size=8), st.integers(-10, 10), max_size=4))
def test_roundtrip_identity(events, metadata):
    cap = TraceCapture(events=events, metadata=metadata)
    back = loads(dumps(cap))
    assert back.events == cap.events
    assert back.metadata == cap.metadata
    assert back.tick_ns == cap.tick_ns


def test_empty_capture_is_exactly_18_bytes():
    blob = dumps(TraceCapture())
    assert len(blob) == 18
    assert blob[:4] == b"ITRC"
    assert loads(blob).events == []
    assert loads(blob).metadata == {}


def test_record_is_15_bytes():
    one = dumps(TraceCapture(events=[TraceEvent(5, EventKind.SW_EVENT, 2,
                                                121)]))
    assert len(one) == 18 + 15


def test_bad_magic_names_offset_zero():
    blob = bytearray(dumps(TraceCapture()))
    blob[0] = ord("X")
    with pytest.raises(TraceError, match="offset 0"):
        loads(bytes(blob))


def test_unknown_version_rejected():
    blob = bytearray(dumps(TraceCapture()))
    blob[4] = 99
    with pytest.raises(TraceError, match="version"):
        loads(bytes(blob))


def test_truncated_and_trailing_bytes_rejected():
    cap = TraceCapture(events=[TraceEvent(1, EventKind.HW_RISING, 0),
                               TraceEvent(2, EventKind.HW_FALLING, 0)])
    blob = dumps(cap)
    with pytest.raises(TraceError, match="truncated"):
        loads(blob[:-3])
    with pytest.raises(TraceError, match="trailing"):
        loads(blob + b"\x00")
    with pytest.raises(TraceError, match="truncated header"):
        loads(blob[:7])


def test_unsorted_events_rejected_both_ways():
    events = [TraceEvent(9, EventKind.HW_RISING, 0),
              TraceEvent(3, EventKind.HW_FALLING, 0)]
    with pytest.raises(TraceError, match="precedes"):
        dumps(TraceCapture(events=events))
    good = dumps(TraceCapture(events=sorted(events, key=lambda e: e.tick)))
    # Swap the two records in the raw bytes to fake a corrupt writer.
    head, rec_a, rec_b = good[:18], good[18:33], good[33:48]
    with pytest.raises(TraceError, match="precedes"):
        loads(head + rec_b + rec_a)


def test_out_of_range_fields_rejected_on_write():
    with pytest.raises(TraceError, match="channel"):
        dumps(TraceCapture(events=[TraceEvent(0, EventKind.SW_EVENT, 1 << 16)]))
    with pytest.raises(TraceError, match="payload"):
        dumps(TraceCapture(
            events=[TraceEvent(0, EventKind.SW_EVENT, 0, 1 << 32)]))


def test_bad_metadata_rejected():
    blob = bytearray(dumps(TraceCapture(metadata={"a": 1})))
    # Claimed metadata length reaches into the record area.
    blob[14] = 0xFF
    with pytest.raises(TraceError):
        loads(bytes(blob))


def test_file_helpers_and_csv(tmp_path):
    cap = TraceCapture(
        events=[TraceEvent(10, EventKind.HW_RISING, 0),
                TraceEvent(68, EventKind.SW_EVENT, 1, 121)],
        metadata={"scenario": "T2"})
    path = tmp_path / "t.itrc"
    trace.write_file(cap, str(path))
    assert trace.read_file(str(path)) == cap
    out = io.StringIO()
    assert trace.export_csv(cap.events, out) == 2
    assert out.getvalue().splitlines() == [
        "tick,kind,channel,payload",
        "10,0,0,0",
        "68,2,1,121"]
