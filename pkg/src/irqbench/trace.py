"""Trace capture and the on-disk capture format.

A capture is what the measurement rig would record: hardware line edges and
software ISR-entry events, all timestamped on a shared 4 ns tick (250 MHz
counter, timestamps round down).  The binary layout is little-endian:

    offset  size  field
    0       4     magic "ITRC"
    4       2     format version (u16), currently 1
    6       4     tick width in ns (u32), currently always 4
    10      4     metadata length in bytes (u32)
    14      n     metadata, UTF-8 JSON object (omitted entirely when empty)
    14+n    4     record count (u32)
    18+n    15*k  records: tick u64, kind u8, channel u16, payload u32

Records must be sorted by tick.  Readers reject anything else loudly rather
than guessing.
"""

from __future__ import annotations

import enum
import io
import json
import struct
from dataclasses import dataclass, field
from typing import Any, BinaryIO, Iterable, TextIO

TICK_NS = 4
MAGIC = b"ITRC"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sHII")
_COUNT = struct.Struct("<I")
_RECORD = struct.Struct("<QBHI")


class TraceError(ValueError):
    """Raised for malformed captures, on read or write."""


class EventKind(enum.IntEnum):
    HW_RISING = 0
    HW_FALLING = 1
    SW_EVENT = 2


@dataclass(frozen=True)
class TraceEvent:
    """One timestamped record.

    channel is the stimulus line index for hardware kinds and the core index
    for software events; payload carries the interrupt id on software events
    and is zero otherwise.
    """

    tick: int
    kind: EventKind
    channel: int
    payload: int = 0


@dataclass
class TraceCapture:
    events: list[TraceEvent] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)
    tick_ns: int = TICK_NS


def quantize(time_ns: int) -> int:
    """Map a nanosecond instant onto the capture tick (rounds down)."""
    if time_ns < 0:
        raise TraceError(f"negative timestamp {time_ns}")
    return time_ns // TICK_NS


def validate(capture: TraceCapture) -> None:
    if capture.tick_ns != TICK_NS:
        raise TraceError(f"unsupported tick width {capture.tick_ns} ns")
    last = -1
    for i, ev in enumerate(capture.events):
        if not 0 <= ev.tick < 1 << 64:
            raise TraceError(f"record {i}: tick {ev.tick} out of range")
        if ev.kind not in (0, 1, 2):
            raise TraceError(f"record {i}: unknown kind {ev.kind}")
        if not 0 <= ev.channel < 1 << 16:
            raise TraceError(f"record {i}: channel {ev.channel} out of range")
        if not 0 <= ev.payload < 1 << 32:
            raise TraceError(f"record {i}: payload {ev.payload} out of range")
        if ev.tick < last:
            raise TraceError(f"record {i}: tick {ev.tick} precedes {last}")
        last = ev.tick


def write(capture: TraceCapture, sink: BinaryIO) -> None:
    validate(capture)
    meta = b"" if not capture.metadata else json.dumps(
        capture.metadata, sort_keys=True, separators=(",", ":")).encode()
    sink.write(_HEADER.pack(MAGIC, FORMAT_VERSION, capture.tick_ns, len(meta)))
    sink.write(meta)
    sink.write(_COUNT.pack(len(capture.events)))
    for ev in capture.events:
        sink.write(_RECORD.pack(ev.tick, int(ev.kind), ev.channel, ev.payload))


def read(source: BinaryIO) -> TraceCapture:
    data = source.read()
    if len(data) < _HEADER.size:
        raise TraceError(f"truncated header: {len(data)} bytes")
    magic, version, tick_ns, meta_len = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise TraceError(f"bad magic {magic!r} at offset 0")
    if version != FORMAT_VERSION:
        raise TraceError(f"unsupported format version {version}")
    if tick_ns != TICK_NS:
        raise TraceError(f"unsupported tick width {tick_ns} ns")
    pos = _HEADER.size
    if len(data) < pos + meta_len + _COUNT.size:
        raise TraceError(f"truncated metadata at offset {pos}")
    metadata: dict[str, Any] = {}
    if meta_len:
        try:
            metadata = json.loads(data[pos:pos + meta_len].decode())
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise TraceError(f"bad metadata at offset {pos}: {exc}") from exc
        if not isinstance(metadata, dict):
            raise TraceError(f"metadata at offset {pos} is not an object")
    pos += meta_len
    (count,) = _COUNT.unpack_from(data, pos)
    pos += _COUNT.size
    want = count * _RECORD.size
    if len(data) - pos < want:
        raise TraceError(
            f"truncated records: expected {count}, "
            f"got {(len(data) - pos) // _RECORD.size}")
    if len(data) - pos > want:
        raise TraceError(f"{len(data) - pos - want} trailing bytes")
    events = []
    last = -1
    for i in range(count):
        tick, kind, channel, payload = _RECORD.unpack_from(data, pos)
        pos += _RECORD.size
        if kind not in (0, 1, 2):
            raise TraceError(f"record {i}: unknown kind {kind}")
        if tick < last:
            raise TraceError(f"record {i}: tick {tick} precedes {last}")
        last = tick
        events.append(TraceEvent(tick, EventKind(kind), channel, payload))
    return TraceCapture(events=events, metadata=metadata, tick_ns=tick_ns)


def dumps(capture: TraceCapture) -> bytes:
    buf = io.BytesIO()
    write(capture, buf)
    return buf.getvalue()


def loads(blob: bytes) -> TraceCapture:
    return read(io.BytesIO(blob))


def write_file(capture: TraceCapture, path: str) -> None:
    with open(path, "wb") as f:
        write(capture, f)


def read_file(path: str) -> TraceCapture:
    with open(path, "rb") as f:
        return read(f)


def export_csv(events: Iterable[TraceEvent], sink: TextIO) -> int:
    """Plain tick,kind,channel,payload rows.  Returns the row count."""
    sink.write("tick,kind,channel,payload\n")
    n = 0
    for ev in events:
        sink.write(f"{ev.tick},{int(ev.kind)},{ev.channel},{ev.payload}\n")
        n += 1
    return n
