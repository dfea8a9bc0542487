"""Append-only session event log.

Every state change is one line in a per-session NDJSON file:

    {"kind":"Frame","payload":{...},"seq":3,"ts":1500}

Sequence numbers are contiguous from 1 and the log is never rewritten,
so a session can be reconstructed exactly by replaying its file. The
serialization is canonical (sorted keys, compact separators), which
makes serialize -> parse -> serialize byte-identical.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import CorruptLog


class EventKind(str, Enum):
    SESSION_CREATED = "SessionCreated"
    CRITERIA_SET = "CriteriaSet"
    FRAME = "Frame"
    RECOMMENDATION = "Recommendation"
    FEEDBACK = "Feedback"
    ALERT = "Alert"
    WEIGHTS_UPDATED = "WeightsUpdated"


def dumps_canonical(obj) -> str:
    """Canonical JSON: sorted keys, no spaces, NaN rejected."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


@dataclass(frozen=True)
class EventRecord:
    seq: int
    kind: EventKind
    ts: int
    payload: dict

    def to_line(self) -> str:
        return dumps_canonical({
            "kind": self.kind.value,
            "payload": self.payload,
            "seq": self.seq,
            "ts": self.ts,
        })

    def to_payload(self) -> dict:
        return {"seq": self.seq, "kind": self.kind.value, "ts": self.ts,
                "payload": self.payload}

    @classmethod
    def parse_line(cls, line: str) -> "EventRecord":
        obj = json.loads(line)
        if not isinstance(obj, dict):
            raise ValueError("event record must be an object")
        return cls(
            seq=int(obj["seq"]),
            kind=EventKind(obj["kind"]),
            ts=int(obj["ts"]),
            payload=obj["payload"],
        )


def read_log(path: str | Path) -> list[EventRecord]:
    """Read and contiguity-check a session log.

    Raises CorruptLog carrying the first bad sequence number: a gap
    5 -> 7 reports 6, an unparseable line reports the sequence it should
    have held. A log truncated at a record boundary reads cleanly.
    """
    records: list[EventRecord] = []
    expected = 1
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                record = EventRecord.parse_line(line)
            except (ValueError, KeyError, TypeError) as exc:
                raise CorruptLog(expected, f"unreadable record at sequence {expected}: {exc}")
            if record.seq != expected:
                raise CorruptLog(expected,
                                 f"sequence gap: expected {expected}, found {record.seq}")
            records.append(record)
            expected += 1
    return records


class LogWriter:
    """Appends records to one session's log file, flushing per record."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def __call__(self, record: EventRecord) -> None:
        with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
            fh.write(record.to_line() + "\n")
            fh.flush()
            os.fsync(fh.fileno())
