"""Robot telemetry wire format.

One frame per newline-delimited UTF-8 record:

    {"session": "s1", "ts": 1000,
     "updates": [{"alt": 1, "crit": "ebl", "value": 0.03}]}

Parsing is total: arbitrary bytes produce a typed error, never a crash.
An optional integer "rev" field carries the sender's revision hint.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

from .errors import MalformedFrame, NonFiniteValue, UnknownCriterion
from .model import CriteriaSet


@dataclass(frozen=True)
class CellUpdate:
    alt_id: int
    criterion_id: str
    value: float

    def to_payload(self) -> dict:
        return {"alt": self.alt_id, "crit": self.criterion_id, "value": self.value}


@dataclass(frozen=True)
class TelemetryFrame:
    session_id: str
    ts: int
    updates: tuple[CellUpdate, ...]
    revision_hint: Optional[int] = None

    def to_payload(self) -> dict:
        payload = {
            "session": self.session_id,
            "ts": self.ts,
            "updates": [u.to_payload() for u in self.updates],
        }
        if self.revision_hint is not None:
            payload["rev"] = self.revision_hint
        return payload

    def to_line(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True, separators=(",", ":"))


def _parse_int(obj, field: str, minimum: int | None = None) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise MalformedFrame(f"{field} must be an integer, got {obj!r}")
    if minimum is not None and obj < minimum:
        raise MalformedFrame(f"{field} must be >= {minimum}, got {obj}")
    return obj


def _parse_value(obj) -> float:
    """Accept JSON numbers and numeric strings; reject non-finite values."""
    if isinstance(obj, bool):
        raise MalformedFrame(f"value must be a number, got {obj!r}")
    if isinstance(obj, (int, float)):
        v = float(obj)
    elif isinstance(obj, str):
        try:
            v = float(obj)
        except ValueError:
            raise MalformedFrame(f"value must be a number, got {obj!r}") from None
    else:
        raise MalformedFrame(f"value must be a number, got {obj!r}")
    if not math.isfinite(v):
        raise NonFiniteValue(f"value {obj!r} is not finite")
    return v


def parse_frame_object(obj, criteria: CriteriaSet | None = None) -> TelemetryFrame:
    """Validate one decoded wire object into a TelemetryFrame."""
    if not isinstance(obj, dict):
        raise MalformedFrame("frame must be an object")
    session = obj.get("session")
    if not isinstance(session, str) or not session:
        raise MalformedFrame("frame requires a non-empty string 'session'")
    ts = _parse_int(obj.get("ts"), "ts")
    raw_updates = obj.get("updates")
    if not isinstance(raw_updates, list) or not raw_updates:
        raise MalformedFrame("frame requires a non-empty 'updates' array")
    rev = obj.get("rev")
    if rev is not None:
        rev = _parse_int(rev, "rev")
    updates = []
    for entry in raw_updates:
        if not isinstance(entry, dict):
            raise MalformedFrame("update entries must be objects")
        alt = _parse_int(entry.get("alt"), "alt", minimum=1)
        crit = entry.get("crit")
        if not isinstance(crit, str) or not crit:
            raise MalformedFrame("update requires a non-empty string 'crit'")
        if criteria is not None and crit not in criteria.ids():
            raise UnknownCriterion(f"criterion {crit!r} not in session criteria")
        value = _parse_value(entry.get("value"))
        updates.append(CellUpdate(alt, crit, value))
    return TelemetryFrame(session, ts, tuple(updates), rev)


def parse_frame(line: str | bytes, criteria: CriteriaSet | None = None) -> TelemetryFrame:
    """Parse one wire line; raises MalformedFrame / UnknownCriterion / NonFiniteValue."""
    if isinstance(line, bytes):
        try:
            line = line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedFrame(f"frame is not valid UTF-8: {exc}") from None
    try:
        obj = json.loads(line)
    except (json.JSONDecodeError, RecursionError) as exc:
        raise MalformedFrame(f"frame is not valid JSON: {exc}") from None
    return parse_frame_object(obj, criteria)
