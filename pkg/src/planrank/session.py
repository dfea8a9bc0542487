"""Event-sourced session state.

A session is a fold over its event log: telemetry frames, criteria
changes and weight updates mutate the decision matrix and bump the
revision counter; every bump deterministically re-scores the matrix and
records the outcome per revision, so any (session, revision) pair maps
to exactly one ranking for all time. Replaying a log therefore rebuilds
matrix, weights, and the full recommendation history bit-for-bit.

Commands (the live mutation path) append events to the log before
applying them; replay applies the same events through the same code
path without writing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .adaptive import (
    Alert,
    DEFAULT_LEARNING_RATE,
    FeedbackEvent,
    Recommendation,
    Verdict,
    check_selection,
    update_weights,
)
from .errors import (
    AllInfeasible,
    EmptySession,
    NotReady,
    SessionNotFound,
    UnknownCriterion,
)
from .events import EventKind, EventRecord, LogWriter, read_log
from .model import (
    Alternative,
    CriteriaSet,
    DecisionMatrix,
    Violation,
    criteria_from_payload,
    criteria_to_payload,
)
from .telemetry import TelemetryFrame, parse_frame_object
from .topsis import topsis


def now_ms() -> int:
    return int(time.time() * 1000)


STATUS_OPEN = "open"
STATUS_CLOSED = "closed"


@dataclass(frozen=True)
class SessionDescriptor:
    id: str
    scenario: Optional[str]
    created_at: int
    revision: int
    status: str

    def to_payload(self) -> dict:
        return {
            "id": self.id,
            "scenario": self.scenario,
            "created_at": self.created_at,
            "revision": self.revision,
            "status": self.status,
        }


class InfeasibleOutcome:
    """History marker: scoring at this revision found no feasible plan."""

    __slots__ = ("report",)

    def __init__(self, report):
        self.report = report


class Session:
    """Single surgical-planning session; mutate only via command methods.

    Callers are responsible for serializing commands per session (the
    service holds one lock per session); readers may snapshot at any
    revision since recorded outcomes are immutable.
    """

    def __init__(self, writer: Callable[[EventRecord], None] | None = None,
                 clock: Callable[[], int] = now_ms):
        self._writer = writer
        self._clock = clock
        self.id: str = ""
        self.scenario: Optional[str] = None
        self.created_at: int = 0
        self.status = STATUS_OPEN
        self.criteria: Optional[CriteriaSet] = None
        self.revision = 0
        self.events: list[EventRecord] = []
        self._cells: dict[int, dict[str, float]] = {}
        self.history: dict[int, Recommendation | InfeasibleOutcome] = {}
        self.weight_log: list[tuple[int, tuple[float, ...]]] = []
        self.feedback_log: list[FeedbackEvent] = []
        self.alert_log: list[Alert] = []
        self.audit_recommendations: list[dict] = []
        self.last_defaulted: tuple[tuple[int, str], ...] = ()

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def create(cls, session_id: str, scenario_name: Optional[str] = None,
               scenario_criteria: Optional[CriteriaSet] = None,
               writer: Callable[[EventRecord], None] | None = None,
               clock: Callable[[], int] = now_ms) -> "Session":
        """Open a new session, optionally preloading scenario criteria.

        Preloaded criteria are part of session bootstrap: they are logged
        as a CriteriaSet event but leave the revision at 0, so the first
        telemetry frame produces revision 1.
        """
        session = cls(writer=writer, clock=clock)
        ts = clock()
        session._commit(EventKind.SESSION_CREATED, {
            "id": session_id,
            "scenario": scenario_name,
            "created_at": ts,
        }, ts)
        if scenario_criteria is not None:
            session._commit(EventKind.CRITERIA_SET, {
                "criteria": criteria_to_payload(scenario_criteria),
                "revision": 0,
            }, ts)
        return session

    @classmethod
    def from_events(cls, records: list[EventRecord],
                    writer: Callable[[EventRecord], None] | None = None,
                    clock: Callable[[], int] = now_ms) -> "Session":
        """Rebuild a session by folding an event list (replay)."""
        session = cls(writer=None, clock=clock)
        for record in records:
            session._apply(record)
        session._writer = writer
        return session

    # ------------------------------------------------------------------
    # commands (live path): validate, append to log, apply

    def set_criteria(self, criteria: CriteriaSet) -> int:
        """Install a new criteria set; returns the new revision.

        Existing alternative columns are reconciled by criterion id:
        values for removed criteria are dropped, new criteria default to
        unset (0 with a diagnostic at materialization).
        """
        self._require_open()
        self._commit(EventKind.CRITERIA_SET, {
            "criteria": criteria_to_payload(criteria),
            "revision": self.revision + 1,
        }, self._clock())
        self._emit_outcome()
        return self.revision

    def apply_frame(self, frame: TelemetryFrame) -> int:
        """Apply one telemetry frame; returns the new revision.

        Referenced alternatives are created on first mention; repeated
        writes to one cell resolve last-writer-wins by log sequence.
        """
        self._require_open()
        if self.criteria is None:
            raise UnknownCriterion("session has no criteria; set criteria before telemetry")
        known = self.criteria.ids()
        for update in frame.updates:
            if update.criterion_id not in known:
                raise UnknownCriterion(
                    f"criterion {update.criterion_id!r} not in session criteria")
        self._commit(EventKind.FRAME, {
            "frame": frame.to_payload(),
            "revision": self.revision + 1,
        }, frame.ts)
        self._emit_outcome()
        return self.revision

    def post_selection(self, chosen_id: int,
                       learning_rate: float = DEFAULT_LEARNING_RATE
                       ) -> tuple[Optional[Alert], FeedbackEvent]:
        """Record an operator selection against the current recommendation.

        Logs the feedback, any alert, and, for overrides, the weight
        update (always logged, even when the update is a no-op).
        """
        self._require_open()
        alert = check_selection(self, chosen_id)
        rec = self.recommendation()
        verdict = Verdict.ACCEPTED if chosen_id == rec.recommended_id else Verdict.OVERRIDDEN
        feedback = FeedbackEvent(
            session_id=self.id,
            recommended_id=rec.recommended_id,
            chosen_id=chosen_id,
            verdict=verdict,
            timestamp=self._clock(),
        )
        self._commit(EventKind.FEEDBACK, feedback.to_payload(), feedback.timestamp)
        if alert is not None:
            self._commit(EventKind.ALERT, alert.to_payload(), feedback.timestamp)
        if verdict is Verdict.OVERRIDDEN:
            matrix, _ = self.materialize()
            new_weights = update_weights(self.criteria.weights(), feedback, matrix,
                                         learning_rate)
            self._commit(EventKind.WEIGHTS_UPDATED, {
                "weights": list(new_weights),
                "learning_rate": learning_rate,
                "chosen_id": chosen_id,
                "recommended_id": rec.recommended_id,
                "revision": self.revision + 1,
            }, feedback.timestamp)
            self._emit_outcome()
        return alert, feedback

    def close(self) -> None:
        """Administrative stop: further frames raise SessionNotFound."""
        self.status = STATUS_CLOSED

    # ------------------------------------------------------------------
    # reads

    def descriptor(self) -> SessionDescriptor:
        return SessionDescriptor(self.id, self.scenario, self.created_at,
                                 self.revision, self.status)

    def materialize(self) -> tuple[Optional[DecisionMatrix], tuple[tuple[int, str], ...]]:
        """Current decision matrix plus (alt, criterion) cells defaulted to 0.

        Rows are ordered by ascending alternative id. Returns (None, ())
        while the session has no criteria or no alternatives.
        """
        if self.criteria is None or not self._cells:
            return None, ()
        defaulted = []
        alternatives = []
        for alt_id in sorted(self._cells):
            row = []
            for crit in self.criteria:
                cell = self._cells[alt_id].get(crit.id)
                if cell is None:
                    defaulted.append((alt_id, crit.id))
                    cell = 0.0
                row.append(cell)
            alternatives.append(Alternative(alt_id, tuple(row)))
        return DecisionMatrix(self.criteria, tuple(alternatives)), tuple(defaulted)

    def recommendation(self, revision: Optional[int] = None) -> Recommendation:
        """Outcome at a revision (default: latest scored revision).

        Raises EmptySession before anything was scorable, NotReady for a
        revision with no recorded outcome, AllInfeasible where scoring
        found no feasible alternative.
        """
        if revision is None:
            if not self.history:
                if self.criteria is None or not self._cells:
                    raise EmptySession("session has no scored state yet")
                raise NotReady("no ranking recorded yet")
            revision = max(self.history)
        outcome = self.history.get(revision)
        if outcome is None:
            raise NotReady(f"no ranking at revision {revision}")
        if isinstance(outcome, InfeasibleOutcome):
            raise AllInfeasible(outcome.report)
        return outcome

    def weight_history(self) -> tuple[tuple[int, tuple[float, ...]], ...]:
        """Append-only (revision, weights) history from the event log."""
        return tuple(self.weight_log)

    def events_after(self, from_seq: int) -> list[EventRecord]:
        return [e for e in self.events if e.seq > from_seq]

    # ------------------------------------------------------------------
    # event machinery

    def _require_open(self):
        if self.status != STATUS_OPEN:
            raise SessionNotFound(f"session {self.id!r} is closed")

    def _commit(self, kind: EventKind, payload: dict, ts: int) -> EventRecord:
        record = EventRecord(seq=len(self.events) + 1, kind=kind, ts=ts, payload=payload)
        if self._writer is not None:
            self._writer(record)
        self._apply(record)
        return record

    def _emit_outcome(self) -> None:
        """Log the freshly computed outcome at the current revision (live only)."""
        outcome = self.history.get(self.revision)
        if outcome is None:
            return
        if isinstance(outcome, InfeasibleOutcome):
            self._commit(EventKind.ALERT, {
                "reason": "all_infeasible",
                "revision": self.revision,
                "report": [
                    {"id": alt_id, "violations": [v.to_payload() for v in violations]}
                    for alt_id, violations in sorted(outcome.report.items())
                ],
            }, self._clock())
        else:
            self._commit(EventKind.RECOMMENDATION, outcome.to_payload(),
                         outcome.generated_at)

    def _apply(self, record: EventRecord) -> None:
        self.events.append(record)
        kind = record.kind
        payload = record.payload
        if kind is EventKind.SESSION_CREATED:
            self.id = payload["id"]
            self.scenario = payload.get("scenario")
            self.created_at = payload["created_at"]
        elif kind is EventKind.CRITERIA_SET:
            criteria = criteria_from_payload(payload["criteria"])
            kept = set(criteria.ids())
            for cells in self._cells.values():
                for crit_id in list(cells):
                    if crit_id not in kept:
                        del cells[crit_id]
            self.criteria = criteria
            self.revision = payload["revision"]
            self.weight_log.append((self.revision, criteria.weights()))
            self._rescore(record.ts)
        elif kind is EventKind.FRAME:
            frame = parse_frame_object(payload["frame"], self.criteria)
            for update in frame.updates:
                self._cells.setdefault(update.alt_id, {})[update.criterion_id] = update.value
            self.revision = payload["revision"]
            self._rescore(record.ts)
        elif kind is EventKind.WEIGHTS_UPDATED:
            if self.criteria is None:
                raise NotReady("weights update without criteria")
            self.criteria = self.criteria.with_weights(payload["weights"])
            self.revision = payload["revision"]
            self.weight_log.append((self.revision, self.criteria.weights()))
            self._rescore(record.ts)
        elif kind is EventKind.RECOMMENDATION:
            self.audit_recommendations.append(payload)
        elif kind is EventKind.FEEDBACK:
            self.feedback_log.append(FeedbackEvent.from_payload(payload))
        elif kind is EventKind.ALERT:
            if "reason" not in payload:
                self.alert_log.append(Alert.from_payload(payload))

    def _rescore(self, ts: int) -> None:
        """Deterministically score the matrix at the current revision."""
        matrix, defaulted = self.materialize()
        self.last_defaulted = defaulted
        if matrix is None:
            return
        try:
            ranking = topsis(matrix)
        except AllInfeasible as exc:
            self.history[self.revision] = InfeasibleOutcome(exc.report)
            return
        self.history[self.revision] = Recommendation(
            session_id=self.id,
            ranking=ranking,
            recommended_id=ranking.best_id,
            generated_at=ts,
            matrix_revision=self.revision,
        )


def replay_log(path: str | Path,
               writer: Callable[[EventRecord], None] | None = None,
               clock: Callable[[], int] = now_ms) -> Session:
    """Rebuild a session from its log file.

    Raises CorruptLog on a sequence gap or unreadable record. An empty
    log yields an empty session.
    """
    return Session.from_events(read_log(path), writer=writer, clock=clock)


def open_session_log(path: str | Path) -> LogWriter:
    return LogWriter(path)
