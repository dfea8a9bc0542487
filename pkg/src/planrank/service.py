"""HTTP process manager: sessions, criteria, telemetry ingest, rankings,
selections and the event feed.

Endpoints (bodies share the event-log object notation):

    POST   /sessions                      {"scenario": name?, "id": id?}
    GET    /sessions/{id}
    PUT    /sessions/{id}/criteria        {"criteria": [...]}
    POST   /sessions/{id}/telemetry       frame object | array | NDJSON lines
    GET    /sessions/{id}/ranking?revision=
    POST   /sessions/{id}/selection       {"chosen_id": n}
    POST   /sessions/{id}/feedback        alias of /selection
    GET    /sessions/{id}/events?from=&wait=

Error bodies are {"code": ..., "message": ...} with the machine-readable
codes from planrank.errors. Responses are canonical JSON, so reading one
(session, revision) ranking twice returns byte-identical bodies.

Mutations within a session are serialized by a per-session lock; reads
take consistent snapshots. Sessions survive restart: logs found in the
log directory are replayed at boot.
"""

from __future__ import annotations

import re
import threading
import uuid
from pathlib import Path
from typing import Callable, Optional

from fastapi import FastAPI, Request
from fastapi.responses import Response

from . import scenarios as scenario_mod
from .adaptive import DEFAULT_LEARNING_RATE, Verdict
from .errors import (
    DuplicateSession,
    EmptySession,
    InvalidRequest,
    MalformedFrame,
    NotReady,
    PlanRankError,
    SessionNotFound,
    UnknownScenario,
)
from .events import LogWriter, dumps_canonical, read_log
from .model import criteria_from_priority_payload, criteria_to_payload
from .session import Session, now_ms
from .telemetry import parse_frame, parse_frame_object

SESSION_ID_RE = re.compile(r"^[A-Za-z0-9_-]{1,64}$")
LONG_POLL_CAP_S = 30.0

_STATUS_BY_CODE = {
    "SessionNotFound": 404,
    "UnknownScenario": 404,
    "DuplicateSession": 409,
    "AllInfeasible": 409,
    "NotReady": 409,
    "EmptySession": 409,
    "CorruptLog": 500,
}
_DEFAULT_STATUS = 400


class SessionStore:
    """All live sessions plus their logs, locks and feed conditions."""

    def __init__(self, log_dir: Optional[str | Path] = None,
                 clock: Callable[[], int] = now_ms,
                 learning_rate: float = DEFAULT_LEARNING_RATE):
        self.log_dir = Path(log_dir) if log_dir is not None else None
        self.clock = clock
        self.learning_rate = learning_rate
        self.sessions: dict[str, Session] = {}
        self._conds: dict[str, threading.Condition] = {}
        self._registry_lock = threading.Lock()

    def load(self) -> int:
        """Replay every session log in the log directory; returns count."""
        if self.log_dir is None or not self.log_dir.exists():
            return 0
        count = 0
        for path in sorted(self.log_dir.glob("*.ndjson")):
            records = read_log(path)
            if not records:
                continue
            session = Session.from_events(records, writer=LogWriter(path),
                                          clock=self.clock)
            self.sessions[session.id] = session
            self._conds[session.id] = threading.Condition()
            count += 1
        return count

    def _writer_for(self, session_id: str):
        if self.log_dir is None:
            return None
        return LogWriter(self.log_dir / f"{session_id}.ndjson")

    def create(self, session_id: Optional[str] = None,
               scenario_name: Optional[str] = None) -> Session:
        if session_id is None:
            session_id = "s-" + uuid.uuid4().hex[:12]
        if not isinstance(session_id, str) or not SESSION_ID_RE.match(session_id):
            raise InvalidRequest(f"session id must match {SESSION_ID_RE.pattern}")
        criteria = None
        if scenario_name is not None:
            scenario = scenario_mod.load_scenario(scenario_name)
            criteria = scenario.criteria_set()
        with self._registry_lock:
            if session_id in self.sessions:
                raise DuplicateSession(f"session {session_id!r} already exists")
            session = Session.create(
                session_id, scenario_name=scenario_name, scenario_criteria=criteria,
                writer=self._writer_for(session_id), clock=self.clock)
            self.sessions[session_id] = session
            self._conds[session_id] = threading.Condition()
        return session

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise SessionNotFound(f"no session {session_id!r}")
        return session

    def condition(self, session_id: str) -> threading.Condition:
        self.get(session_id)
        return self._conds[session_id]

    def notify(self, session_id: str) -> None:
        cond = self._conds.get(session_id)
        if cond is not None:
            with cond:
                cond.notify_all()


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(content=dumps_canonical(payload), status_code=status_code,
                    media_type="application/json")


def _error_response(exc: PlanRankError) -> Response:
    status = _STATUS_BY_CODE.get(exc.code, _DEFAULT_STATUS)
    return _json_response({"code": exc.code, "message": str(exc)}, status)


def create_app(store: Optional[SessionStore] = None,
               log_dir: Optional[str | Path] = None,
               static_dir: Optional[str | Path] = None) -> FastAPI:
    """Build the service; pass an existing store or a log directory."""
    if store is None:
        store = SessionStore(log_dir=log_dir)
        store.load()
    app = FastAPI(title="planrank", docs_url=None, redoc_url=None)
    app.state.store = store

    @app.exception_handler(PlanRankError)
    async def handle_planrank_error(_request: Request, exc: PlanRankError):
        return _error_response(exc)

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.body()
        payload = _parse_json_body(body) if body else {}
        if not isinstance(payload, dict):
            raise InvalidRequest("body must be a JSON object")
        scenario_name = payload.get("scenario")
        if scenario_name is not None and not isinstance(scenario_name, str):
            raise UnknownScenario(f"scenario must be a string, got {scenario_name!r}")
        session_id = payload.get("id")
        session = store.create(session_id=session_id, scenario_name=scenario_name)
        return _json_response(session.descriptor().to_payload(), 201)

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        session = store.get(session_id)
        return _json_response(session.descriptor().to_payload())

    @app.put("/sessions/{session_id}/criteria")
    async def put_criteria(session_id: str, request: Request):
        session = store.get(session_id)
        payload = _parse_json_body(await request.body())
        criteria = criteria_from_priority_payload(payload)
        with _session_lock(store, session_id):
            revision = session.set_criteria(criteria)
        store.notify(session_id)
        return _json_response({"revision": revision,
                               "criteria": criteria_to_payload(session.criteria)})

    @app.post("/sessions/{session_id}/telemetry")
    async def post_telemetry(session_id: str, request: Request):
        session = store.get(session_id)
        frames = _frames_from_body(await request.body(), session)
        if not frames:
            raise MalformedFrame("no frames in request body")
        with _session_lock(store, session_id):
            revision = session.revision
            for frame in frames:
                revision = session.apply_frame(frame)
        store.notify(session_id)
        return _json_response({"revision": revision, "applied": len(frames)})

    @app.get("/sessions/{session_id}/ranking")
    async def get_ranking(session_id: str, request: Request):
        session = store.get(session_id)
        raw_revision = request.query_params.get("revision")
        revision = None if raw_revision in (None, "") \
            else _parse_int_param(raw_revision, "revision")
        try:
            recommendation = session.recommendation(revision)
        except EmptySession as exc:
            raise NotReady(str(exc)) from None
        return _json_response(recommendation.to_payload())

    async def _post_selection(session_id: str, request: Request):
        session = store.get(session_id)
        payload = _parse_json_body(await request.body())
        if not isinstance(payload, dict) or "chosen_id" not in payload:
            raise InvalidRequest("body must be an object with 'chosen_id'")
        chosen_id = payload["chosen_id"]
        if isinstance(chosen_id, bool) or not isinstance(chosen_id, int):
            raise InvalidRequest(f"chosen_id must be an integer, got {chosen_id!r}")
        with _session_lock(store, session_id):
            alert, feedback = session.post_selection(chosen_id,
                                                     learning_rate=store.learning_rate)
        store.notify(session_id)
        return _json_response({
            "alert": alert.to_payload() if alert is not None else None,
            "verdict": feedback.verdict.value,
            "weights_updated": feedback.verdict is Verdict.OVERRIDDEN,
            "revision": session.revision,
        })

    app.post("/sessions/{session_id}/selection")(_post_selection)
    # /feedback is an alias: a selection IS the operator feedback signal
    app.post("/sessions/{session_id}/feedback")(_post_selection)

    @app.get("/sessions/{session_id}/events")
    async def get_events(session_id: str, request: Request):
        params = request.query_params
        from_seq = _parse_int_param(params.get("from", "0"), "from")
        wait_s = float(params.get("wait", "0") or 0)
        session = store.get(session_id)
        events = session.events_after(from_seq)
        if not events and wait_s > 0:
            events = await _long_poll(store, session_id, from_seq,
                                      min(wait_s, LONG_POLL_CAP_S))
        return _json_response({"events": [e.to_payload() for e in events]})

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/console", StaticFiles(directory=str(static_dir), html=True),
                  name="console")

    return app


def _session_lock(store: SessionStore, session_id: str) -> threading.Condition:
    return store.condition(session_id)


def _parse_json_body(body: bytes):
    import json
    try:
        return json.loads(body)
    except json.JSONDecodeError as exc:
        raise InvalidRequest(f"body is not valid JSON: {exc}") from None


def _parse_int_param(raw: str, name: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise InvalidRequest(f"query parameter {name!r} must be an integer") from None


def _frames_from_body(body: bytes, session: Session):
    """Accept one frame object, a JSON array of frames, or NDJSON lines."""
    text = body.decode("utf-8", errors="strict") if body else ""
    stripped = text.lstrip()
    frames = []
    if stripped.startswith("["):
        payload = _parse_json_body(body)
        for obj in payload:
            frames.append(parse_frame_object(obj, session.criteria))
    else:
        for line in text.splitlines():
            if line.strip():
                frames.append(parse_frame(line, session.criteria))
    return frames


async def _long_poll(store: SessionStore, session_id: str, from_seq: int,
                     wait_s: float):
    import anyio

    def blocking_wait():
        cond = store.condition(session_id)
        session = store.get(session_id)
        deadline = wait_s
        with cond:
            cond.wait_for(lambda: len(session.events) > from_seq, timeout=deadline)
        return session.events_after(from_seq)

    return await anyio.to_thread.run_sync(blocking_wait)
