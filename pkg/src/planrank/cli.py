"""Command-line entry points.

    planrank rank --matrix plans.csv --criteria criteria.json [--json]
    planrank serve --addr 127.0.0.1:8471 --log-dir ./logs
    planrank simulate --scenario hepatectomy --seed 42 --frames 20 \
        (--to-file stream.ndjson | --to-addr http://127.0.0.1:8471)
    planrank replay --log session.ndjson [--json] [--matrix-out m.csv]
        [--criteria-out c.json]

Matrices are CSV with the alternative id in the first column and
criterion ids in the header; criteria files use the JSON object
notation shared with the service. Exit codes: 0 success, 2 when every
alternative is infeasible, 1 for any parse or usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import urllib.error
import urllib.request
from pathlib import Path

from .errors import AllInfeasible, PlanRankError
from .events import dumps_canonical
from .model import (
    Alternative,
    CriteriaSet,
    DecisionMatrix,
    criteria_from_priority_payload,
    criteria_to_payload,
)
from .scenarios import load_scenario
from .session import InfeasibleOutcome, replay_log
from .simulator import generate_stream, stream_to_lines
from .topsis import topsis

DEFAULT_ADDR = "127.0.0.1:8471"
DEFAULT_LOG_DIR = "./planrank-logs"


def load_criteria_file(path: str | Path) -> CriteriaSet:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PlanRankError(f"cannot read criteria file {path}: {exc}") from None
    return criteria_from_priority_payload(payload)


def load_matrix_csv(path: str | Path, criteria: CriteriaSet) -> DecisionMatrix:
    """Read a decision matrix, reordering columns to the criteria order."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise PlanRankError(f"cannot read matrix file {path}: {exc}") from None
    if len(rows) < 2:
        raise PlanRankError(f"matrix file {path} needs a header and at least one row")
    header = [cell.strip() for cell in rows[0]]
    columns = header[1:]
    missing = [cid for cid in criteria.ids() if cid not in columns]
    if missing:
        raise PlanRankError(f"matrix is missing criterion columns: {', '.join(missing)}")
    extra = [cid for cid in columns if cid not in criteria.ids()]
    if extra:
        raise PlanRankError(f"matrix has columns not in the criteria file: {', '.join(extra)}")
    col_index = {cid: columns.index(cid) + 1 for cid in criteria.ids()}
    alternatives = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise PlanRankError(f"line {lineno}: expected {len(header)} cells, got {len(row)}")
        try:
            alt_id = int(row[0])
            values = tuple(float(row[col_index[cid]]) for cid in criteria.ids())
        except ValueError as exc:
            raise PlanRankError(f"line {lineno}: {exc}") from None
        alternatives.append(Alternative(alt_id, values))
    return DecisionMatrix(criteria, tuple(alternatives))


def write_matrix_csv(matrix: DecisionMatrix, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", *matrix.criteria.ids()])
        for alt in matrix.alternatives:
            writer.writerow([alt.id, *[repr(v) for v in alt.values]])


def _print_ranking(ranking, as_json: bool) -> None:
    if as_json:
        print(dumps_canonical(ranking.to_payload()))
        return
    print(f"best: alternative {ranking.best_id}")
    if ranking.degenerate:
        print("note: degenerate scoring (alternative coincides with both ideals)")
    if ranking.zero_columns:
        print(f"note: zero-valued columns: {', '.join(ranking.zero_columns)}")
    for position, alt_id in enumerate(ranking.order, start=1):
        print(f"{position:3d}. alternative {alt_id:3d}  score {ranking.score_of(alt_id):.6f}")
    for alt_id, violations in ranking.excluded:
        details = "; ".join(
            f"{v.criterion_id} {v.value} violates {v.kind.value} {v.bound}"
            for v in violations)
        print(f"excluded alternative {alt_id}: {details}")


def cmd_rank(args) -> int:
    criteria = load_criteria_file(args.criteria)
    matrix = load_matrix_csv(args.matrix, criteria)
    try:
        ranking = topsis(matrix)
    except AllInfeasible as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    _print_ranking(ranking, args.json)
    return 0


def _parse_addr(addr: str) -> tuple[str, int]:
    host, sep, port = addr.rpartition(":")
    if not sep or not host:
        raise PlanRankError(f"address must be host:port, got {addr!r}")
    try:
        return host, int(port)
    except ValueError:
        raise PlanRankError(f"bad port in address {addr!r}") from None


def cmd_serve(args) -> int:
    import uvicorn

    from .service import SessionStore, create_app

    host, port = _parse_addr(args.addr)
    log_dir = Path(args.log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)
    store = SessionStore(log_dir=log_dir)
    restored = store.load()
    static_dir = args.console_dir if args.console_dir and Path(args.console_dir).is_dir() \
        else None
    app = create_app(store=store, static_dir=static_dir)
    print(f"planrank service on {host}:{port}, log dir {log_dir}, "
          f"{restored} session(s) restored")
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def _http_json(method: str, url: str, body: bytes | None = None,
               content_type: str = "application/json") -> dict:
    request = urllib.request.Request(url, data=body, method=method)
    if body is not None:
        request.add_header("Content-Type", content_type)
    try:
        with urllib.request.urlopen(request) as response:
            return json.loads(response.read())
    except urllib.error.HTTPError as exc:
        detail = exc.read().decode("utf-8", "replace")
        raise PlanRankError(f"{method} {url} -> {exc.code}: {detail}") from None
    except urllib.error.URLError as exc:
        raise PlanRankError(f"{method} {url} failed: {exc.reason}") from None


def cmd_simulate(args) -> int:
    scenario = load_scenario(args.scenario)
    frames = generate_stream(scenario, args.seed, args.frames,
                             session_id=args.session or "sim")
    if args.to_file:
        Path(args.to_file).write_text(stream_to_lines(frames), encoding="utf-8")
        print(f"wrote {len(frames)} frames to {args.to_file}")
        return 0
    base = args.to_addr.rstrip("/")
    created = _http_json("POST", f"{base}/sessions", dumps_canonical({
        "scenario": args.scenario, **({"id": args.session} if args.session else {}),
    }).encode())
    session_id = created["id"]
    revision = None
    for frame in frames:
        result = _http_json("POST", f"{base}/sessions/{session_id}/telemetry",
                            (frame.to_line() + "\n").encode(), "application/x-ndjson")
        revision = result["revision"]
    print(f"streamed {len(frames)} frames to session {session_id}, "
          f"final revision {revision}")
    return 0


def cmd_replay(args) -> int:
    session = replay_log(args.log)
    matrix, defaulted = session.materialize()
    outcome = session.history.get(max(session.history)) if session.history else None
    report = {
        "session": session.id or None,
        "scenario": session.scenario,
        "revision": session.revision,
        "events": len(session.events),
        "alternatives": len(matrix.alternatives) if matrix is not None else 0,
        "weight_updates": len(session.weight_log),
        "defaulted_cells": [[alt, crit] for alt, crit in defaulted],
    }
    if isinstance(outcome, InfeasibleOutcome):
        report["status"] = "all_infeasible"
    elif outcome is not None:
        report["status"] = "ranked"
        report["recommendation"] = outcome.to_payload()
    else:
        report["status"] = "empty"
    if args.matrix_out:
        if matrix is None:
            raise PlanRankError("log has no materialized matrix to export")
        write_matrix_csv(matrix, args.matrix_out)
    if args.criteria_out:
        if session.criteria is None:
            raise PlanRankError("log has no criteria to export")
        Path(args.criteria_out).write_text(
            dumps_canonical({"criteria": [
                {**entry, "priority": entry["weight"]}
                for entry in criteria_to_payload(session.criteria)
            ]}) + "\n", encoding="utf-8")
    if args.json:
        print(dumps_canonical(report))
    else:
        print(f"session {report['session']} ({report['status']}), "
              f"revision {report['revision']}, {report['events']} events, "
              f"{report['alternatives']} alternatives")
        if report["status"] == "ranked":
            rec = report["recommendation"]
            print(f"final recommendation: alternative {rec['recommended_id']} "
                  f"at revision {rec['revision']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planrank",
                                     description="trajectory-plan decision support")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", help="rank a CSV decision matrix offline")
    p_rank.add_argument("--matrix", required=True, help="CSV file: id column + criterion columns")
    p_rank.add_argument("--criteria", required=True, help="criteria JSON file")
    p_rank.add_argument("--json", action="store_true", help="emit canonical JSON")
    p_rank.set_defaults(func=cmd_rank)

    p_serve = sub.add_parser("serve", help="run the planning service")
    p_serve.add_argument("--addr", default=os.environ.get("PLANRANK_ADDR", DEFAULT_ADDR))
    p_serve.add_argument("--log-dir",
                         default=os.environ.get("PLANRANK_LOG_DIR", DEFAULT_LOG_DIR))
    p_serve.add_argument("--console-dir", default=os.environ.get("PLANRANK_CONSOLE_DIR"),
                         help="static console assets to mount at /console")
    p_serve.set_defaults(func=cmd_serve)

    p_sim = sub.add_parser("simulate", help="generate a telemetry stream")
    p_sim.add_argument("--scenario", required=True,
                       help="builtin name (whipple, hepatectomy) or scenario file")
    p_sim.add_argument("--seed", type=int, default=42)
    p_sim.add_argument("--frames", type=int, default=20)
    p_sim.add_argument("--session", help="session id to stamp/create")
    target = p_sim.add_mutually_exclusive_group(required=True)
    target.add_argument("--to-file", help="write NDJSON frames to this file")
    target.add_argument("--to-addr", help="stream to a running service, e.g. http://host:port")
    p_sim.set_defaults(func=cmd_simulate)

    p_replay = sub.add_parser("replay", help="rebuild a session from its event log")
    p_replay.add_argument("--log", required=True)
    p_replay.add_argument("--json", action="store_true")
    p_replay.add_argument("--matrix-out", help="write the final matrix as CSV")
    p_replay.add_argument("--criteria-out", help="write the final criteria as JSON")
    p_replay.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AllInfeasible as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except PlanRankError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
