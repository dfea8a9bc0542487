#!/usr/bin/env python3
"""Record the hepatectomy session fixture consumed by the console tests.

Runs the scenario through the in-process service: streams the seed-42
telemetry, then posts a deliberately poor selection (row 11) so the feed
carries the alert and the weight update. Dumps the full event feed, the
final ranking, and the final matrix snapshot as JSON.

    python scripts/export_console_fixture.py [--out frontend/fixtures/hepatectomy_feed.json]
"""

import argparse
import json
from pathlib import Path

from fastapi.testclient import TestClient

from planrank.events import dumps_canonical
from planrank.model import criteria_to_payload
from planrank.scenarios import load_scenario
from planrank.service import SessionStore, create_app
from planrank.simulator import generate_stream

SESSION = "hep-fixture"
SEED = 42
FRAMES = 12


def record() -> dict:
    store = SessionStore(log_dir=None, clock=lambda: 424200)
    with TestClient(create_app(store=store)) as client:
        created = client.post("/sessions", json={"id": SESSION,
                                                 "scenario": "hepatectomy"})
        assert created.status_code == 201, created.text
        for frame in generate_stream(load_scenario("hepatectomy"), SEED, FRAMES,
                                     session_id=SESSION):
            applied = client.post(f"/sessions/{SESSION}/telemetry",
                                  content=frame.to_line())
            assert applied.status_code == 200, applied.text
        selection = client.post(f"/sessions/{SESSION}/selection",
                                json={"chosen_id": 11}).json()
        assert selection["alert"] is not None
        final = client.get(f"/sessions/{SESSION}/ranking").json()
        events = client.get(f"/sessions/{SESSION}/events",
                            params={"from": 0}).json()["events"]

    session = store.sessions[SESSION]
    matrix, _ = session.materialize()
    return {
        "session": SESSION,
        "seed": SEED,
        "events": events,
        "final_ranking": final,
        "selection_response": selection,
        "matrix": {
            "criteria": criteria_to_payload(session.criteria),
            "ids": list(matrix.ids()),
            "rows": [list(alt.values) for alt in matrix.alternatives],
        },
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="frontend/fixtures/hepatectomy_feed.json")
    args = parser.parse_args()
    fixture = record()
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(dumps_canonical(fixture) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(fixture['events'])} events)")


if __name__ == "__main__":
    main()
