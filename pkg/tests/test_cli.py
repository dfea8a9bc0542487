"""CLI commands: offline ranking, simulation, replay, serving."""

import json
import socket
import threading
import time
import urllib.request

import pytest

from planrank.cli import main
from planrank.events import dumps_canonical


HEPATECTOMY_CRITERIA = {"criteria": [
    {"id": "ebl", "direction": "cost", "priority": 40},
    {"id": "vc", "direction": "benefit", "priority": 40},
    {"id": "jejunal", "direction": "benefit", "priority": 10},
    {"id": "bile_duct", "direction": "cost", "priority": 10},
]}

MATRIX_CSV = """id,ebl,vc,jejunal,bile_duct
1,0.03,0.52,0.6,4.0
2,0.20,0.45,0.5,5.0
11,0.43,0.06,0.2,9.0
12,0.30,0.22,0.25,8.5
"""


@pytest.fixture
def matrix_files(tmp_path):
    matrix = tmp_path / "matrix.csv"
    matrix.write_text(MATRIX_CSV)
    criteria = tmp_path / "criteria.json"
    criteria.write_text(json.dumps(HEPATECTOMY_CRITERIA))
    return matrix, criteria


class TestRank:
    def test_hepatectomy_fixture_best_is_one(self, matrix_files, capsys):
        matrix, criteria = matrix_files
        code = main(["rank", "--matrix", str(matrix), "--criteria", str(criteria)])
        assert code == 0
        out = capsys.readouterr().out
        assert "best: alternative 1" in out

    def test_json_output_is_canonical(self, matrix_files, capsys):
        matrix, criteria = matrix_files
        assert main(["rank", "--matrix", str(matrix), "--criteria", str(criteria),
                     "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["best_id"] == 1
        assert payload["order"][0] == 1

    def test_one_by_one_matrix_degenerate(self, tmp_path, capsys):
        matrix = tmp_path / "m.csv"
        matrix.write_text("id,ebl\n1,0.5\n")
        criteria = tmp_path / "c.json"
        criteria.write_text(json.dumps({"criteria": [
            {"id": "ebl", "direction": "cost", "priority": 1}]}))
        assert main(["rank", "--matrix", str(matrix), "--criteria", str(criteria)]) == 0
        out = capsys.readouterr().out
        assert "best: alternative 1" in out
        assert "degenerate" in out

    def test_header_mismatch_names_missing_column(self, tmp_path, capsys):
        matrix = tmp_path / "m.csv"
        matrix.write_text("id,ebl\n1,0.5\n")
        criteria = tmp_path / "c.json"
        criteria.write_text(json.dumps(HEPATECTOMY_CRITERIA))
        code = main(["rank", "--matrix", str(matrix), "--criteria", str(criteria)])
        assert code == 1
        err = capsys.readouterr().err
        assert "vc" in err and "missing" in err

    def test_all_infeasible_exit_code_two(self, tmp_path, capsys):
        matrix = tmp_path / "m.csv"
        matrix.write_text("id,ebl\n1,0.9\n2,0.8\n")
        criteria = tmp_path / "c.json"
        criteria.write_text(json.dumps({"criteria": [
            {"id": "ebl", "direction": "cost", "priority": 1,
             "threshold": {"bound": 0.35, "kind": "max"}}]}))
        code = main(["rank", "--matrix", str(matrix), "--criteria", str(criteria)])
        assert code == 2
        assert "AllInfeasible" in capsys.readouterr().err

    def test_unreadable_matrix_exit_code_one(self, tmp_path, capsys):
        criteria = tmp_path / "c.json"
        criteria.write_text(json.dumps(HEPATECTOMY_CRITERIA))
        code = main(["rank", "--matrix", str(tmp_path / "absent.csv"),
                     "--criteria", str(criteria)])
        assert code == 1


class TestSimulate:
    def test_to_file_is_deterministic(self, tmp_path, capsys):
        out1 = tmp_path / "a.ndjson"
        out2 = tmp_path / "b.ndjson"
        assert main(["simulate", "--scenario", "hepatectomy", "--seed", "42",
                     "--frames", "5", "--to-file", str(out1)]) == 0
        assert main(["simulate", "--scenario", "hepatectomy", "--seed", "42",
                     "--frames", "5", "--to-file", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert len(out1.read_text().splitlines()) == 5

    def test_unknown_scenario_exit_one(self, tmp_path, capsys):
        code = main(["simulate", "--scenario", "nope", "--seed", "1",
                     "--frames", "1", "--to-file", str(tmp_path / "x")])
        assert code == 1
        assert "UnknownScenario" in capsys.readouterr().err

    def test_scenario_file_streams_to_file(self, tmp_path, capsys):
        scenario = tmp_path / "custom.json"
        scenario.write_text(json.dumps({
            "name": "custom",
            "alternatives": 3,
            "criteria": [
                {"id": "a", "direction": "cost", "priority": 70, "range": [0.3, 0.8]},
                {"id": "b", "direction": "benefit", "priority": 30, "range": [0.2, 0.9]},
            ],
            "pinned": {"1": {"a": 0.1, "b": 0.95}},
        }))
        out = tmp_path / "stream.ndjson"
        assert main(["simulate", "--scenario", str(scenario), "--seed", "3",
                     "--frames", "2", "--to-file", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 2


class TestServe:
    def test_bad_address_exit_one(self, tmp_path, capsys):
        code = main(["serve", "--addr", "no-port-here",
                     "--log-dir", str(tmp_path / "logs")])
        assert code == 1
        err = capsys.readouterr().err
        assert "host:port" in err


class TestReplay:
    def make_log(self, tmp_path):
        from planrank.events import LogWriter
        from planrank.model import criteria_from_priority_payload
        from planrank.session import Session
        from planrank.telemetry import parse_frame
        from planrank.simulator import generate_stream
        from planrank.scenarios import load_scenario

        path = tmp_path / "s1.ndjson"
        session = Session.create(
            "s1", scenario_name="hepatectomy",
            scenario_criteria=load_scenario("hepatectomy").criteria_set(),
            writer=LogWriter(path), clock=lambda: 123)
        for frame in generate_stream(load_scenario("hepatectomy"), 42, 6,
                                     session_id="s1"):
            session.apply_frame(frame)
        return path, session

    def test_replay_reports_final_recommendation(self, tmp_path, capsys):
        path, live = self.make_log(tmp_path)
        assert main(["replay", "--log", str(path), "--json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["status"] == "ranked"
        assert report["recommendation"]["recommended_id"] == 1
        assert report["revision"] == live.revision
        assert report["recommendation"] == live.recommendation().to_payload()

    def test_corrupt_log_exit_one_names_sequence(self, tmp_path, capsys):
        path, _ = self.make_log(tmp_path)
        lines = path.read_text().splitlines()
        del lines[2]  # sequence gap at 3
        broken = tmp_path / "broken.ndjson"
        broken.write_text("\n".join(lines) + "\n")
        code = main(["replay", "--log", str(broken)])
        assert code == 1
        err = capsys.readouterr().err
        assert "CorruptLog" in err and "3" in err

    def test_matrix_and_criteria_export_round_trip(self, tmp_path, capsys):
        path, live = self.make_log(tmp_path)
        matrix_out = tmp_path / "final.csv"
        criteria_out = tmp_path / "final-criteria.json"
        assert main(["replay", "--log", str(path),
                     "--matrix-out", str(matrix_out),
                     "--criteria-out", str(criteria_out)]) == 0
        assert main(["rank", "--matrix", str(matrix_out),
                     "--criteria", str(criteria_out), "--json"]) == 0
        offline = json.loads(capsys.readouterr().out.splitlines()[-1])
        live_ranking = live.recommendation().ranking.to_payload()
        assert dumps_canonical(offline) == dumps_canonical(live_ranking)


def wait_for_port(port, timeout=10.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        try:
            with socket.create_connection(("127.0.0.1", port), timeout=0.2):
                return
        except OSError:
            time.sleep(0.05)
    raise TimeoutError(f"server on port {port} never came up")


@pytest.fixture
def live_server(tmp_path):
    import uvicorn

    from planrank.service import SessionStore, create_app

    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    store = SessionStore(log_dir=tmp_path / "logs")
    store.load()
    config = uvicorn.Config(create_app(store=store), host="127.0.0.1", port=port,
                            log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    wait_for_port(port)
    yield f"http://127.0.0.1:{port}", tmp_path / "logs"
    server.should_exit = True
    thread.join(timeout=5)


class TestSimulateToServer:
    def test_streaming_matches_offline_rank(self, live_server, tmp_path, capsys):
        base, log_dir = live_server
        assert main(["simulate", "--scenario", "hepatectomy", "--seed", "42",
                     "--frames", "6", "--session", "live1",
                     "--to-addr", base]) == 0
        capsys.readouterr()
        with urllib.request.urlopen(f"{base}/sessions/live1/ranking") as response:
            service_ranking = json.loads(response.read())["ranking"]

        log = log_dir / "live1.ndjson"
        matrix_out = tmp_path / "final.csv"
        criteria_out = tmp_path / "criteria.json"
        assert main(["replay", "--log", str(log), "--matrix-out", str(matrix_out),
                     "--criteria-out", str(criteria_out)]) == 0
        capsys.readouterr()
        assert main(["rank", "--matrix", str(matrix_out),
                     "--criteria", str(criteria_out), "--json"]) == 0
        offline = json.loads(capsys.readouterr().out.splitlines()[-1])
        assert dumps_canonical(offline) == dumps_canonical(service_ranking)

    def test_bad_address_exit_one(self, capsys):
        code = main(["simulate", "--scenario", "whipple", "--seed", "1",
                     "--frames", "1", "--to-addr", "http://127.0.0.1:9"])
        assert code == 1
