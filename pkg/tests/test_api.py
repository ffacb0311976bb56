from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from storyweave.api import create_app
from storyweave.config import AppConfig
from storyweave.content import CINDERELLA_PROBE_PART, CINDERELLA_SUMMARY


@pytest.fixture
def client(tmp_path):
    config = AppConfig(data_dir=str(tmp_path))
    app = create_app(config)
    return TestClient(app)


def create_session(client, policy=None):
    body = {"text": CINDERELLA_SUMMARY}
    if policy:
        body["policy"] = policy
    response = client.post("/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()["session_id"]


def highlight(client, sid):
    start = CINDERELLA_SUMMARY.index(CINDERELLA_PROBE_PART)
    response = client.post(
        f"/sessions/{sid}/commands",
        json={
            "kind": "highlight",
            "start": start,
            "end": start + len(CINDERELLA_PROBE_PART),
        },
    )
    assert response.status_code == 200
    return response


def node_id_by_label(client, sid, label):
    view = client.get(f"/sessions/{sid}").json()
    for node in view["tree"]["nodes"]:
        if node["label"] == label:
            return node["node_id"]
    raise AssertionError(label)


class TestSessions:
    def test_create_full(self, client):
        sid = create_session(client)
        view = client.get(f"/sessions/{sid}").json()
        assert view["document"]["text"] == CINDERELLA_SUMMARY
        assert view["policy"]["mode"] == "full"

    def test_create_baseline(self, client):
        sid = create_session(client, {"mode": "baseline"})
        view = client.get(f"/sessions/{sid}").json()
        assert view["policy"]["max_depth"] == 2

    def test_create_empty_text(self, client):
        response = client.post("/sessions", json={"text": "  "})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "EMPTY_DOCUMENT"

    def test_unknown_session_404(self, client):
        response = client.get("/sessions/nope")
        assert response.status_code == 404
        assert response.json()["error"]["code"] == "UNKNOWN_SESSION"

    def test_healthz(self, client):
        assert client.get("/healthz").json() == {"status": "ok"}


class TestCommands:
    def test_probe_returns_tree_delta_and_event(self, client):
        sid = create_session(client)
        highlight(client, sid)
        response = client.post(f"/sessions/{sid}/commands", json={"kind": "probe"})
        body = response.json()
        assert body["event"]["kind"] == "probed"
        roots = body["view"]["tree"]["roots"]
        assert len(roots) == 8

    def test_depth_cap_error_code_no_event(self, client):
        sid = create_session(client, {"mode": "baseline"})
        highlight(client, sid)
        client.post(f"/sessions/{sid}/commands", json={"kind": "probe"})
        settings = node_id_by_label(client, sid, "Settings")
        client.post(
            f"/sessions/{sid}/commands", json={"kind": "expand", "node_id": settings}
        )
        location = node_id_by_label(client, sid, "Location")
        before = client.get(f"/sessions/{sid}/events").json()["latest"]
        response = client.post(
            f"/sessions/{sid}/commands", json={"kind": "expand", "node_id": location}
        )
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "DEPTH_CAP"
        assert client.get(f"/sessions/{sid}/events").json()["latest"] == before

    def test_selection_cap_error_code(self, client):
        sid = create_session(client, {"mode": "baseline"})
        highlight(client, sid)
        client.post(f"/sessions/{sid}/commands", json={"kind": "probe"})
        theme = node_id_by_label(client, sid, "Theme")
        plot = node_id_by_label(client, sid, "Plot")
        client.post(
            f"/sessions/{sid}/commands", json={"kind": "select", "node_id": theme}
        )
        response = client.post(
            f"/sessions/{sid}/commands", json={"kind": "select", "node_id": plot}
        )
        assert response.status_code == 409
        assert response.json()["error"]["code"] == "SELECTION_CAP"

    def test_malformed_command_400(self, client):
        sid = create_session(client)
        response = client.post(f"/sessions/{sid}/commands", json={"nope": 1})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "MALFORMED_COMMAND"

    def test_full_workflow_over_http(self, client):
        sid = create_session(client)
        highlight(client, sid)
        client.post(f"/sessions/{sid}/commands", json={"kind": "probe"})
        for label in ("Settings", "Location"):
            nid = node_id_by_label(client, sid, label)
            client.post(
                f"/sessions/{sid}/commands", json={"kind": "expand", "node_id": nid}
            )
        for label in ("Terrain", "Romance", "Theme"):
            nid = node_id_by_label(client, sid, label)
            client.post(
                f"/sessions/{sid}/commands", json={"kind": "select", "node_id": nid}
            )
        response = client.post(f"/sessions/{sid}/commands", json={"kind": "synthesize"})
        variation = response.json()["view"]["variation"]
        assert variation["label"] == "M1"
        assert len(variation["direction_paths"]) == 3
        response = client.post(f"/sessions/{sid}/commands", json={"kind": "accept"})
        assert response.json()["view"]["document"]["revision"] == 1

    def test_edit_notice_surfaced(self, client):
        sid = create_session(client)
        highlight(client, sid)
        start = CINDERELLA_SUMMARY.index(CINDERELLA_PROBE_PART)
        response = client.post(
            f"/sessions/{sid}/commands",
            json={"kind": "edit", "at": start + 3, "delete_len": 4, "insert": ""},
        )
        assert response.json()["notices"] == ["SpanInvalidated"]


class TestEventsAndTelemetry:
    def test_incremental_fetch(self, client):
        sid = create_session(client)
        highlight(client, sid)
        body = client.get(f"/sessions/{sid}/events", params={"since": 1}).json()
        assert [e["kind"] for e in body["events"]] == ["highlighted"]
        assert body["latest"] == 2

    def test_telemetry_endpoint(self, client):
        sid = create_session(client)
        highlight(client, sid)
        client.post(f"/sessions/{sid}/commands", json={"kind": "probe"})
        body = client.get(f"/sessions/{sid}/telemetry").json()
        assert body["directions_by_depth"] == {"1": 8}


class TestAuth:
    def test_bearer_token_enforced(self, tmp_path):
        config = AppConfig(bearer_token="t0ken")
        client = TestClient(create_app(config))
        assert client.post("/sessions", json={"text": "x"}).status_code == 401
        assert client.get("/healthz").status_code == 200
        response = client.post(
            "/sessions",
            json={"text": CINDERELLA_SUMMARY},
            headers={"authorization": "Bearer t0ken"},
        )
        assert response.status_code == 201
