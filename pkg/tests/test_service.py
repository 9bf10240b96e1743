from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from pictoscaffold.service import create_app

# 1x1 transparent PNG
PNG_BYTES = bytes.fromhex(
    "89504e470d0a1a0a0000000d49484452000000010000000108060000001f15c489"
    "0000000d49444154789c626001000000ffff03000006000557bfabd40000000049454e44ae426082"
)

FIXTURE_TEXT = (
    "The little prince lived on a small planet. "
    "Every morning he watered his rose. "
    "A golden fox waited near the old well."
)


@pytest.fixture()
def client(scaffolder, tmp_path):
    image_dir = tmp_path / "images"
    image_dir.mkdir()
    (image_dir / "101.png").write_bytes(PNG_BYTES)
    app = create_app(
        scaffolder,
        image_dir=image_dir,
        audit_path=tmp_path / "audits.csv",
        session_persist_dir=None,
    )
    return TestClient(app)


def make_session(client, **overrides):
    body = {"text": FIXTURE_TEXT, "language": "en"}
    body.update(overrides)
    response = client.post("/api/v1/sessions", json=body)
    assert response.status_code == 201, response.text
    return response.json()


class TestHealth:
    def test_healthz(self, client):
        assert client.get("/healthz").json() == {"status": "ok"}


class TestScaffoldEndpoint:
    def test_identical_bodies_identical_responses(self, client):
        body = {"text": FIXTURE_TEXT, "language": "en"}
        first = client.post("/api/v1/scaffold", json=body)
        second = client.post("/api/v1/scaffold", json=body)
        assert first.status_code == 200
        assert first.content == second.content

    def test_timing_opt_in(self, client):
        body = {"text": "The prince slept.", "language": "en"}
        without = client.post("/api/v1/scaffold", json=body).json()
        assert "timing" not in without[0]
        with_timing = client.post("/api/v1/scaffold?timing=true", json=body).json()
        assert with_timing[0]["timing"]["total"] >= 0.0

    def test_empty_text_422_with_code(self, client):
        response = client.post("/api/v1/scaffold", json={"text": "  ", "language": "en"})
        assert response.status_code == 422
        payload = response.json()
        assert payload["code"] == "empty_input"
        assert "message" in payload

    def test_unsupported_language_422(self, client):
        german = "Der kleine Prinz wohnte auf einem winzigen Planeten und pflegte seine Rose."
        response = client.post("/api/v1/scaffold", json={"text": german})
        assert response.status_code == 422
        assert response.json()["code"] == "unsupported_language"

    def test_unknown_body_field_rejected(self, client):
        response = client.post(
            "/api/v1/scaffold", json={"text": "x", "bogus": 1, "language": "en"}
        )
        assert response.status_code == 422
        payload = response.json()
        assert payload["code"] == "validation_error"
        assert "message" in payload


class TestSessions:
    def test_create_and_get(self, client):
        session = make_session(client)
        assert session["cursor"] == 0
        assert session["length"] == 3
        assert session["language"] == "en"
        got = client.get(f"/api/v1/sessions/{session['id']}").json()
        assert got["id"] == session["id"]

    def test_two_sessions_same_text_distinct_ids_same_documents(self, client):
        a = make_session(client)
        b = make_session(client)
        assert a["id"] != b["id"]
        sentence_a = client.get(f"/api/v1/sessions/{a['id']}/sentences/1").json()["sentence"]
        sentence_b = client.get(f"/api/v1/sessions/{b['id']}/sentences/1").json()["sentence"]
        assert sentence_a == sentence_b

    def test_missing_session_404(self, client):
        response = client.get("/api/v1/sessions/nope")
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"

    def test_index_out_of_range(self, client):
        session = make_session(client)
        response = client.get(f"/api/v1/sessions/{session['id']}/sentences/3")
        assert response.status_code == 404
        assert response.json()["code"] == "index_out_of_range"

    def test_advance_moves_cursor(self, client):
        session = make_session(client)
        client.get(f"/api/v1/sessions/{session['id']}/sentences/2?advance=true")
        got = client.get(f"/api/v1/sessions/{session['id']}").json()
        assert got["cursor"] == 2

    def test_get_without_advance_keeps_cursor(self, client):
        session = make_session(client)
        client.get(f"/api/v1/sessions/{session['id']}/sentences/2")
        assert client.get(f"/api/v1/sessions/{session['id']}").json()["cursor"] == 0


class TestViewSettings:
    def test_hide_pictograms_strips_matches_keeps_keywords(self, client):
        session = make_session(client, settings={"show_keywords": True, "show_pictograms": False})
        view = client.get(f"/api/v1/sessions/{session['id']}/sentences/0").json()["sentence"]
        assert view["matches"] == []
        assert view["keywords"]

    def test_toggle_round_trip_restores_identical_view(self, client):
        session = make_session(client)
        url = f"/api/v1/sessions/{session['id']}/sentences/1"
        before = client.get(url).content
        client.patch(
            f"/api/v1/sessions/{session['id']}/settings", json={"show_pictograms": False}
        )
        hidden = client.get(url).content
        assert hidden != before
        client.patch(
            f"/api/v1/sessions/{session['id']}/settings", json={"show_pictograms": True}
        )
        after = client.get(url).content
        assert after == before  # byte-identical

    def test_patch_partial_update(self, client):
        session = make_session(client)
        got = client.patch(
            f"/api/v1/sessions/{session['id']}/settings", json={"show_keywords": False}
        ).json()
        assert got == {"show_keywords": False, "show_pictograms": True}

    def test_empty_patch_is_identity(self, client):
        session = make_session(client)
        got = client.patch(f"/api/v1/sessions/{session['id']}/settings", json={}).json()
        assert got == {"show_keywords": True, "show_pictograms": True}

    def test_unknown_patch_field_400(self, client):
        session = make_session(client)
        response = client.patch(
            f"/api/v1/sessions/{session['id']}/settings", json={"volume": 11}
        )
        assert response.status_code == 400
        payload = response.json()
        assert payload["code"] == "bad_request"
        assert "volume" in payload["message"]

    def test_settings_isolated_between_sessions(self, client):
        a = make_session(client)
        b = make_session(client)
        client.patch(f"/api/v1/sessions/{a['id']}/settings", json={"show_pictograms": False})
        view_b = client.get(f"/api/v1/sessions/{b['id']}/sentences/0").json()["sentence"]
        assert view_b["matches"]


class TestImages:
    def test_present_image_served_as_png(self, client):
        response = client.get("/api/v1/pictograms/101/image")
        assert response.status_code == 200
        assert response.headers["content-type"] == "image/png"
        assert response.content == PNG_BYTES

    def test_missing_image_404(self, client):
        response = client.get("/api/v1/pictograms/999/image")
        assert response.status_code == 404
        assert response.json()["code"] == "image_not_found"


class TestAudits:
    RECORDS = [
        {"reviewer_id": "r1", "language": "en", "sentence_id": 0,
         "item_kind": "keyword", "item_ref": "prince", "rating": "C"},
        {"reviewer_id": "r1", "language": "en", "sentence_id": 0,
         "item_kind": "pictogram", "item_ref": "101", "rating": "A"},
        {"reviewer_id": "r1", "language": "en", "sentence_id": 1,
         "item_kind": "keyword", "item_ref": "rose", "rating": "C"},
    ]

    def test_accepts_json_batch(self, client):
        response = client.post("/api/v1/audits", json=self.RECORDS)
        assert response.status_code == 200
        assert response.json() == {"accepted": 3}

    def test_duplicate_batch_accepted_zero(self, client):
        client.post("/api/v1/audits", json=self.RECORDS)
        response = client.post("/api/v1/audits", json=self.RECORDS)
        assert response.json() == {"accepted": 0}

    def test_invalid_rating_422(self, client):
        bad = dict(self.RECORDS[0], rating="X")
        response = client.post("/api/v1/audits", json=[bad])
        assert response.status_code == 422

    def test_accepts_csv_body(self, client):
        csv_body = (
            "reviewer_id,language,sentence_id,item_kind,item_ref,rating\n"
            "r9,fr,4,keyword,petit prince,C\n"
        )
        response = client.post(
            "/api/v1/audits", content=csv_body, headers={"content-type": "text/csv"}
        )
        assert response.json() == {"accepted": 1}


class TestReports:
    def test_coverage_after_scaffolding(self, client):
        client.post("/api/v1/scaffold", json={"text": FIXTURE_TEXT, "language": "en"})
        report = client.get("/api/v1/reports/coverage?lang=en").json()
        assert report["totals"]["sentences"] == 3
        assert 0.0 <= report["k2p_coverage"] <= 100.0
        total = report["pct_zero"] + report["pct_partial"] + report["pct_full"]
        assert abs(total - 100.0) <= 0.1

    def test_latency_after_scaffolding(self, client):
        client.post("/api/v1/scaffold", json={"text": FIXTURE_TEXT, "language": "en"})
        report = client.get("/api/v1/reports/latency?lang=en").json()
        assert report["n"] == 3
        assert report["min"] <= report["median"] <= report["max"]

    def test_no_data_404(self, client):
        assert client.get("/api/v1/reports/coverage?lang=it").status_code == 404
        assert client.get("/api/v1/reports/latency?lang=it").status_code == 404
