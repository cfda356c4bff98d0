"""HTTP service tests over the in-process test client."""

import json

import pytest
from fastapi.testclient import TestClient

from devink.ink import Dataset, Point, Stroke, load_strokes
from devink.pipeline import train_model
from devink.primitives import primitive_by_name
from devink.service import create_app


def _toy_dataset(per_class=6):
    strokes = []
    for i in range(per_class):
        east = tuple(Point(3.0 * k, 0.1 * i * k, 10 * k) for k in range(20))
        north = tuple(Point(0.1 * i * k, 3.0 * k, 10 * k) for k in range(20))
        strokes.append(Stroke(f"u{i}", east, primitive_by_name("u")))
        strokes.append(Stroke(f"e{i}", north, primitive_by_name("e")))
    return Dataset(tuple(strokes))


@pytest.fixture(scope="module")
def gaussian_client():
    tm = train_model(
        _toy_dataset(), preprocess="spline", feature="fdf", classifier="gaussian"
    )
    with TestClient(create_app(tm)) as client:
        yield client


def _east_request(**extra):
    body = {"points": [[0, 0, 0], [10, 0, 10]], "y_down": False}
    body.update(extra)
    return body


# ---------------------------------------------------------------------------
# health and registry


def test_health_reports_model(gaussian_client):
    r = gaussian_client.get("/api/health")
    assert r.status_code == 200
    assert r.json() == {
        "status": "ok",
        "model_kind": "gaussian",
        "feature_kind": "fdf",
    }


def test_primitive_registry_is_complete_and_stable(gaussian_client):
    r1 = gaussian_client.get("/api/primitives")
    r2 = gaussian_client.get("/api/primitives")
    assert r1.status_code == 200
    entries = r1.json()
    assert len(entries) == 69
    assert entries[0] == {"index": 1, "name": "a"}
    assert [e["index"] for e in entries] == list(range(1, 70))
    assert r1.content == r2.content


# ---------------------------------------------------------------------------
# recognition


def test_two_point_east_stroke_has_unit_fdf(gaussian_client):
    r = gaussian_client.post("/api/recognize", json=_east_request())
    assert r.status_code == 200
    body = r.json()
    assert body["feature"] == [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    assert body["candidates"][0]["name"] == "u"
    ranks = [c["rank"] for c in body["candidates"]]
    assert ranks == list(range(1, len(ranks) + 1))
    assert len(body["candidates"]) == 5
    assert len(body["smoothed"]) == 2
    assert len(body["critical_points"]) >= 2


def test_screen_frame_overlays_come_back_in_screen_frame(gaussian_client):
    body = {"points": [[0, 100, 0], [10, 100, 10]], "y_down": True}
    r = gaussian_client.post("/api/recognize", json=body)
    assert r.status_code == 200
    doc = r.json()
    # same geometry as the y-up request, overlays restored to y-down
    assert doc["feature"][0] == 1.0
    assert doc["smoothed"][0][1] == pytest.approx(100.0)
    assert all(y > 0 for _, y in doc["critical_points"])


def test_top_is_clamped_to_registry_size(gaussian_client):
    r = gaussian_client.post("/api/recognize", json=_east_request(top=500))
    assert r.status_code == 200
    cands = r.json()["candidates"]
    assert len(cands) == 69
    assert [c["rank"] for c in cands] == list(range(1, 70))
    assert len({c["name"] for c in cands}) == 69
    # classes the model cannot score still appear, with a null score
    assert any(c["score"] is None for c in cands[-1:]) or all(
        c["score"] is not None for c in cands
    )


def test_identical_requests_get_identical_bytes(gaussian_client):
    r1 = gaussian_client.post("/api/recognize", json=_east_request(top=7))
    r2 = gaussian_client.post("/api/recognize", json=_east_request(top=7))
    assert r1.content == r2.content


def test_dtw_model_identity_match_scores_zero():
    probe = tuple(Point(4.0 * k, 0.0, 10 * k) for k in range(12))
    vert = tuple(Point(0.0, 4.0 * k, 10 * k) for k in range(12))
    ds = Dataset(
        (
            Stroke("u0", probe, primitive_by_name("u")),
            Stroke("e0", vert, primitive_by_name("e")),
        )
    )
    tm = train_model(ds, preprocess="raw", feature="df", classifier="dtw")
    with TestClient(create_app(tm)) as client:
        r = client.post(
            "/api/recognize",
            json={"points": [[p.x, p.y, p.t] for p in probe], "y_down": False},
        )
    assert r.status_code == 200
    top1 = r.json()["candidates"][0]
    assert top1["name"] == "u"
    assert top1["score"] == 0.0


# ---------------------------------------------------------------------------
# error handling


@pytest.mark.parametrize(
    "body",
    [
        {},
        {"points": [[0, 0, 0]], "y_down": False},
        {"points": "nope", "y_down": False},
        {"points": [[0, 0, 0], [1, 1, 0]], "y_down": False},
    ],
)
def test_bad_strokes_get_machine_readable_400(gaussian_client, body):
    r = gaussian_client.post("/api/recognize", json=body)
    assert r.status_code == 400
    err = r.json()["error"]
    assert err["code"] == "bad-stroke"
    assert err["message"]


def test_non_json_body_is_400(gaussian_client):
    r = gaussian_client.post(
        "/api/recognize",
        content=b"{not json",
        headers={"content-type": "application/json"},
    )
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "malformed-request"


@pytest.mark.parametrize("top", [0, -3, 1.5, "five", True])
def test_bad_top_is_400(gaussian_client, top):
    r = gaussian_client.post("/api/recognize", json=_east_request(top=top))
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "malformed-request"


def test_unknown_label_is_400(gaussian_client):
    r = gaussian_client.post("/api/recognize", json=_east_request(label="zz"))
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "unknown-label"


def test_save_without_label_is_400(gaussian_client):
    r = gaussian_client.post("/api/recognize", json=_east_request(save=True))
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "label-required"


def test_no_model_gives_503():
    with TestClient(create_app(None)) as client:
        health = client.get("/api/health").json()
        assert health["status"] == "no-model"
        r = client.post("/api/recognize", json=_east_request())
    assert r.status_code == 503
    assert r.json()["error"]["code"] == "model-not-loaded"


# ---------------------------------------------------------------------------
# dataset recording


def test_save_appends_canonical_jsonl(tmp_path):
    record = tmp_path / "pad.jsonl"
    tm = train_model(
        _toy_dataset(), preprocess="raw", feature="fdf", classifier="gaussian"
    )
    with TestClient(create_app(tm, record_path=str(record))) as client:
        body = _east_request(label="u", save=True)
        r1 = client.post("/api/recognize", json=body)
        r2 = client.post("/api/recognize", json=body)
    assert r1.json()["saved"] is True
    lines = record.read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == lines[1]
    saved = load_strokes(record)
    assert saved.strokes[0].label.name == "u"
    assert saved.strokes[0].id.startswith("pad-")
    assert json.loads(lines[0])["y_down"] is False


def test_save_without_record_path_reports_false(gaussian_client):
    r = gaussian_client.post(
        "/api/recognize", json=_east_request(label="u", save=True)
    )
    assert r.status_code == 200
    assert r.json()["saved"] is False
