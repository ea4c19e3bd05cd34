from fastapi.testclient import TestClient

from homcat.main import app
from homcat.services import catalog

client = TestClient(app)


def test_root():
    body = client.get("/").json()
    assert body["name"] == "homcat"
    assert body["status"] == "ok"


def test_reduce():
    res = client.post("/api/reduce", json={"tree": "((g@0 (g'@2 g@5)) ((g'@5 g@2) g@1))"})
    assert res.status_code == 200
    body = res.json()
    assert body["normal_form"] == "(g@1 g@2)"
    assert [s["rule"] for s in body["steps"]] == ["DL4", "DL1"]


def test_reduce_errors():
    res = client.post("/api/reduce", json={"tree": "(g@0"})
    assert res.status_code == 422
    assert "column" in res.json()["detail"]["error"]
    res = client.post("/api/reduce", json={"tree": "g@0", "strategy": "widest"})
    assert res.status_code == 422


def test_check_group():
    spec = catalog.group("z6_5x").to_spec().model_dump()
    res = client.post("/api/check/group", json=spec)
    assert res.status_code == 200
    body = res.json()
    assert body["regular"] is True
    assert all(v["status"] == "pass" for v in body["axioms"])


def test_check_group_rejects_bad_tables():
    res = client.post("/api/check/group", json={"n": 2, "e": 0, "mul": [[0, 1]], "alpha": [0, 1]})
    assert res.status_code == 422
    res = client.post("/api/check/group", json={"n": 2, "e": 0, "mul": [[0, 0], [0, 0]], "alpha": [0, 0]})
    assert res.status_code == 422
    assert "inverse" in res.json()["detail"]["error"]


def test_check_ring():
    spec = catalog.ring("end_z6_5x").to_spec().model_dump(mode="json", by_alias=True)
    res = client.post("/api/check/ring", json=spec)
    assert res.status_code == 200
    statuses = {v["name"]: v["status"] for v in res.json()["axioms"]}
    assert statuses["left-distributivity"] == "fail"


def test_catalog_routes():
    index = client.get("/api/catalog").json()
    assert "s3_twisted" in index["group"]
    assert "f2c3_twist" in index["ring"]
    assert "null_over_f2" in index["module"]
    entry = client.get("/api/catalog/f2c3_augmentation").json()
    assert entry["kind"] == "module"
    assert entry["spec"]["m"] == 2
    assert client.get("/api/catalog/nope").status_code == 404
