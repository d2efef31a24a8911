import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from cyclovertex.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    assert client.get("/health").json() == {"status": "ok", "schema": 1}


def test_routes(client):
    r = client.post("/bracket", json={"algebra": "virasoro", "x": "w[2]", "y": "w[-2]"})
    assert r.status_code == 200 and r.json()["text"] == "4*w[0] + 1/2*c(-1)"
    r = client.post("/ope", json={"algebra": "affine_sl2", "A": "e(-1)|0>", "B": "f(-1)|0>"})
    assert r.json()["result"] == {"0": "h(-1)|0>", "1": "|0>"}
    r = client.post("/reduce", json={"config": {"algebra": "heisenberg_sl2", "T": 3}, "A": "e(-1)e*(-1)|0>"})
    assert r.json()["text"] == "(u^-1) * 1"
    r = client.post("/verify", json={"suite": "need0", "T": 2})
    assert r.json()["cases"] == 4


def test_errors(client):
    r = client.post("/ope", json={"algebra": "virasoro", "A": "q(-1)|0>", "B": "|0>"})
    assert r.status_code == 422 and r.json()["detail"]["position"] == 0
    assert client.post("/verify", json={"suite": "nope"}).status_code == 422
    assert client.post("/nthprod", json={"algebra": "e8", "x": "a", "y": "a"}).status_code == 400
    cfg = client.post("/algebras/show", json={"algebra": "virasoro"}).json()
    assert cfg["schema"] == 1
    bad = {"order": 1, "central": "c", "generators": [{"name": "w", "degree": 2, "sigma_exponent": 0}],
           "products": [{"a": "w", "b": "w", "n": 0, "value": [{"gen": "w", "dpow": 1, "coeff": 2}]}]}
    r = client.post("/algebras/check", json=bad)
    assert r.status_code == 200 and r.json()["ok"] is False
