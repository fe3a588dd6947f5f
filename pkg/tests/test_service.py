from fastapi.testclient import TestClient

from nestfan.service import app

client = TestClient(app)


def test_health():
    assert client.get("/health").json() == {"status": "ok"}


def test_tubes_endpoint():
    resp = client.post("/tubes", json={"graph": "path:3"})
    assert resp.status_code == 200
    assert resp.json()["count"] == 5


def test_tubes_with_graph_object():
    graph = {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}
    resp = client.post("/tubes", json={"graph": graph})
    assert resp.json()["count"] == 5


def test_tubings_endpoint_maximal():
    resp = client.post(
        "/tubings", json={"graph": "cycle:4", "what": "maximal_tubings"}
    )
    assert resp.json()["count"] == 20


def test_tubings_size_filter():
    resp = client.post("/tubings", json={"graph": "cycle:4", "size": 2})
    assert resp.json()["count"] == 30


def test_degree_table_endpoint():
    resp = client.post("/degree-table", json={"graph": "complete:3"})
    data = resp.json()
    assert len(data["tubes"]) == 6
    assert data["matrix"][0][0] == -1


def test_fan_endpoint():
    resp = client.post("/fan", json={"graph": "complete:3", "kind": "primal"})
    data = resp.json()
    assert data["dimension"] == 2
    assert data["rays"]["2,3"] == [2, 1]


def test_fan_check_endpoint():
    resp = client.post("/fan/check", json={"graph": "path:4", "kind": "dual"})
    assert resp.json()["ok"] is True


def test_fan_check_nested():
    resp = client.post("/fan/check", json={"graph": "star:4", "kind": "nested"})
    assert resp.json()["ok"] is True


def test_fan_with_explicit_initial():
    resp = client.post(
        "/fan",
        json={"graph": "complete:3", "initial": [["1"], ["1", "2"]]},
    )
    assert resp.status_code == 200
    assert resp.json()["provenance"]["initial"] == ["1", "1,2"]


def test_dependence_endpoint():
    resp = client.post(
        "/dependence",
        json={
            "graph": "complete:3",
            "initial": "auto",
            "tubing": [["2"], ["2", "3"]],
            "tube": "2",
        },
    )
    data = resp.json()
    assert data["pivot"] == "2"
    assert data["pivot_zero"] is False


def test_polytope_endpoint():
    resp = client.post(
        "/polytope", json={"graph": "path:3", "weights": "heights"}
    )
    data = resp.json()
    assert data["status"] == "ok"
    assert len(data["v_rep"]) == 5


def test_counts_endpoint():
    resp = client.post("/counts", json={"graph": "star:4", "family": "star"})
    assert resp.json()["match"] is True


def test_model_endpoint():
    resp = client.post("/model", json={"family": "complete", "n": 2})
    assert len(resp.json()["rows"]) == 6


def test_orbits_endpoint():
    resp = client.post("/orbits", json={"graph": "path:4"})
    data = resp.json()
    assert data["automorphisms"] == 2
    assert data["fan_classes"] == 3


def test_omega_endpoint():
    resp = client.post(
        "/omega", json={"graph": "spider:0,0,0", "tube": ["v1_0"]}
    )
    assert sorted(resp.json()["tube"]) == ["v2_0", "v3_0"]


def test_plot_endpoint_returns_svg():
    resp = client.post("/plot", json={"graph": "path:4"})
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("image/svg")
    assert resp.text.count("<polygon") == 14


def test_invalid_graph_gives_422():
    resp = client.post("/tubes", json={"graph": "heptapod:3"})
    assert resp.status_code == 422


def test_incompatible_initial_gives_422():
    resp = client.post(
        "/fan", json={"graph": "path:3", "initial": [["1", "2"], ["2", "3"]]}
    )
    assert resp.status_code == 422


def test_guard_gives_413(monkeypatch):
    monkeypatch.setenv("NESTFAN_MAX_VERTICES", "3")
    resp = client.post("/tubes", json={"graph": "path:5"})
    assert resp.status_code == 413


def test_conjecture_scan_endpoint():
    resp = client.post(
        "/conjecture-scan", json={"vertices": 4, "samples": 2, "seed": 5}
    )
    data = resp.json()
    assert data["fan_invalid"] == 0
    assert len(data["rows"]) == 4
