import json

from fastapi.testclient import TestClient

from corpus import s1, torus_bundle, torus_facts, torus_projection
from main import app
from workspace import complex_to_dict, fact_lines

client = TestClient(app)


def test_root():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_validate_and_chi():
    torus = complex_to_dict(torus_bundle().total)
    response = client.post("/api/validate", json={"complex": torus})
    assert response.status_code == 200
    assert response.json() == {"name": "torus", "dimension": 2, "f_vector": [9, 27, 18], "connected": True}
    assert client.post("/api/chi", json={"complex": torus}).json() == {"chi": 0}


def test_malformed_complex_is_422():
    broken = {"name": "broken", "vertex_count": 2, "maximal_simplices": [[0, 1]], "simplices": [[0], [0, 1]]}
    response = client.post("/api/validate", json={"complex": broken})
    assert response.status_code == 422
    assert "face closure violated" in response.json()["detail"]


def test_subdivide_and_pi1():
    circle = complex_to_dict(s1())
    response = client.post("/api/subdivide", json={"complex": circle, "depth": 2})
    assert response.json()["vertex_count"] == 12
    response = client.post("/api/pi1", json={"complex": circle})
    assert response.json()["abelianization"] == {"rank": 1, "torsion": []}


def test_cat_bounds():
    circle = complex_to_dict(s1())
    response = client.post("/api/cat/upper", json={"complex": circle, "class": "amenable"})
    assert response.status_code == 200
    body = response.json()
    assert body["bound"] == 1
    assert body["strategy"] == "greedy"
    assert all(p["answer"] == "yes" for p in body["pieces"])
    response = client.post("/api/cat/lower", json={"complex": circle, "class": "amenable"})
    assert response.json() == {"bound": 1}


def test_unknown_class_is_422():
    response = client.post("/api/cat/upper", json={"complex": complex_to_dict(s1()), "class": "nilpotent"})
    assert response.status_code == 422


def test_cover_check():
    circle = complex_to_dict(s1())
    response = client.post(
        "/api/cover/check",
        json={"complex": circle, "class": "trivial", "pieces": [[0, 1], [2]], "partition": True},
    )
    assert response.status_code == 200
    assert response.json()["overall"]["answer"] == "yes"


def test_fca_check():
    f = torus_projection()
    response = client.post(
        "/api/fca/check",
        json={
            "source": complex_to_dict(f.source),
            "target": complex_to_dict(f.target),
            "vertex_map": list(f.vertex_map),
            "class": "subexp<1/2",
            "dim": 1,
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"]["answer"] == "yes"
    assert len(body["fibres"]) == 6


def test_certify():
    facts = [json.loads(line) for line in fact_lines(torus_facts())]
    response = client.post("/api/certify", json={"facts": facts, "goal": "simvol_zero(torus)"})
    assert response.status_code == 200
    body = response.json()
    assert body["success"]
    assert body["rules"] == ["R1", "R3"]
    assert body["depth"] == 2
    assert body["contradictions"] == []
