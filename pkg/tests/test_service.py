import pytest
from fastapi.testclient import TestClient

from propsearch.service import create_app

from conftest import STOPWORDS, TOY_PROPERTIES


@pytest.fixture
def client(toy_index, toy_model):
    app = create_app(toy_index, toy_model, STOPWORDS, properties=TOY_PROPERTIES)
    return TestClient(app)


class TestHealth:
    def test_health_probe(self, client):
        resp = client.get("/v1/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["properties"] == 4
        assert body["dim"] == 3


class TestRank:
    def test_alias_exact_top(self, client):
        resp = client.post("/v1/rank", json={"query": "divorced", "limit": 5})
        assert resp.status_code == 200
        body = resp.json()
        assert body["results"][0]["property_id"] == "P1"
        assert body["results"][0]["tier"] == "alias_exact"
        assert body["elapsed_micros"] >= 0

    def test_empty_query_reason(self, client):
        resp = client.post("/v1/rank", json={"query": "", "limit": 5})
        assert resp.status_code == 200
        body = resp.json()
        assert body["results"] == []
        assert body["reason"] == "empty_query"

    def test_entity_scope(self, client):
        resp = client.post(
            "/v1/rank",
            json={"query": "family", "entity_properties": ["P2", "P3"]},
        )
        assert resp.status_code == 200
        ids = [r["property_id"] for r in resp.json()["results"]]
        assert ids and set(ids) <= {"P2", "P3"}

    def test_unknown_scope_ids_rejected(self, client):
        resp = client.post(
            "/v1/rank",
            json={"query": "family", "entity_properties": ["P2", "P999"]},
        )
        assert resp.status_code == 400
        assert resp.json()["detail"]["unknown"] == ["P999"]

    def test_malformed_json(self, client):
        resp = client.post(
            "/v1/rank",
            content=b"{not json",
            headers={"content-type": "application/json"},
        )
        assert 400 <= resp.status_code < 500

    def test_missing_query_field(self, client):
        resp = client.post("/v1/rank", json={"limit": 3})
        assert resp.status_code == 422

    def test_query_tokens_reported(self, client):
        resp = client.post("/v1/rank", json={"query": "The End Time"})
        assert resp.json()["query_tokens"] == ["end", "time"]

    def test_deterministic_responses(self, client):
        bodies = set()
        for _ in range(3):
            resp = client.post("/v1/rank", json={"query": "family"})
            body = resp.json()
            body.pop("elapsed_micros")
            bodies.add(str(body))
        assert len(bodies) == 1


class TestPropertyDetail:
    def test_record_echo(self, client):
        resp = client.get("/v1/properties/P1")
        assert resp.status_code == 200
        body = resp.json()
        assert body["label"] == "end time"
        assert body["aliases"] == ["divorced", "to"]
        assert body["description"] == "moment it ended"
        assert body["has_vector"] is True

    def test_unknown_property_404(self, client):
        assert client.get("/v1/properties/P999").status_code == 404
