"""Walkthrough: persist an index, then exercise the JSON webservice
endpoints in-process (the same app `propsearch serve` runs under uvicorn).

Run with:  python3 demos/03_service.py
"""
import io
import tempfile

from fastapi.testclient import TestClient

from propsearch import (
    PropertyRecord,
    build_index,
    load_index,
    load_model,
    load_stopwords,
    save_index,
)
from propsearch.service import create_app

MODEL = """\
6 3
end 1 0 0
time 0 1 0
family 0 0 1
mother 0 0.2 1
father 0 0.1 1
spouse 0.1 0 0.9
"""

PROPERTIES = [
    PropertyRecord("P582", "end time", description="moment it ended", aliases=("divorced", "to")),
    PropertyRecord("P25", "mother", aliases=("mom",)),
    PropertyRecord("P22", "father", aliases=("dad",)),
    PropertyRecord("P26", "spouse", aliases=("wife", "husband")),
]

stopwords = load_stopwords()
model = load_model(io.StringIO(MODEL), model_id="demo-service")
index = build_index(model, PROPERTIES, use_description=False, stopwords=stopwords)

# persist and reload, the way `propsearch build-index` + `propsearch serve` do
with tempfile.TemporaryFile() as fh:
    nbytes = save_index(index, fh)
    fh.seek(0)
    index = load_index(fh)
print(f"index persisted and reloaded ({nbytes} bytes)\n")

client = TestClient(create_app(index, model, stopwords, properties=PROPERTIES))

print("GET /v1/health ->", client.get("/v1/health").json())

resp = client.post("/v1/rank", json={"query": "divorced", "limit": 3}).json()
print("\nPOST /v1/rank {'query': 'divorced'} ->")
for r in resp["results"]:
    print(f"  {r['rank']}. {r['property_id']} [{r['tier']}] {r['score']:.3f} {r['label']}")

resp = client.post(
    "/v1/rank",
    json={"query": "family", "entity_properties": ["P25", "P22", "P26"]},
).json()
print("\nPOST /v1/rank scoped to a person's properties ->")
for r in resp["results"]:
    print(f"  {r['rank']}. {r['property_id']} [{r['tier']}] {r['score']:.3f} {r['label']}")

print("\nGET /v1/properties/P582 ->", client.get("/v1/properties/P582").json())
