"""Walkthrough: load a tiny word-vector model, index a handful of
properties, and rank them for natural-language queries.

Run with:  python3 demos/01_embeddings_and_ranking.py
"""
import io

from propsearch import (
    PropertyRecord,
    build_index,
    load_model,
    load_stopwords,
    rank_semantic,
    search,
)

# A miniature word2vec-text model: "<vocab> <dim>" header, then one
# word per line.  Real runs point load_model at e.g. a GloVe .txt or
# fastText .vec file instead.
MODEL = """\
8 3
end 1 0 0
time 0 1 0
family 0 0 1
mother 0 0.2 1
father 0 0.1 1
spouse 0.1 0 0.9
country 1 1 0
population 0.9 1 0.1
"""

PROPERTIES = [
    PropertyRecord("P582", "end time", aliases=("divorced", "to")),
    PropertyRecord("P25", "mother", aliases=("mom",)),
    PropertyRecord("P22", "father", aliases=("dad",)),
    PropertyRecord("P26", "spouse", aliases=("wife", "husband")),
    PropertyRecord("P17", "country"),
    PropertyRecord("P1082", "population"),
]

stopwords = load_stopwords()
model = load_model(io.StringIO(MODEL), model_id="demo")
index = build_index(model, PROPERTIES, use_description=False, stopwords=stopwords)

print("== semantic ranking for 'family' (no exact label matches) ==")
for pid, score in rank_semantic(index, model, "family", stopwords=stopwords):
    print(f"  {pid:6s} {score:+.4f}")

print("\n== three-tier search for 'divorced' (exact alias of P582) ==")
for m in search(index, model, "divorced", limit=5, stopwords=stopwords):
    print(f"  {m.rank}. {m.property_id:6s} [{m.tier}] {m.score:.4f}  {m.label}")

print("\n== entity-scoped search: only the 'person' properties ==")
scope = frozenset({"P25", "P22", "P26"})
for m in search(index, model, "family", scope=scope, limit=5, stopwords=stopwords):
    print(f"  {m.rank}. {m.property_id:6s} [{m.tier}] {m.score:.4f}  {m.label}")
