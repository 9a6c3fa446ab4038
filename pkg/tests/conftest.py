import io
import json

import numpy as np
import pytest

from propsearch import (
    PropertyRecord,
    build_index,
    load_model,
)

STOPWORDS = frozenset({"the", "of", "a", "to", "in", "and"})

TOY_MODEL_TEXT = (
    "6 3\n"
    "end 1 0 0\n"
    "time 0 1 0\n"
    "family 0 0 1\n"
    "mother 0 0.2 1\n"
    "spouse 0.1 0 0.9\n"
    "noise 1 -1 0\n"
)

TOY_PROPERTIES = [
    PropertyRecord("P1", "end time", description="moment it ended", aliases=("divorced", "to")),
    PropertyRecord("P2", "mother", aliases=("mom",)),
    PropertyRecord("P3", "spouse", aliases=("wife", "husband")),
    PropertyRecord("P4", "zzzz", aliases=("unknownalias",)),
]


@pytest.fixture
def toy_model():
    return load_model(io.StringIO(TOY_MODEL_TEXT), model_id="toy")


@pytest.fixture
def toy_properties():
    return list(TOY_PROPERTIES)


@pytest.fixture
def toy_index(toy_model, toy_properties):
    return build_index(toy_model, toy_properties, False, STOPWORDS)


@pytest.fixture
def stopwords():
    return STOPWORDS


def properties_jsonl(records):
    return "".join(
        json.dumps(
            {
                "id": r.id,
                "label": r.label,
                "description": r.description,
                "aliases": list(r.aliases),
            }
        )
        + "\n"
        for r in records
    )


def random_model(rng, n_words, dim, model_id="rand"):
    """Build an EmbeddingModel directly from random float32 rows."""
    from propsearch.embeddings import EmbeddingModel

    words = [f"w{i}" for i in range(n_words)]
    vectors = rng.standard_normal((n_words, dim), dtype=np.float32)
    return EmbeddingModel(
        model_id=model_id,
        dim=dim,
        vocab={w: i for i, w in enumerate(words)},
        vectors=vectors,
    )
