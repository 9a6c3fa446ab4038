"""Three-tier query ranking over a property index.

Tier order: exact label match, exact alias match, then all remaining
properties ordered by cosine similarity between the query phrase vector
and the stored property vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .embeddings import EmbeddingModel, phrase_vector
from .errors import ScopeError
from .index import PropertyIndex
from .ingest import property_id_key, tokenize

TIER_LABEL_EXACT = "label_exact"
TIER_ALIAS_EXACT = "alias_exact"
TIER_SEMANTIC = "semantic"


@dataclass(frozen=True)
class RankedMatch:
    property_id: str
    label: str
    tier: str
    score: float
    rank: int


def _check_scope(index: PropertyIndex, scope: Optional[frozenset[str]]) -> None:
    if scope is None:
        return
    if not scope:
        raise ScopeError("candidate scope is empty")
    unknown = sorted(
        (p for p in scope if index.entry(p) is None), key=property_id_key
    )
    if unknown:
        raise ScopeError("scope references unknown ids: " + ", ".join(unknown))


def rank_semantic(
    index: PropertyIndex,
    model: EmbeddingModel,
    query: str,
    scope: Optional[frozenset[str]] = None,
    stopwords: frozenset[str] = frozenset(),
) -> list[tuple[str, float]]:
    """Full descending cosine ranking of all in-scope properties.

    Properties without a vector are excluded; an all-stopword or all-OOV
    query yields an empty ranking.  Ties break by property id ascending.
    """
    _check_scope(index, scope)
    qvec = phrase_vector(model, tokenize(query, stopwords))
    if qvec is None:
        return []
    ids, matrix = index.vector_matrix()
    if scope is not None:
        keep = [i for i, pid in enumerate(ids) if pid in scope]
        ids = [ids[i] for i in keep]
        matrix = matrix[keep]
    if not ids:
        return []
    q = qvec.astype(np.float64)
    qn = np.linalg.norm(q)
    if qn == 0.0:
        scores = np.zeros(len(ids))
    else:
        m = matrix.astype(np.float64)
        norms = np.linalg.norm(m, axis=1)
        dots = m @ q
        scores = np.divide(
            dots, norms * qn, out=np.zeros_like(dots), where=norms != 0.0
        )
    order = sorted(
        range(len(ids)), key=lambda i: (-scores[i], property_id_key(ids[i]))
    )
    return [(ids[i], float(scores[i])) for i in order]


def search(
    index: PropertyIndex,
    model: EmbeddingModel,
    query: str,
    scope: Optional[frozenset[str]] = None,
    limit: int = 10,
    stopwords: frozenset[str] = frozenset(),
) -> list[RankedMatch]:
    """Three-tier search, deduplicated by property id, truncated to limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    _check_scope(index, scope)
    needle = query.strip().lower()

    def in_scope(e) -> bool:
        return scope is None or e.property_id in scope

    candidates = [e for e in index.entries if in_scope(e)]
    results: list[RankedMatch] = []
    taken: set[str] = set()

    if needle:
        for e in candidates:
            if e.label.strip().lower() == needle:
                results.append(
                    RankedMatch(e.property_id, e.label, TIER_LABEL_EXACT, 1.0, 0)
                )
                taken.add(e.property_id)
        for e in candidates:
            if e.property_id in taken:
                continue
            if any(a.strip().lower() == needle for a in e.aliases):
                results.append(
                    RankedMatch(e.property_id, e.label, TIER_ALIAS_EXACT, 1.0, 0)
                )
                taken.add(e.property_id)

    for pid, score in rank_semantic(index, model, query, scope, stopwords):
        if pid in taken:
            continue
        entry = index.entry(pid)
        results.append(RankedMatch(pid, entry.label, TIER_SEMANTIC, score, 0))
        taken.add(pid)

    results = results[:limit]
    return [
        RankedMatch(m.property_id, m.label, m.tier, m.score, i + 1)
        for i, m in enumerate(results)
    ]
