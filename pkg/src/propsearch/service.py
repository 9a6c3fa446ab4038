"""JSON-over-HTTP ranking service.

Routes (all under /v1): GET /health, POST /rank, GET /properties/{id}.
The index and model are loaded once at startup and shared immutably
across requests; one JSON log line is emitted per /rank call.
"""
from __future__ import annotations

import json
import logging
import time
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .embeddings import EmbeddingModel
from .index import PropertyIndex
from .ingest import PropertyRecord
from .ranker import search

logger = logging.getLogger("propsearch.service")


class RankRequest(BaseModel):
    query: str
    limit: int = Field(default=10, ge=1)
    entity_properties: Optional[list[str]] = Field(default=None, min_length=1)


class RankResult(BaseModel):
    property_id: str
    label: str
    tier: str
    score: float
    rank: int


class RankResponse(BaseModel):
    results: list[RankResult]
    query_tokens: list[str]
    elapsed_micros: int
    reason: Optional[str] = None


def create_app(
    index: PropertyIndex,
    model: EmbeddingModel,
    stopwords: frozenset[str],
    allow_origin: str = "*",
    properties: Optional[list[PropertyRecord]] = None,
) -> FastAPI:
    from .ingest import tokenize

    app = FastAPI(title="propsearch", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[allow_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    records = {rec.id: rec for rec in properties} if properties else {}

    @app.get("/v1/health")
    def health():
        return {
            "status": "ok",
            "properties": len(index.entries),
            "dim": index.dim,
        }

    @app.post("/v1/rank", response_model=RankResponse, response_model_exclude_none=True)
    def rank(request: RankRequest) -> RankResponse:
        started = time.perf_counter()
        scope = None
        if request.entity_properties is not None:
            unknown = sorted(
                p for p in request.entity_properties if index.entry(p) is None
            )
            if unknown:
                raise HTTPException(
                    status_code=400,
                    detail={"error": "unknown_property_ids", "unknown": unknown},
                )
            scope = frozenset(request.entity_properties)
        tokens = tokenize(request.query, stopwords)
        reason = None
        if not tokens and not request.query.strip():
            matches = []
            reason = "empty_query"
        else:
            matches = search(
                index,
                model,
                request.query,
                scope=scope,
                limit=request.limit,
                stopwords=stopwords,
            )
            if not matches:
                reason = "no_results" if tokens else "empty_query"
        elapsed = int((time.perf_counter() - started) * 1e6)
        logger.info(
            json.dumps(
                {
                    "query_length": len(request.query),
                    "scope_size": len(scope) if scope is not None else None,
                    "latency_micros": elapsed,
                    "result_count": len(matches),
                }
            )
        )
        return RankResponse(
            results=[
                RankResult(
                    property_id=m.property_id,
                    label=m.label,
                    tier=m.tier,
                    score=m.score,
                    rank=m.rank,
                )
                for m in matches
            ],
            query_tokens=tokens,
            elapsed_micros=elapsed,
            reason=reason,
        )

    @app.get("/v1/properties/{property_id}")
    def property_detail(property_id: str):
        entry = index.entry(property_id)
        if entry is None:
            raise HTTPException(status_code=404, detail="unknown property id")
        rec = records.get(property_id)
        return {
            "id": entry.property_id,
            "label": entry.label,
            "aliases": list(entry.aliases),
            "description": rec.description if rec else None,
            "has_vector": entry.vector is not None,
        }

    return app
