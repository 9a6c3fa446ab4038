"""Alias-based retrieval evaluation: gold standard construction, Top-N and
mean reciprocal rank metrics, entity-restricted simulation, and the alias
quality audit.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import IO, Optional, Sequence

from .embeddings import EmbeddingModel, cosine, phrase_vector
from .errors import ScopeError
from .index import PropertyIndex
from .ingest import (
    PropertyRecord,
    entity_id_key,
    property_id_key,
    tokenize,
)
from .ranker import rank_semantic

FLAG_DUPLICATE = "duplicate_of_label"
FLAG_LOW_SIMILARITY = "low_similarity"
FLAG_OK = "ok"

DEFAULT_AUDIT_THRESHOLD = 0.2


@dataclass(frozen=True)
class GoldInstance:
    """One (alias query, owning property) evaluation pair."""

    alias: str
    target_property: str
    entity_scope: Optional[str] = None


@dataclass(frozen=True)
class EvalConfig:
    model_id: str = ""
    vocab_cap: Optional[int] = None
    dim: int = 0
    use_description: bool = False
    scope_mode: str = "full"
    seed: Optional[int] = None


@dataclass
class EvalReport:
    instance_count: int
    top1: float
    top3: float
    top10: float
    mrr: float
    unresolvable_count: int
    config: EvalConfig
    sampled_entities: Optional[list[str]] = None


@dataclass(frozen=True)
class AliasAuditRow:
    property_id: str
    alias: str
    similarity: float
    flag: str


def build_gold(
    properties: Sequence[PropertyRecord],
    exclude_label_identical: bool = False,
) -> list[GoldInstance]:
    """One instance per (alias, owning property) pair, in deterministic
    (property id, alias file order) order.

    Aliases textually identical to the label stay in by default; the flag
    drops them for sensitivity analysis.
    """
    gold = []
    for rec in sorted(properties, key=lambda r: property_id_key(r.id)):
        for alias in rec.aliases:
            if exclude_label_identical and alias.lower() == rec.label.lower():
                continue
            gold.append(GoldInstance(alias=alias, target_property=rec.id))
    return gold


def rank_of_target(
    index: PropertyIndex,
    model: EmbeddingModel,
    instance: GoldInstance,
    scope: Optional[frozenset[str]] = None,
    stopwords: frozenset[str] = frozenset(),
) -> Optional[int]:
    """1-based rank of the target in the semantic ranking for the alias,
    or None when unresolved (all-OOV query or vectorless target).
    """
    ranking = rank_semantic(index, model, instance.alias, scope, stopwords)
    for pos, (pid, _score) in enumerate(ranking, start=1):
        if pid == instance.target_property:
            return pos
    return None


def _metrics(ranks: Sequence[Optional[int]]) -> tuple[float, float, float, float, int]:
    n = len(ranks)
    resolved = [r for r in ranks if r is not None]
    top1 = sum(1 for r in resolved if r <= 1) / n
    top3 = sum(1 for r in resolved if r <= 3) / n
    top10 = sum(1 for r in resolved if r <= 10) / n
    # unresolved instances contribute 0 but stay in the denominator
    mrr = sum(1.0 / r for r in resolved) / n
    return top1, top3, top10, mrr, n - len(resolved)


def evaluate(
    index: PropertyIndex,
    model: EmbeddingModel,
    gold: Sequence[GoldInstance],
    scope_mode: str = "full",
    entity_map: Optional[dict[str, frozenset[str]]] = None,
    stopwords: frozenset[str] = frozenset(),
    config: Optional[EvalConfig] = None,
) -> EvalReport:
    """Score a gold standard run.

    ``scope_mode`` "full" ranks every instance against the whole index;
    "per_entity" restricts each instance to its entity's property set
    (requires instances with an entity_scope and an entity map).
    """
    if not gold:
        raise ValueError("empty gold standard")
    if scope_mode not in ("full", "per_entity"):
        raise ValueError(f"unknown scope mode {scope_mode!r}")
    ranks: list[Optional[int]] = []
    for inst in gold:
        scope = None
        if scope_mode == "per_entity":
            if inst.entity_scope is None or entity_map is None:
                raise ScopeError(
                    "per_entity evaluation needs entity-scoped gold and an entity map"
                )
            scope = entity_map[inst.entity_scope]
        ranks.append(rank_of_target(index, model, inst, scope, stopwords))
    top1, top3, top10, mrr, unresolved = _metrics(ranks)
    if config is None:
        config = EvalConfig(
            model_id=model.model_id,
            dim=model.dim,
            use_description=index.use_description,
            scope_mode=scope_mode,
        )
    return EvalReport(
        instance_count=len(gold),
        top1=top1,
        top3=top3,
        top10=top10,
        mrr=mrr,
        unresolvable_count=unresolved,
        config=config,
    )


def entity_simulation(
    index: PropertyIndex,
    model: EmbeddingModel,
    entity_map: dict[str, frozenset[str]],
    properties: Sequence[PropertyRecord],
    sample_size: int,
    seed: int,
    stopwords: frozenset[str] = frozenset(),
) -> EvalReport:
    """Entity-restricted evaluation over a seeded random entity sample.

    Sampling is uniform without replacement using Python's Mersenne
    Twister (random.Random(seed)) over the entity ids in ascending
    numeric order, so a report is a pure function of (inputs, seed).
    The sampled ids are recorded in the report.
    """
    if not entity_map:
        raise ValueError("empty entity map")
    if sample_size > len(entity_map):
        raise ValueError("sample_size exceeds entity map size")
    ordered = sorted(entity_map, key=entity_id_key)
    sampled = random.Random(seed).sample(ordered, sample_size)
    by_id = {rec.id: rec for rec in properties}
    gold: list[GoldInstance] = []
    for qid in sampled:
        for pid in sorted(entity_map[qid], key=property_id_key):
            rec = by_id.get(pid)
            if rec is None:
                continue
            for alias in rec.aliases:
                gold.append(GoldInstance(alias, pid, entity_scope=qid))
    if not gold:
        raise ValueError("sampled entities contribute no (alias, property) pairs")
    config = EvalConfig(
        model_id=model.model_id,
        dim=model.dim,
        use_description=index.use_description,
        scope_mode="per_entity",
        seed=seed,
    )
    report = evaluate(
        index,
        model,
        gold,
        scope_mode="per_entity",
        entity_map=entity_map,
        stopwords=stopwords,
        config=config,
    )
    report.sampled_entities = sampled
    return report


def audit_aliases(
    index: PropertyIndex,
    model: EmbeddingModel,
    properties: Sequence[PropertyRecord],
    stopwords: frozenset[str] = frozenset(),
    threshold: float = DEFAULT_AUDIT_THRESHOLD,
) -> list[AliasAuditRow]:
    """Flag aliases that duplicate their label or sit far from the
    property vector in embedding space.  Advisory output only.
    """
    rows = []
    for rec in sorted(properties, key=lambda r: property_id_key(r.id)):
        entry = index.entry(rec.id)
        for alias in rec.aliases:
            avec = phrase_vector(model, tokenize(alias, stopwords))
            if avec is None or entry is None or entry.vector is None:
                sim = 0.0
            else:
                sim = cosine(avec, entry.vector)
            if alias.lower() == rec.label.lower():
                flag = FLAG_DUPLICATE
            elif sim < threshold:
                flag = FLAG_LOW_SIMILARITY
            else:
                flag = FLAG_OK
            rows.append(AliasAuditRow(rec.id, alias, sim, flag))
    return rows


def format_report(report: EvalReport) -> str:
    """Key/value text form of a report."""
    lines = [
        f"instances: {report.instance_count}",
        f"top1: {report.top1:.4f}",
        f"top3: {report.top3:.4f}",
        f"top10: {report.top10:.4f}",
        f"mrr: {report.mrr:.4f}",
        f"unresolvable: {report.unresolvable_count}",
        f"model: {report.config.model_id}",
        f"vocab_cap: {report.config.vocab_cap if report.config.vocab_cap is not None else '-'}",
        f"dim: {report.config.dim}",
        f"use_description: {str(report.config.use_description).lower()}",
        f"scope_mode: {report.config.scope_mode}",
        f"seed: {report.config.seed if report.config.seed is not None else '-'}",
    ]
    if report.sampled_entities is not None:
        lines.append("sampled_entities: " + ",".join(report.sampled_entities))
    return "\n".join(lines) + "\n"


def report_row(report: EvalReport) -> dict:
    """Machine-readable row mirroring the model/settings/metrics columns."""
    return {
        "model": report.config.model_id,
        "vocab_cap": report.config.vocab_cap,
        "dim": report.config.dim,
        "use_description": report.config.use_description,
        "top1": report.top1,
        "top3": report.top3,
        "top10": report.top10,
        "mrr": report.mrr,
    }


def write_report_jsonl(reports: Sequence[EvalReport], sink: IO[str]) -> None:
    for rep in reports:
        sink.write(json.dumps(report_row(rep), sort_keys=True) + "\n")
