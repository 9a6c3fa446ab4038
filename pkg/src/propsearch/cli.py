"""Command-line entry points: build-index, query, eval, audit, inspect, serve."""
from __future__ import annotations

import json
import sys
import time
from pathlib import Path
from typing import Optional

import click

from . import evaluation as ev
from . import index as ix
from .embeddings import load_model
from .errors import PropSearchError
from .ingest import (
    IngestReport,
    load_stopwords,
    parse_entity_map,
    parse_properties,
)
from .ranker import search


def _fail(exc: Exception) -> None:
    click.echo(f"ERROR {type(exc).__name__}: {exc}", err=True)
    sys.exit(2)


def _load_stopwords(path: Optional[str]) -> frozenset[str]:
    if path is None:
        return load_stopwords()
    with open(path, encoding="utf-8") as fh:
        return load_stopwords(fh)


def _read_model(path: str, max_words: Optional[int]):
    with open(path, encoding="utf-8") as fh:
        return load_model(fh, max_words=max_words, model_id=Path(path).name)


def _read_properties(path: str):
    fmt = "tsv" if path.endswith(".tsv") else "property-json"
    report = IngestReport()
    with open(path, encoding="utf-8") as fh:
        return parse_properties(fh, format=fmt, report=report), report


def _read_index(path: str):
    with open(path, "rb") as fh:
        return ix.load_index(fh)


@click.group()
def main():
    """Semantic search over Linked Data property metadata."""


@main.command("build-index")
@click.argument("model_path", type=click.Path(exists=True))
@click.argument("properties_path", type=click.Path(exists=True))
@click.argument("output_path", type=click.Path())
@click.option("--max-words", type=int, default=None, help="Keep only the N most frequent words.")
@click.option("--dims-check", type=int, default=None, help="Fail unless the model has this dimensionality.")
@click.option("--use-description/--no-use-description", default=False)
@click.option("--stopwords", "stopwords_path", type=click.Path(exists=True), default=None)
def build_index_cmd(model_path, properties_path, output_path, max_words, dims_check, use_description, stopwords_path):
    """Vectorize a property snapshot against a word-vector model."""
    try:
        stop = _load_stopwords(stopwords_path)
        model = _read_model(model_path, max_words)
        if dims_check is not None and model.dim != dims_check:
            raise PropSearchError(
                f"model dimensionality {model.dim} != expected {dims_check}"
            )
        properties, report = _read_properties(properties_path)
        idx = ix.build_index(
            model, properties, use_description, stop, built_at=time.time()
        )
        with open(output_path, "wb") as fh:
            nbytes = ix.save_index(idx, fh)
    except (PropSearchError, OSError) as exc:
        _fail(exc)
    click.echo(
        f"indexed {len(idx.entries)} properties ({idx.oov_count} without vector, "
        f"{report.skipped_no_label} skipped for missing label), {nbytes} bytes"
    )


@main.command("query")
@click.argument("index_path", type=click.Path(exists=True))
@click.argument("model_path", type=click.Path(exists=True))
@click.argument("query_text")
@click.option("--limit", type=int, default=10)
@click.option("--max-words", type=int, default=None)
@click.option("--entity-scope", "scope_path", type=click.Path(exists=True), default=None,
              help="File with one property id per line restricting candidates.")
@click.option("--stopwords", "stopwords_path", type=click.Path(exists=True), default=None)
def query_cmd(index_path, model_path, query_text, limit, max_words, scope_path, stopwords_path):
    """Rank properties for a natural-language query."""
    try:
        stop = _load_stopwords(stopwords_path)
        idx = _read_index(index_path)
        model = _read_model(model_path, max_words)
        scope = None
        if scope_path is not None:
            with open(scope_path, encoding="utf-8") as fh:
                scope = frozenset(line.strip() for line in fh if line.strip())
        matches = search(idx, model, query_text, scope=scope, limit=limit, stopwords=stop)
    except (PropSearchError, OSError) as exc:
        _fail(exc)
    for m in matches:
        click.echo(f"{m.rank}\t{m.property_id}\t{m.tier}\t{m.score:.4f}\t{m.label}")


@main.command("eval")
@click.argument("index_path", type=click.Path(exists=True))
@click.argument("model_path", type=click.Path(exists=True))
@click.argument("properties_path", type=click.Path(exists=True))
@click.option("--scope", "scope_mode", type=click.Choice(["full", "per-entity"]), default="full")
@click.option("--entity-map", "entity_map_path", type=click.Path(exists=True), default=None)
@click.option("--sample", type=int, default=None, help="Entity sample size for per-entity scope.")
@click.option("--seed", type=int, default=0)
@click.option("--max-words", type=int, default=None)
@click.option("--exclude-label-identical", is_flag=True, default=False)
@click.option("--stopwords", "stopwords_path", type=click.Path(exists=True), default=None)
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Also write the machine-readable JSONL row here.")
def eval_cmd(index_path, model_path, properties_path, scope_mode, entity_map_path,
             sample, seed, max_words, exclude_label_identical, stopwords_path, report_path):
    """Score the alias gold standard against the index."""
    try:
        stop = _load_stopwords(stopwords_path)
        idx = _read_index(index_path)
        model = _read_model(model_path, max_words)
        properties, _ = _read_properties(properties_path)
        if scope_mode == "per-entity":
            if entity_map_path is None:
                raise PropSearchError("per-entity scope requires --entity-map")
            with open(entity_map_path, encoding="utf-8") as fh:
                emap = parse_entity_map(fh, properties)
            report = ev.entity_simulation(
                idx, model, emap, properties,
                sample_size=sample if sample is not None else len(emap),
                seed=seed, stopwords=stop,
            )
        else:
            gold = ev.build_gold(properties, exclude_label_identical)
            config = ev.EvalConfig(
                model_id=model.model_id, vocab_cap=max_words, dim=model.dim,
                use_description=idx.use_description, scope_mode="full",
            )
            report = ev.evaluate(idx, model, gold, "full", stopwords=stop, config=config)
    except (PropSearchError, OSError, ValueError) as exc:
        _fail(exc)
    click.echo(ev.format_report(report), nl=False)
    if report_path is not None:
        with open(report_path, "w", encoding="utf-8") as fh:
            ev.write_report_jsonl([report], fh)


@main.command("audit")
@click.argument("index_path", type=click.Path(exists=True))
@click.argument("model_path", type=click.Path(exists=True))
@click.argument("properties_path", type=click.Path(exists=True))
@click.option("--threshold", type=float, default=ev.DEFAULT_AUDIT_THRESHOLD)
@click.option("--max-words", type=int, default=None)
@click.option("--stopwords", "stopwords_path", type=click.Path(exists=True), default=None)
def audit_cmd(index_path, model_path, properties_path, threshold, max_words, stopwords_path):
    """Report aliases that duplicate labels or score low similarity."""
    try:
        stop = _load_stopwords(stopwords_path)
        idx = _read_index(index_path)
        model = _read_model(model_path, max_words)
        properties, _ = _read_properties(properties_path)
        rows = ev.audit_aliases(idx, model, properties, stop, threshold)
    except (PropSearchError, OSError) as exc:
        _fail(exc)
    for row in rows:
        click.echo(f"{row.property_id}\t{row.flag}\t{row.similarity:.4f}\t{row.alias}")


@main.command("inspect")
@click.argument("index_path", type=click.Path(exists=True))
def inspect_cmd(index_path):
    """Dump the index in the line-based debug form."""
    try:
        idx = _read_index(index_path)
    except (PropSearchError, OSError) as exc:
        _fail(exc)
    ix.debug_export(idx, sys.stdout)


@main.command("serve")
@click.argument("index_path", type=click.Path(exists=True))
@click.argument("model_path", type=click.Path(exists=True))
@click.option("--port", type=int, default=8340, envvar="PROPSEARCH_PORT")
@click.option("--host", default="127.0.0.1")
@click.option("--max-words", type=int, default=None)
@click.option("--properties", "properties_path", type=click.Path(exists=True), default=None,
              help="Optional snapshot supplying descriptions for /v1/properties.")
@click.option("--stopwords", "stopwords_path", type=click.Path(exists=True),
              default=None, envvar="PROPSEARCH_STOPWORDS")
@click.option("--allow-origin", default="*", envvar="PROPSEARCH_ALLOW_ORIGIN")
def serve_cmd(index_path, model_path, port, host, max_words, properties_path,
              stopwords_path, allow_origin):
    """Start the JSON ranking webservice."""
    import uvicorn

    from .service import create_app

    try:
        stop = _load_stopwords(stopwords_path)
        idx = _read_index(index_path)
        model = _read_model(model_path, max_words)
        properties = None
        if properties_path is not None:
            properties, _ = _read_properties(properties_path)
        app = create_app(idx, model, stop, allow_origin, properties)
    except (PropSearchError, OSError) as exc:
        _fail(exc)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
