"""Parsing of property metadata snapshots, entity->property maps, and text.

All core code consumes local snapshot files only; nothing here talks to a
live endpoint.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Iterable, Optional

from .errors import ParseError, ValidationError

_PROPERTY_ID_RE = re.compile(r"^P[0-9]+$")
_ENTITY_ID_RE = re.compile(r"^Q[0-9]+$")


@dataclass(frozen=True)
class PropertyRecord:
    """One Wikidata property: id, English label, description, aliases."""

    id: str
    label: str
    description: Optional[str] = None
    aliases: tuple[str, ...] = ()


@dataclass
class IngestReport:
    """Counts accumulated while parsing a property snapshot."""

    record_count: int = 0
    skipped_no_label: int = 0


def property_id_key(pid: str) -> int:
    """Numeric sort key for property ids ("P9" < "P10" < "P582")."""
    return int(pid[1:])


def entity_id_key(qid: str) -> int:
    return int(qid[1:])


def load_stopwords(source: Optional[IO[str]] = None) -> frozenset[str]:
    """Read a stopword file (one word per line, "#" comments).

    Without an argument, returns the packaged default English list.
    """
    if source is None:
        text = (
            resources.files("propsearch.data")
            .joinpath("stopwords_en.txt")
            .read_text(encoding="utf-8")
        )
        lines = text.splitlines()
    else:
        lines = [line.rstrip("\n") for line in source]
    words = set()
    for line in lines:
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


def tokenize(text: str, stopwords: frozenset[str]) -> list[str]:
    """Lowercase, split on whitespace, strip surrounding punctuation.

    Internal hyphens and apostrophes survive; empty pieces and stopwords
    are dropped.
    """
    tokens = []
    for piece in text.lower().split():
        start, end = 0, len(piece)
        while start < end and not piece[start].isalnum():
            start += 1
        while end > start and not piece[end - 1].isalnum():
            end -= 1
        token = piece[start:end]
        if token and token not in stopwords:
            tokens.append(token)
    return tokens


def _make_record(raw: dict, where: int) -> Optional[PropertyRecord]:
    pid = raw.get("id")
    if not isinstance(pid, str) or not _PROPERTY_ID_RE.match(pid):
        raise ParseError(f"bad property id {pid!r}", record=where)
    label = raw.get("label")
    if label is None or (isinstance(label, str) and not label.strip()):
        return None
    if not isinstance(label, str):
        raise ParseError(f"bad label for {pid}", record=where)
    aliases = raw.get("aliases") or []
    if not isinstance(aliases, list) or any(
        not isinstance(a, str) or not a for a in aliases
    ):
        raise ParseError(f"bad alias list for {pid}", record=where)
    description = raw.get("description")
    if description is not None and not isinstance(description, str):
        raise ParseError(f"bad description for {pid}", record=where)
    return PropertyRecord(
        id=pid, label=label, description=description or None, aliases=tuple(aliases)
    )


def parse_properties(
    source: IO[str],
    format: str = "property-json",
    report: Optional[IngestReport] = None,
) -> list[PropertyRecord]:
    """Parse a property snapshot.

    property-json: one JSON object per line with id/label/description/aliases.
    tsv: id<TAB>label<TAB>description<TAB>alias1|alias2|...

    Records without an English label are skipped and counted in ``report``.
    Duplicate property ids are an error.
    """
    if format not in ("property-json", "tsv"):
        raise ValueError(f"unknown format {format!r}")
    records: list[PropertyRecord] = []
    seen: set[str] = set()
    if report is None:
        report = IngestReport()
    for n, line in enumerate(source, start=1):
        if not line.strip():
            continue
        if format == "property-json":
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}", record=n) from None
            if not isinstance(raw, dict):
                raise ParseError("expected a JSON object", record=n)
        else:
            cols = line.rstrip("\n").split("\t")
            if len(cols) != 4:
                raise ParseError(f"expected 4 tab-separated fields, got {len(cols)}", record=n)
            raw = {
                "id": cols[0],
                "label": cols[1] or None,
                "description": cols[2] or None,
                "aliases": [a for a in cols[3].split("|") if a],
            }
        rec = _make_record(raw, n)
        if rec is None:
            report.skipped_no_label += 1
            continue
        if rec.id in seen:
            raise ParseError(f"duplicate property id {rec.id}", record=n)
        seen.add(rec.id)
        records.append(rec)
    report.record_count = len(records)
    return records


def serialize_properties(records: Iterable[PropertyRecord], sink: IO[str]) -> None:
    """Write records in the property-json line format."""
    for rec in records:
        sink.write(
            json.dumps(
                {
                    "id": rec.id,
                    "label": rec.label,
                    "description": rec.description,
                    "aliases": list(rec.aliases),
                },
                ensure_ascii=False,
            )
            + "\n"
        )


def parse_entity_map(
    source: IO[str],
    properties: Optional[Iterable[PropertyRecord]] = None,
) -> dict[str, frozenset[str]]:
    """Parse "<Qid>\\t<Pid>,<Pid>,..." lines into an entity->properties map.

    Duplicate entity lines merge by set union.  When ``properties`` is
    given, unknown property ids fail validation.
    """
    mapping: dict[str, set[str]] = {}
    for n, line in enumerate(source, start=1):
        if not line.strip():
            continue
        cols = line.rstrip("\n").split("\t")
        if len(cols) != 2:
            raise ParseError("expected '<Qid>\\t<Pid>,...'", record=n)
        qid, plist = cols
        if not _ENTITY_ID_RE.match(qid):
            raise ParseError(f"bad entity id {qid!r}", record=n)
        pids = [p for p in plist.split(",") if p]
        if not pids:
            raise ParseError(f"no properties for {qid}", record=n)
        for pid in pids:
            if not _PROPERTY_ID_RE.match(pid):
                raise ParseError(f"bad property id {pid!r}", record=n)
        mapping.setdefault(qid, set()).update(pids)
    if properties is not None:
        known = {rec.id for rec in properties}
        offenders = sorted(
            {p for pids in mapping.values() for p in pids if p not in known},
            key=property_id_key,
        )
        if offenders:
            raise ValidationError(
                "entity map references unknown property ids: " + ", ".join(offenders)
            )
    return {q: frozenset(p) for q, p in mapping.items()}
