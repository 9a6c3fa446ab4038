"""Building and persisting the per-property vector index.

The on-disk format is a small binary container: magic "PVIX", a version
byte, a header, length-prefixed per-entry records with little-endian
float32 vectors, and a trailing CRC32 so corruption is detected rather
than silently decoded.
"""
from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Sequence

import numpy as np

from .embeddings import EmbeddingModel, phrase_vector
from .errors import BuildError, IndexCorruptionError, IndexFormatError
from .ingest import PropertyRecord, property_id_key, tokenize

MAGIC = b"PVIX"
VERSION = 1


@dataclass(frozen=True)
class IndexEntry:
    property_id: str
    label: str
    aliases: tuple[str, ...]
    vector: Optional[np.ndarray]  # float32 length dim, or None when all-OOV

    def __eq__(self, other):
        if not isinstance(other, IndexEntry):
            return NotImplemented
        if (self.property_id, self.label, self.aliases) != (
            other.property_id,
            other.label,
            other.aliases,
        ):
            return False
        if self.vector is None or other.vector is None:
            return self.vector is None and other.vector is None
        return self.vector.tobytes() == other.vector.tobytes()


@dataclass
class PropertyIndex:
    """Immutable-by-convention property vector table, sorted by id."""

    model_id: str
    dim: int
    use_description: bool
    entries: tuple[IndexEntry, ...]
    built_at: float = 0.0  # unix seconds; 0.0 means unset

    def __post_init__(self):
        self._matrix_cache = None

    @property
    def ids(self) -> list[str]:
        return [e.property_id for e in self.entries]

    @property
    def oov_count(self) -> int:
        return sum(1 for e in self.entries if e.vector is None)

    def entry(self, property_id: str) -> Optional[IndexEntry]:
        i = self._positions().get(property_id)
        return None if i is None else self.entries[i]

    def _positions(self) -> dict[str, int]:
        if not hasattr(self, "_pos_cache") or self._pos_cache is None:
            self._pos_cache = {e.property_id: i for i, e in enumerate(self.entries)}
        return self._pos_cache

    def vector_matrix(self) -> tuple[list[str], np.ndarray]:
        """(ids, matrix) over entries that have a vector; cached."""
        if self._matrix_cache is None:
            present = [e for e in self.entries if e.vector is not None]
            ids = [e.property_id for e in present]
            if present:
                matrix = np.vstack([e.vector for e in present])
            else:
                matrix = np.zeros((0, self.dim), dtype=np.float32)
            self._matrix_cache = (ids, matrix)
        return self._matrix_cache

    def __eq__(self, other):
        if not isinstance(other, PropertyIndex):
            return NotImplemented
        return (
            self.model_id == other.model_id
            and self.dim == other.dim
            and self.use_description == other.use_description
            and self.built_at == other.built_at
            and self.entries == other.entries
        )


def build_index(
    model: EmbeddingModel,
    properties: Sequence[PropertyRecord],
    use_description: bool,
    stopwords: frozenset[str],
    built_at: float = 0.0,
) -> PropertyIndex:
    """Vectorize every property as the sum of its label (and optionally
    description) word vectors.

    All-OOV properties keep an entry with an absent vector so exact
    label/alias matching still reaches them.  Output is sorted by property
    id and independent of input ordering.
    """
    if model.dim <= 0:
        raise BuildError("model has zero dimensionality")
    if not properties:
        raise BuildError("empty property list")
    entries = []
    for rec in sorted(properties, key=lambda r: property_id_key(r.id)):
        tokens = tokenize(rec.label, stopwords)
        if use_description and rec.description:
            tokens += tokenize(rec.description, stopwords)
        vec = phrase_vector(model, tokens)
        if vec is not None:
            vec = np.ascontiguousarray(vec, dtype=np.float32)
        entries.append(
            IndexEntry(
                property_id=rec.id,
                label=rec.label,
                aliases=rec.aliases,
                vector=vec,
            )
        )
    return PropertyIndex(
        model_id=model.model_id,
        dim=model.dim,
        use_description=use_description,
        entries=tuple(entries),
        built_at=built_at,
    )


def _pack_str(s: str) -> bytes:
    raw = s.encode("utf-8")
    return struct.pack("<I", len(raw)) + raw


def save_index(index: PropertyIndex, sink: IO[bytes]) -> int:
    """Serialize the index; returns the number of bytes written."""
    parts = [MAGIC, struct.pack("<B", VERSION)]
    parts.append(_pack_str(index.model_id))
    parts.append(
        struct.pack(
            "<IBdI",
            index.dim,
            1 if index.use_description else 0,
            index.built_at,
            len(index.entries),
        )
    )
    for e in index.entries:
        parts.append(_pack_str(e.property_id))
        parts.append(_pack_str(e.label))
        parts.append(struct.pack("<I", len(e.aliases)))
        for alias in e.aliases:
            parts.append(_pack_str(alias))
        if e.vector is None:
            parts.append(b"\x00")
        else:
            parts.append(b"\x01")
            parts.append(e.vector.astype("<f4", copy=False).tobytes())
    blob = b"".join(parts)
    blob += struct.pack("<I", zlib.crc32(blob))
    sink.write(blob)
    return len(blob)


class _Reader:
    def __init__(self, source: IO[bytes]):
        self.data = source.read()
        self.offset = 0

    def take(self, n: int) -> bytes:
        if self.offset + n > len(self.data):
            raise IndexCorruptionError(
                f"truncated stream: wanted {n} bytes", offset=self.offset
            )
        chunk = self.data[self.offset : self.offset + n]
        self.offset += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def take_str(self) -> str:
        (n,) = self.unpack("<I")
        start = self.offset
        try:
            return self.take(n).decode("utf-8")
        except UnicodeDecodeError:
            raise IndexCorruptionError("undecodable string field", offset=start) from None


def load_index(source: IO[bytes]) -> PropertyIndex:
    """Inverse of save_index; bit-exact round trip."""
    r = _Reader(source)
    if r.take(4) != MAGIC:
        raise IndexFormatError("bad magic bytes (not a property index)")
    (version,) = r.unpack("<B")
    if version != VERSION:
        raise IndexFormatError(f"unsupported index version {version}")
    model_id = r.take_str()
    dim, use_desc, built_at, count = r.unpack("<IBdI")
    entries = []
    for _ in range(count):
        pid = r.take_str()
        label = r.take_str()
        (n_alias,) = r.unpack("<I")
        aliases = tuple(r.take_str() for _ in range(n_alias))
        (present,) = r.unpack("<B")
        vector = None
        if present:
            vector = np.frombuffer(r.take(4 * dim), dtype="<f4").copy()
        entries.append(IndexEntry(pid, label, aliases, vector))
    body_end = r.offset
    (stored_crc,) = r.unpack("<I")
    if r.offset != len(r.data):
        raise IndexCorruptionError("trailing bytes after checksum", offset=r.offset)
    if zlib.crc32(r.data[:body_end]) != stored_crc:
        raise IndexCorruptionError("checksum mismatch", offset=body_end)
    return PropertyIndex(
        model_id=model_id,
        dim=dim,
        use_description=bool(use_desc),
        entries=tuple(entries),
        built_at=built_at,
    )


def debug_export(index: PropertyIndex, sink) -> None:
    """Human-readable dump: id, label, first 4 vector components per line."""
    for e in index.entries:
        if e.vector is None:
            head = "-"
        else:
            head = " ".join(f"{c:.6g}" for c in e.vector[:4])
        sink.write(f"{e.property_id}\t{e.label}\t{head}\n")
