"""Loading pre-trained word-vector models and basic phrase arithmetic.

Supports the two common plain-text vector formats: word2vec text (header
line "<vocab> <dim>") and headerless GloVe-style files.  Vectors are kept
as float32 to halve memory for large models.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Optional, Sequence

import numpy as np

from .errors import DimensionMismatchError, FormatError


@dataclass
class EmbeddingModel:
    """An immutable word -> dense vector table.

    ``vocab`` preserves file order, which for the usual pre-trained models
    is descending corpus frequency; truncation relies on that.
    """

    model_id: str
    dim: int
    vocab: dict[str, int]
    vectors: np.ndarray  # float32, shape (len(vocab), dim)
    duplicate_count: int = 0

    def __post_init__(self):
        assert self.vectors.shape == (len(self.vocab), self.dim)

    def __contains__(self, token: str) -> bool:
        return token in self.vocab

    def __len__(self) -> int:
        return len(self.vocab)

    @property
    def words(self) -> list[str]:
        return list(self.vocab)


def _is_header(fields: list[str]) -> bool:
    return len(fields) == 2 and all(f.isascii() and f.isdigit() for f in fields)


def load_model(
    source: IO[str],
    max_words: Optional[int] = None,
    model_id: str = "<stream>",
) -> EmbeddingModel:
    """Parse a word2vec-text or GloVe-text stream into an EmbeddingModel.

    The format is auto-detected: a first line of exactly two integer tokens
    is treated as a "<vocab> <dim>" header.  ``max_words`` keeps only the
    first (most frequent) entries.  Later duplicates of a word are skipped
    and counted in ``duplicate_count``.
    """
    if max_words is not None and max_words <= 0:
        raise ValueError("max_words must be positive")

    vocab: dict[str, int] = {}
    rows: list[np.ndarray] = []
    duplicates = 0
    expected_dim: Optional[int] = None

    first = source.readline()
    line_no = 1
    pending: Optional[tuple[str, int]] = None
    if first:
        fields = first.rstrip("\n").split(" ")
        if _is_header(fields):
            expected_dim = int(fields[1])
        else:
            pending = (first, 1)

    def consume(line: str, n: int) -> None:
        nonlocal expected_dim, duplicates
        fields = line.rstrip("\n").split(" ")
        if len(fields) < 2:
            raise FormatError("expected a word and at least one component", line=n)
        word = fields[0]
        if not word:
            raise FormatError("empty word", line=n)
        width = len(fields) - 1
        if expected_dim is None:
            expected_dim = width
        elif width != expected_dim:
            raise FormatError(f"row width {width} != {expected_dim}", line=n)
        if word in vocab:
            duplicates += 1
            return
        try:
            row = np.array(fields[1:], dtype=np.float32)
        except ValueError:
            raise FormatError("non-numeric vector component", line=n) from None
        if not np.all(np.isfinite(row)):
            raise FormatError("non-finite vector component", line=n)
        vocab[word] = len(rows)
        rows.append(row)

    if pending is not None:
        consume(*pending)
    for line in source:
        if max_words is not None and len(rows) >= max_words:
            break
        line_no += 1
        if line.strip() == "":
            continue
        consume(line, line_no)
        if max_words is not None and len(rows) >= max_words:
            break

    if not rows:
        raise FormatError("no word vectors in stream (empty model)")
    matrix = np.vstack(rows)
    return EmbeddingModel(
        model_id=model_id,
        dim=int(matrix.shape[1]),
        vocab=vocab,
        vectors=matrix,
        duplicate_count=duplicates,
    )


def save_model(model: EmbeddingModel, sink: IO[str]) -> None:
    """Write the model in word2vec text format (round-trips with load_model)."""
    sink.write(f"{len(model.vocab)} {model.dim}\n")
    for word, idx in model.vocab.items():
        comps = " ".join(
            np.format_float_positional(c, unique=True, trim="0")
            for c in model.vectors[idx]
        )
        sink.write(f"{word} {comps}\n")


def lookup(model: EmbeddingModel, token: str) -> Optional[np.ndarray]:
    """Return the vector for ``token`` or None.  Case-sensitive, no fallback."""
    idx = model.vocab.get(token)
    if idx is None:
        return None
    return model.vectors[idx]


def phrase_vector(
    model: EmbeddingModel, tokens: Sequence[str]
) -> Optional[np.ndarray]:
    """Componentwise sum of the vectors of in-vocabulary tokens.

    Out-of-vocabulary tokens are skipped; returns None when no token is
    found.  Raw (un-normalized) vectors are summed; normalization happens
    only inside the cosine comparison.
    """
    idxs = [model.vocab[t] for t in tokens if t in model.vocab]
    if not idxs:
        return None
    return model.vectors[idxs].sum(axis=0)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity in float64; zero-norm inputs score 0.0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"vector lengths differ: {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))
