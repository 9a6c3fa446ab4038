"""Semantic search over Linked Data property metadata.

Embeds property labels/descriptions and user queries into a shared
word-vector space and ranks properties by cosine similarity behind
exact label/alias match tiers.
"""

from .embeddings import EmbeddingModel, cosine, load_model, lookup, phrase_vector, save_model
from .errors import (
    BuildError,
    DimensionMismatchError,
    FormatError,
    IndexCorruptionError,
    IndexFormatError,
    ParseError,
    PropSearchError,
    ScopeError,
    ValidationError,
)
from .evaluation import (
    AliasAuditRow,
    EvalConfig,
    EvalReport,
    GoldInstance,
    audit_aliases,
    build_gold,
    entity_simulation,
    evaluate,
    rank_of_target,
)
from .index import IndexEntry, PropertyIndex, build_index, debug_export, load_index, save_index
from .ingest import (
    IngestReport,
    PropertyRecord,
    load_stopwords,
    parse_entity_map,
    parse_properties,
    serialize_properties,
    tokenize,
)
from .ranker import (
    TIER_ALIAS_EXACT,
    TIER_LABEL_EXACT,
    TIER_SEMANTIC,
    RankedMatch,
    rank_semantic,
    search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
