"""Hybrid fusion: collaborative-filtering neighbor ids become index terms.

Each document gains a synthetic "cf" field holding its neighbor ids (tf 1
each); queries gain the same ids, weighted by similarity for the tfidf
family or unweighted for bm25c. One retrieval pass then blends textual and
behavioral evidence.
"""

from dataclasses import dataclass, field as dataclass_field

from . import contentrec
from .cf import NeighborMap
from .contentrec import ContentConfig
from .index import FieldedIndex, FieldedQuery, FieldIndex, RankedList
from .textproc import CF_FIELD, analyze, field_spec

WEIGHTINGS = ("similarity", "unweighted")

_CF_SPEC = field_spec(CF_FIELD)


@dataclass
class HybridConfig:
    base: ContentConfig = dataclass_field(default_factory=ContentConfig)
    neighbor_weighting: str = "similarity"
    include_self_id: bool = True

    def __post_init__(self):
        if self.neighbor_weighting not in WEIGHTINGS:
            raise ValueError(f"unknown neighbor weighting {self.neighbor_weighting!r}")
        if self.base.variant == "bm25c" and self.neighbor_weighting != "unweighted":
            raise ValueError("bm25c requires unweighted cf terms")


def _as_term(article_id: str) -> str:
    terms = analyze(_CF_SPEC, [article_id])
    return terms[0] if terms else ""


def _has_edges(neighbors: NeighborMap) -> bool:
    return any(neighbors.values())


def augment_index(index: FieldedIndex, neighbors: NeighborMap) -> FieldedIndex:
    """New index with a cf field mapping each doc to its neighbor-id terms."""
    if CF_FIELD in index.fields:
        raise ValueError("index already carries a cf field")
    cf = FieldIndex()
    for doc_id in index.doc_ids:
        terms = [_as_term(neighbor) for neighbor, _score in neighbors.get(doc_id, [])]
        terms = [t for t in terms if t]
        if terms:
            cf.add_document(doc_id, terms)
    cf.finalize()
    fields = dict(index.fields)
    fields[CF_FIELD] = cf
    return FieldedIndex(fields=fields, doc_ids=list(index.doc_ids))


def build_hybrid_query(article, neighbors: NeighborMap, config: HybridConfig) -> FieldedQuery:
    query = contentrec.build_query(article, config.base.fields_used)
    if not _has_edges(neighbors):
        # nothing anywhere to match against; keep the pure content query
        return query
    weighted = config.neighbor_weighting == "similarity"
    cf_terms: dict[str, float] = {}
    if config.include_self_id:
        self_term = _as_term(article.id)
        if self_term:
            cf_terms[self_term] = 1.0
    for neighbor, score in neighbors.get(article.id, []):
        term = _as_term(neighbor)
        if term and term not in cf_terms:
            cf_terms[term] = score if weighted else 1.0
    if cf_terms:
        query.fields[CF_FIELD] = list(cf_terms.items())
    return query


def recommend_hybrid(
    aug_index: FieldedIndex,
    article,
    neighbors: NeighborMap,
    config: HybridConfig,
    k: int,
) -> RankedList:
    """Run the base content variant over the augmented index and query.

    The nq discount counts the cf field like any other populated query
    field; prf never expands the cf field (ids are not natural language).
    """
    if CF_FIELD not in aug_index.fields:
        raise ValueError("index was not augmented with a cf field")
    query = build_hybrid_query(article, neighbors, config)
    return contentrec.rank_variant(
        aug_index, query, config.base, k, skip_expand_fields=frozenset({CF_FIELD})
    )
