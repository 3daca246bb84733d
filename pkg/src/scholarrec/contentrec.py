"""Content-based recommendation in four configurations.

* tfidf — one query over all configured metadata fields
* nq    — tfidf rescored by (matched fields / query fields) ** alpha,
          discounting candidates that share only a few metadata fields
* prf   — pseudo relevance feedback: expand the query with the strongest
          terms of the top nq-ranked documents, then re-rank (still with
          the nq discount)
* bm25c — same query, bm25 term weighting, no discount and no feedback
"""

import math
from dataclasses import dataclass

from . import index as idx
from .index import DEFAULT_B, DEFAULT_K1, FieldedIndex, FieldedQuery, RankedList
from .textproc import CONTENT_FIELDS, analyze, field_spec, field_values

VARIANTS = ("tfidf", "nq", "prf", "bm25c")


@dataclass
class ContentConfig:
    variant: str = "tfidf"
    fields_used: tuple[str, ...] = CONTENT_FIELDS
    nq_alpha: float = 1.0
    prf_feedback_docs: int = 5
    prf_terms_per_field: int = 10
    prf_term_weight: float = 0.5
    k1: float = DEFAULT_K1
    b: float = DEFAULT_B

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        self.fields_used = tuple(self.fields_used)
        if not self.fields_used:
            raise ValueError("fields_used must not be empty")
        for name in self.fields_used:
            field_spec(name)  # validates the field name
        if self.prf_feedback_docs < 1:
            raise ValueError("prf_feedback_docs must be >= 1")
        if self.prf_terms_per_field < 0:
            raise ValueError("prf_terms_per_field must be >= 0")
        if self.nq_alpha < 0 or self.prf_term_weight < 0:
            raise ValueError("nq_alpha and prf_term_weight must be >= 0")


def build_query(article, fields_used) -> FieldedQuery:
    """One weighted query clause per analyzed term of each populated field."""
    query = FieldedQuery(excluded_doc=article.id)
    for name in fields_used:
        terms = analyze(field_spec(name), field_values(article, name))
        if terms:
            query.fields[name] = idx.weighted_terms(terms, 1.0)
    return query


def _rank_all_tfidf(index: FieldedIndex, query: FieldedQuery) -> RankedList:
    return idx.search(index, query, "tfidf", k=max(1, len(index.doc_ids)))


def rank_nq(index: FieldedIndex, query: FieldedQuery, alpha: float, k: int) -> RankedList:
    if query.is_empty():
        return []
    base = _rank_all_tfidf(index, query)
    if not base:
        return []
    m_total = len(query.populated_fields())
    matches = idx.field_match_counts(index, query)
    rescored = {
        doc_id: score * (matches[doc_id] / m_total) ** alpha
        for doc_id, score in base
    }
    return idx.rank(rescored, k, query.excluded_doc)


def expand_query(
    index: FieldedIndex,
    query: FieldedQuery,
    feedback_docs: list[str],
    terms_per_field: int,
    term_weight: float,
    skip_fields: frozenset[str] = frozenset(),
) -> FieldedQuery:
    """Append the top feedback terms per query field; never duplicates a term."""
    expanded = FieldedQuery(excluded_doc=query.excluded_doc)
    for name, terms in query.fields.items():
        new_terms = list(terms)
        if terms and name not in skip_fields:
            fi = index.fields.get(name)
            if fi is not None:
                present = {term for term, _ in terms}
                candidate_scores: dict[str, float] = {}
                for doc_id in feedback_docs:
                    for term, tf in fi.doc_terms.get(doc_id, {}).items():
                        if term in present:
                            continue
                        idf = 1.0 + math.log(fi.doc_count / (fi.doc_freq(term) + 1.0))
                        candidate_scores[term] = candidate_scores.get(term, 0.0) + tf * idf
                chosen = sorted(candidate_scores, key=lambda t: (-candidate_scores[t], t))
                new_terms.extend((term, term_weight) for term in chosen[:terms_per_field])
        expanded.fields[name] = new_terms
    return expanded


def rank_prf(
    index: FieldedIndex,
    query: FieldedQuery,
    config: ContentConfig,
    k: int,
    skip_fields: frozenset[str] = frozenset(),
) -> RankedList:
    if query.is_empty():
        return []
    base = rank_nq(index, query, config.nq_alpha, k=max(1, len(index.doc_ids)))
    if not base:
        return []
    feedback = [doc_id for doc_id, _score in base[: config.prf_feedback_docs]]
    expanded = expand_query(
        index,
        query,
        feedback,
        config.prf_terms_per_field,
        config.prf_term_weight,
        skip_fields,
    )
    return rank_nq(index, expanded, config.nq_alpha, k)


def rank_variant(
    index: FieldedIndex,
    query: FieldedQuery,
    config: ContentConfig,
    k: int,
    skip_expand_fields: frozenset[str] = frozenset(),
) -> RankedList:
    if query.is_empty():
        return []
    if config.variant == "tfidf":
        return idx.search(index, query, "tfidf", k)
    if config.variant == "nq":
        return rank_nq(index, query, config.nq_alpha, k)
    if config.variant == "prf":
        return rank_prf(index, query, config, k, skip_expand_fields)
    return idx.search(index, query, "bm25", k, k1=config.k1, b=config.b)


def recommend_tfidf(index, article, config: ContentConfig, k: int) -> RankedList:
    return idx.search(index, build_query(article, config.fields_used), "tfidf", k)


def recommend_nq(index, article, config: ContentConfig, k: int) -> RankedList:
    return rank_nq(index, build_query(article, config.fields_used), config.nq_alpha, k)


def recommend_prf(index, article, config: ContentConfig, k: int) -> RankedList:
    return rank_prf(index, build_query(article, config.fields_used), config, k)


def recommend_bm25c(index, article, config: ContentConfig, k: int) -> RankedList:
    query = build_query(article, config.fields_used)
    return idx.search(index, query, "bm25", k, k1=config.k1, b=config.b)


def recommend(index, article, config: ContentConfig, k: int) -> RankedList:
    """Dispatch on the configured variant."""
    return rank_variant(index, build_query(article, config.fields_used), config, k)
