"""Per-field inverted index with TFIDF and BM25 scoring.

Scoring model, pinned for bit-for-bit reproducibility:

* tfidf: coord * sum over matched terms of
  weight * sqrt(tf) * idf^2 / sqrt(field_length), with
  idf = 1 + ln(N_field / (df + 1)) and
  coord = matched query terms / total query terms (across fields).
* bm25: sum over matched terms of
  weight * max(0, ln((N_field - df + 0.5) / (df + 0.5)))
  * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len / avglen)).

Multi-field combination is a plain sum of per-field scores. Ranked lists
are sorted by descending score, ties broken by ascending doc id, and docs
scoring exactly zero are omitted.
"""

import json
import math
from dataclasses import dataclass, field

from .textproc import FieldSpec, analyze, field_values

FORMAT_VERSION = 1

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75

RankedList = list[tuple[str, float]]


@dataclass
class FieldIndex:
    """Statistics for one index field."""

    postings: dict[str, dict[str, int]] = field(default_factory=dict)
    doc_terms: dict[str, dict[str, int]] = field(default_factory=dict)
    field_length: dict[str, int] = field(default_factory=dict)
    avg_field_length: float = 0.0
    doc_count: int = 0

    def doc_freq(self, term: str) -> int:
        return len(self.postings.get(term, ()))

    def add_document(self, doc_id: str, terms: list[str]) -> None:
        counts: dict[str, int] = {}
        for term in terms:
            counts[term] = counts.get(term, 0) + 1
        self.doc_terms[doc_id] = counts
        self.field_length[doc_id] = len(terms)
        for term, tf in counts.items():
            self.postings.setdefault(term, {})[doc_id] = tf

    def finalize(self) -> None:
        self.doc_count = len(self.field_length)
        if self.doc_count:
            self.avg_field_length = sum(self.field_length.values()) / self.doc_count
        else:
            self.avg_field_length = 0.0


@dataclass
class FieldedIndex:
    fields: dict[str, FieldIndex]
    doc_ids: list[str]

    def has_doc(self, doc_id: str) -> bool:
        return doc_id in self._doc_set

    def __post_init__(self):
        self._doc_set = set(self.doc_ids)


@dataclass
class FieldedQuery:
    """Per-field weighted terms; terms are unique within a field."""

    fields: dict[str, list[tuple[str, float]]] = field(default_factory=dict)
    excluded_doc: str | None = None

    def is_empty(self) -> bool:
        return not any(self.fields.values())

    def total_terms(self) -> int:
        return sum(len(terms) for terms in self.fields.values())

    def populated_fields(self) -> list[str]:
        return [name for name, terms in self.fields.items() if terms]


def weighted_terms(terms: list[str], weight: float = 1.0) -> list[tuple[str, float]]:
    """Aggregate duplicate terms, summing weights; first-seen order."""
    weights: dict[str, float] = {}
    for term in terms:
        weights[term] = weights.get(term, 0.0) + weight
    return list(weights.items())


def build_index(articles, specs: list[FieldSpec]) -> FieldedIndex:
    seen = set()
    doc_ids = []
    for article in articles:
        if article.id in seen:
            raise ValueError(f"duplicate article id {article.id!r}")
        seen.add(article.id)
        doc_ids.append(article.id)
    fields: dict[str, FieldIndex] = {}
    for spec in specs:
        fi = FieldIndex()
        for article in articles:
            terms = analyze(spec, field_values(article, spec.name))
            if terms:
                fi.add_document(article.id, terms)
        fi.finalize()
        fields[spec.name] = fi
    return FieldedIndex(fields=fields, doc_ids=doc_ids)


def _require_doc(index: FieldedIndex, doc_id: str) -> None:
    if not index.has_doc(doc_id):
        raise KeyError(f"unknown doc id {doc_id!r}")


def tfidf_score(index: FieldedIndex, query: FieldedQuery, doc_id: str) -> float:
    _require_doc(index, doc_id)
    total = query.total_terms()
    if total == 0:
        return 0.0
    matched = 0
    raw = 0.0
    for name, terms in query.fields.items():
        fi = index.fields.get(name)
        if fi is None:
            continue
        counts = fi.doc_terms.get(doc_id)
        if not counts:
            continue
        length = fi.field_length[doc_id]
        for term, weight in terms:
            tf = counts.get(term, 0)
            if tf == 0:
                continue
            matched += 1
            idf = 1.0 + math.log(fi.doc_count / (fi.doc_freq(term) + 1.0))
            raw += weight * math.sqrt(tf) * idf * idf / math.sqrt(length)
    return raw * (matched / total)


def bm25_score(
    index: FieldedIndex,
    query: FieldedQuery,
    doc_id: str,
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
) -> float:
    _require_doc(index, doc_id)
    score = 0.0
    for name, terms in query.fields.items():
        fi = index.fields.get(name)
        if fi is None or fi.avg_field_length == 0.0:
            continue
        counts = fi.doc_terms.get(doc_id)
        if not counts:
            continue
        length = fi.field_length[doc_id]
        for term, weight in terms:
            tf = counts.get(term, 0)
            if tf == 0:
                continue
            df = fi.doc_freq(term)
            idf = math.log((fi.doc_count - df + 0.5) / (df + 0.5))
            if idf <= 0.0:
                continue
            norm = tf + k1 * (1.0 - b + b * length / fi.avg_field_length)
            score += weight * idf * tf * (k1 + 1.0) / norm
    return score


def matching_docs(index: FieldedIndex, query: FieldedQuery) -> set[str]:
    docs: set[str] = set()
    for name, terms in query.fields.items():
        fi = index.fields.get(name)
        if fi is None:
            continue
        for term, _weight in terms:
            docs.update(fi.postings.get(term, ()))
    return docs


def field_match_counts(index: FieldedIndex, query: FieldedQuery) -> dict[str, int]:
    """Per doc: in how many populated query fields it matches >= 1 term."""
    counts: dict[str, int] = {}
    for name, terms in query.fields.items():
        if not terms:
            continue
        fi = index.fields.get(name)
        if fi is None:
            continue
        docs_in_field: set[str] = set()
        for term, _weight in terms:
            docs_in_field.update(fi.postings.get(term, ()))
        for doc_id in docs_in_field:
            counts[doc_id] = counts.get(doc_id, 0) + 1
    return counts


def rank(scored: dict[str, float], k: int, excluded_doc: str | None = None) -> RankedList:
    items = [
        (doc_id, score)
        for doc_id, score in scored.items()
        if score > 0.0 and doc_id != excluded_doc
    ]
    items.sort(key=lambda pair: (-pair[1], pair[0]))
    return items[:k]


def search(
    index: FieldedIndex,
    query: FieldedQuery,
    scorer: str = "tfidf",
    k: int = 10,
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
) -> RankedList:
    if k < 1:
        raise ValueError("k must be >= 1")
    if scorer not in ("tfidf", "bm25"):
        raise ValueError(f"unknown scorer {scorer!r}")
    if query.is_empty():
        return []
    scored = {}
    for doc_id in matching_docs(index, query):
        if scorer == "tfidf":
            scored[doc_id] = tfidf_score(index, query, doc_id)
        else:
            scored[doc_id] = bm25_score(index, query, doc_id, k1=k1, b=b)
    return rank(scored, k, query.excluded_doc)


def save_index(index: FieldedIndex, path) -> None:
    """Deterministic json snapshot with a format-version header."""
    payload = {
        "format_version": FORMAT_VERSION,
        "doc_ids": index.doc_ids,
        "fields": {
            name: {
                term: sorted(docs.items())
                for term, docs in sorted(fi.postings.items())
            }
            for name, fi in index.fields.items()
        },
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, separators=(",", ":"))


def load_index(path) -> FieldedIndex:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported index format version: {version!r}")
    fields = {}
    for name, postings in payload["fields"].items():
        fi = FieldIndex()
        for term, docs in postings.items():
            for doc_id, tf in docs:
                fi.postings.setdefault(term, {})[doc_id] = tf
                fi.doc_terms.setdefault(doc_id, {})[term] = tf
                fi.field_length[doc_id] = fi.field_length.get(doc_id, 0) + tf
        fi.finalize()
        fields[name] = fi
    return FieldedIndex(fields=fields, doc_ids=payload["doc_ids"])
