"""Tokenization, stop words, stemming and per-field analysis.

Each metadata field is analyzed by one of three analyzers:

* ``stemmed_text`` — tokenize, drop stop words, Porter-stem (titles)
* ``plain_text``   — tokenize only, lowercased but unstemmed (abstracts)
* ``atomic``       — each raw value becomes a single lowercased term
  (author names, tags, keywords, mesh terms, extracted keywords, cf ids)
"""

import re
from dataclasses import dataclass
from importlib import resources

from . import porter

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

STEMMED_TEXT = "stemmed_text"
PLAIN_TEXT = "plain_text"
ATOMIC = "atomic"

# field name -> analyzer; the cf field holds collaborative-filtering
# neighbor ids and only exists on augmented indexes
FIELD_ANALYZERS = {
    "title": STEMMED_TEXT,
    "abstract": PLAIN_TEXT,
    "author": ATOMIC,
    "tag": ATOMIC,
    "keyword": ATOMIC,
    "mesh_term": ATOMIC,
    "textrank_keyword": ATOMIC,
    "cf": ATOMIC,
}

CONTENT_FIELDS = (
    "title",
    "abstract",
    "author",
    "tag",
    "keyword",
    "mesh_term",
    "textrank_keyword",
)

CF_FIELD = "cf"


@dataclass(frozen=True)
class FieldSpec:
    name: str
    analyzer: str

    def __post_init__(self):
        if self.name not in FIELD_ANALYZERS:
            raise ValueError(f"unknown field: {self.name}")
        if FIELD_ANALYZERS[self.name] != self.analyzer:
            raise ValueError(
                f"field {self.name} requires analyzer {FIELD_ANALYZERS[self.name]}"
            )


def field_spec(name: str) -> FieldSpec:
    if name not in FIELD_ANALYZERS:
        raise ValueError(f"unknown field: {name}")
    return FieldSpec(name, FIELD_ANALYZERS[name])


def specs_for(names) -> list[FieldSpec]:
    return [field_spec(name) for name in names]


def _load_stopwords() -> frozenset[str]:
    text = resources.files("scholarrec.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


STOPWORDS = _load_stopwords()


def tokenize(text: str) -> list[str]:
    """Lowercase and split on runs of non-alphanumeric characters."""
    return _TOKEN_RE.findall(text.lower())


def remove_stopwords(terms: list[str]) -> list[str]:
    return [t for t in terms if t not in STOPWORDS]


def porter_stem(term: str) -> str:
    return porter.stem(term)


def field_values(article, name: str) -> list[str]:
    """Raw values an article carries for one index field."""
    if name == "title":
        return [article.title] if article.title else []
    if name == "abstract":
        return [article.abstract] if article.abstract else []
    if name == "author":
        return list(article.authors)
    if name == "tag":
        return list(article.tags)
    if name == "keyword":
        return list(article.keywords)
    if name == "mesh_term":
        return list(article.mesh_terms)
    if name == "textrank_keyword":
        return list(article.textrank_keywords)
    raise ValueError(f"no article values for field {name}")


def analyze(spec: FieldSpec, raw_values: list[str]) -> list[str]:
    """Turn raw field values into the term stream the index consumes."""
    if spec.analyzer == ATOMIC:
        terms = [value.strip().lower() for value in raw_values]
        return [t for t in terms if t]
    tokens = []
    for value in raw_values:
        tokens.extend(tokenize(value))
    if spec.analyzer == PLAIN_TEXT:
        return tokens
    return [porter_stem(t) for t in remove_stopwords(tokens)]
