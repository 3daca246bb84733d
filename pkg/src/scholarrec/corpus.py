"""Article/library data model and catalog ingest.

The interchange format is JSON-lines, one record per line, UTF-8. Library
interactions also load from two-column csv (``user_id,article_id``).
Author names are stored verbatim; normalization is a text-processing
concern. Library article ids that resolve to no known article are kept:
collaborative filtering trains on id co-occurrence and needs no metadata.
"""

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path


class CorpusError(ValueError):
    """Malformed or inconsistent corpus input."""


_LIST_FIELDS = (
    "authors",
    "tags",
    "keywords",
    "mesh_terms",
    "textrank_keywords",
    "group_ids",
    "owner_user_ids",
)


@dataclass
class Article:
    id: str
    title: str | None = None
    abstract: str | None = None
    authors: list[str] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)
    keywords: list[str] = field(default_factory=list)
    mesh_terms: list[str] = field(default_factory=list)
    textrank_keywords: list[str] = field(default_factory=list)
    venue_id: str | None = None
    group_ids: list[str] = field(default_factory=list)
    owner_user_ids: list[str] = field(default_factory=list)


@dataclass
class UserLibrary:
    user_id: str
    article_ids: set[str]


@dataclass
class Catalog:
    articles: dict[str, Article]
    libraries: list[UserLibrary] = field(default_factory=list)


def _article_from_record(record: dict, line_no: int) -> Article:
    if not isinstance(record, dict):
        raise CorpusError(f"line {line_no}: article record must be an object")
    art_id = record.get("id")
    if not art_id or not isinstance(art_id, str):
        raise CorpusError(f"line {line_no}: missing or empty article id")
    article = Article(id=art_id)
    for key in ("title", "abstract", "venue_id"):
        value = record.get(key)
        if value is not None and not isinstance(value, str):
            raise CorpusError(f"line {line_no}: field {key} must be a string")
        setattr(article, key, value or None)
    for key in _LIST_FIELDS:
        value = record.get(key, [])
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise CorpusError(f"line {line_no}: field {key} must be a list of strings")
        setattr(article, key, list(value))
    return article


def load_articles(path) -> dict[str, Article]:
    """Read a jsonl article file into an id -> Article map."""
    articles: dict[str, Article] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {line_no}: malformed json ({exc.msg})") from exc
            article = _article_from_record(record, line_no)
            if article.id in articles:
                raise CorpusError(f"line {line_no}: duplicate article id {article.id!r}")
            articles[article.id] = article
    return articles


def article_to_record(article: Article) -> dict:
    """Compact json record; empty optional fields are omitted."""
    record: dict = {"id": article.id}
    for key in ("title", "abstract"):
        value = getattr(article, key)
        if value:
            record[key] = value
    for key in _LIST_FIELDS:
        value = getattr(article, key)
        if value:
            record[key] = list(value)
    if article.venue_id:
        record["venue_id"] = article.venue_id
    return record


def save_articles(articles, path, header: list[str] | None = None) -> None:
    """Write articles as jsonl; inverse of load_articles."""
    items = articles.values() if isinstance(articles, dict) else articles
    with open(path, "w", encoding="utf-8") as handle:
        for line in header or []:
            handle.write(f"# {line}\n")
        for article in items:
            handle.write(json.dumps(article_to_record(article), sort_keys=True) + "\n")


def _libraries_from_pairs(pairs) -> list[UserLibrary]:
    grouped: dict[str, set[str]] = {}
    for user_id, article_id in pairs:
        grouped.setdefault(user_id, set()).add(article_id)
    return [UserLibrary(user_id, grouped[user_id]) for user_id in sorted(grouped)]


def load_libraries(path, fmt: str | None = None) -> list[UserLibrary]:
    """Read user libraries from csv (user_id,article_id pairs) or jsonl."""
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    if fmt == "csv":
        return _load_libraries_csv(path)
    if fmt == "jsonl":
        return _load_libraries_jsonl(path)
    raise ValueError(f"unsupported library format: {fmt}")


def _load_libraries_csv(path) -> list[UserLibrary]:
    pairs = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            return []
        if [h.strip() for h in header] != ["user_id", "article_id"]:
            raise CorpusError("library csv must start with header user_id,article_id")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2 or not row[0] or not row[1]:
                raise CorpusError(f"line {line_no}: expected nonempty user_id,article_id")
            pairs.append((row[0], row[1]))
    return _libraries_from_pairs(pairs)


def _load_libraries_jsonl(path) -> list[UserLibrary]:
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {line_no}: malformed json ({exc.msg})") from exc
            user_id = record.get("user_id")
            article_ids = record.get("article_ids")
            if not user_id or not isinstance(user_id, str):
                raise CorpusError(f"line {line_no}: missing or empty user_id")
            if not isinstance(article_ids, list):
                raise CorpusError(f"line {line_no}: article_ids must be a list")
            for article_id in article_ids:
                if not article_id or not isinstance(article_id, str):
                    raise CorpusError(f"line {line_no}: empty article id")
                pairs.append((user_id, article_id))
    return _libraries_from_pairs(pairs)


def save_libraries(libraries, path, header: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for line in header or []:
            handle.write(f"# {line}\n")
        for library in libraries:
            record = {"user_id": library.user_id, "article_ids": sorted(library.article_ids)}
            handle.write(json.dumps(record, sort_keys=True) + "\n")


def load_catalog(articles_path, libraries_path=None) -> Catalog:
    articles = load_articles(articles_path)
    libraries = load_libraries(libraries_path) if libraries_path else []
    return Catalog(articles=articles, libraries=libraries)


_POPULATION_FIELDS = (
    "title",
    "abstract",
    "authors",
    "tags",
    "keywords",
    "mesh_terms",
    "textrank_keywords",
    "venue_id",
    "group_ids",
    "owner_user_ids",
)


@dataclass
class ValidationReport:
    n_articles: int
    n_libraries: int
    field_counts: dict[str, int]
    unresolved_ids: int

    def field_ratio(self, name: str) -> float:
        if self.n_articles == 0:
            return 0.0
        return self.field_counts[name] / self.n_articles

    def to_dict(self) -> dict:
        return {
            "n_articles": self.n_articles,
            "n_libraries": self.n_libraries,
            "field_counts": dict(self.field_counts),
            "field_ratios": {f: self.field_ratio(f) for f in self.field_counts},
            "unresolved_ids": self.unresolved_ids,
        }


def validate(catalog: Catalog) -> ValidationReport:
    """Population/sparseness counts per metadata field plus unresolved library ids."""
    counts = {name: 0 for name in _POPULATION_FIELDS}
    for article in catalog.articles.values():
        for name in _POPULATION_FIELDS:
            if getattr(article, name):
                counts[name] += 1
    unresolved = set()
    for library in catalog.libraries:
        unresolved.update(a for a in library.article_ids if a not in catalog.articles)
    return ValidationReport(
        n_articles=len(catalog.articles),
        n_libraries=len(catalog.libraries),
        field_counts=counts,
        unresolved_ids=len(unresolved),
    )
