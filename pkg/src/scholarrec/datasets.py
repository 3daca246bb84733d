"""Scenario test sets, leakage-free training sets, qrels and synthetic corpora.

Each scenario groups catalog articles by one relatedness key (shared group,
venue, claimed author, or owning user library). Candidate sets are processed
largest-first; articles already claimed by an earlier set are removed so set
membership stays mutually exclusive; oversized sets are seeded-downsampled
to 20 and sets that shrink below 10 are dropped. Two distinct query articles
are sampled per surviving set.
"""

import json
import random
import re
from dataclasses import dataclass

from .corpus import Article, Catalog, UserLibrary

SCENARIOS = ("groups", "venues", "publications", "libraries")

MIN_SET_SIZE = 10
MAX_SET_SIZE = 20
QUERIES_PER_SET = 2


@dataclass
class ArticleSet:
    set_id: str
    article_ids: list[str]


@dataclass
class TestSet:
    scenario: str
    sets: list[ArticleSet]
    queries: list[tuple[str, str]]  # (query article id, set id)

    def all_article_ids(self) -> list[str]:
        return [a for s in self.sets for a in s.article_ids]

    def set_by_id(self, set_id: str) -> ArticleSet:
        for s in self.sets:
            if s.set_id == set_id:
                return s
        raise KeyError(set_id)


def _candidate_sets(catalog: Catalog, scenario: str, sample_fraction: float, rng) -> list[tuple[str, list[str]]]:
    groups: dict[str, set[str]] = {}
    if scenario == "groups":
        for article in catalog.articles.values():
            for gid in article.group_ids:
                groups.setdefault(gid, set()).add(article.id)
    elif scenario == "venues":
        for article in catalog.articles.values():
            if article.venue_id:
                groups.setdefault(article.venue_id, set()).add(article.id)
    elif scenario == "publications":
        for article in catalog.articles.values():
            for owner in article.owner_user_ids:
                groups.setdefault(owner, set()).add(article.id)
    elif scenario == "libraries":
        candidates = [
            lib for lib in catalog.libraries
            if any(a in catalog.articles for a in lib.article_ids)
        ]
        candidates.sort(key=lambda lib: lib.user_id)
        if sample_fraction < 1.0:
            count = max(1, round(sample_fraction * len(candidates)))
            candidates = rng.sample(candidates, min(count, len(candidates)))
        for lib in candidates:
            groups[lib.user_id] = {a for a in lib.article_ids if a in catalog.articles}
    else:
        raise ValueError(f"unknown scenario {scenario!r}")
    return [(key, sorted(members)) for key, members in groups.items()]


def build_testset(
    catalog: Catalog,
    scenario: str,
    seed: int,
    sample_fraction: float = 1.0,
) -> TestSet:
    """Deterministic scenario test set; fully determined by (catalog, scenario, seed)."""
    rng = random.Random(seed)
    candidates = _candidate_sets(catalog, scenario, sample_fraction, rng)
    candidates.sort(key=lambda pair: (-len(pair[1]), pair[0]))
    claimed: set[str] = set()
    sets: list[ArticleSet] = []
    for key, members in candidates:
        remaining = [a for a in members if a not in claimed]
        if len(remaining) > MAX_SET_SIZE:
            remaining = sorted(rng.sample(remaining, MAX_SET_SIZE))
        if len(remaining) < MIN_SET_SIZE:
            continue
        claimed.update(remaining)
        sets.append(ArticleSet(set_id=key, article_ids=remaining))
    if not sets:
        raise ValueError(f"no surviving article sets for scenario {scenario!r}")
    queries: list[tuple[str, str]] = []
    for article_set in sets:
        for query in rng.sample(article_set.article_ids, QUERIES_PER_SET):
            queries.append((query, article_set.set_id))
    return TestSet(scenario=scenario, sets=sets, queries=queries)


def normalize_name(name: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace."""
    cleaned = re.sub(r"[^\w\s]", " ", name.lower())
    return " ".join(cleaned.split())


def derive_training(
    libraries: list[UserLibrary], testset: TestSet, catalog: Catalog
) -> list[UserLibrary]:
    """Drop the libraries that directly generated test-set ground truth."""
    if testset.scenario in ("groups", "venues"):
        return list(libraries)
    if testset.scenario == "libraries":
        sources = {s.set_id for s in testset.sets}
        return [lib for lib in libraries if lib.user_id not in sources]
    # publications: drop every owner of a test article, plus any user whose
    # normalized id matches a test-article author name
    owners: set[str] = set()
    author_names: set[str] = set()
    for article_id in testset.all_article_ids():
        article = catalog.articles.get(article_id)
        if article is None:
            continue
        owners.update(article.owner_user_ids)
        author_names.update(normalize_name(a) for a in article.authors)
    return [
        lib
        for lib in libraries
        if lib.user_id not in owners and normalize_name(lib.user_id) not in author_names
    ]


Qrels = dict[str, set[str]]


def make_qrels(testset: TestSet) -> Qrels:
    """Every other member of the query's set is relevant (grade 1)."""
    qrels: Qrels = {}
    sets = {s.set_id: s for s in testset.sets}
    for query, set_id in testset.queries:
        members = sets[set_id].article_ids
        qrels[query] = {a for a in members if a != query}
    return qrels


def save_testset(testset: TestSet, path, provenance: dict | None = None) -> None:
    payload = {
        "scenario": testset.scenario,
        "sets": [
            {"set_id": s.set_id, "article_ids": s.article_ids} for s in testset.sets
        ],
        "queries": [
            {"query": query, "set_id": set_id} for query, set_id in testset.queries
        ],
    }
    if provenance:
        payload["provenance"] = provenance
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, sort_keys=True, indent=1)
        handle.write("\n")


def load_testset(path) -> TestSet:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    if payload["scenario"] not in SCENARIOS:
        raise ValueError(f"unknown scenario {payload['scenario']!r}")
    return TestSet(
        scenario=payload["scenario"],
        sets=[
            ArticleSet(set_id=s["set_id"], article_ids=list(s["article_ids"]))
            for s in payload["sets"]
        ],
        queries=[(q["query"], q["set_id"]) for q in payload["queries"]],
    )


@dataclass(frozen=True)
class SynthParams:
    topics: int = 5
    articles_per_topic: int = 15
    users: int = 200
    topic_vocab_size: int = 40
    background_vocab_size: int = 80
    noise_rate: float = 0.1
    library_min: int = 10
    library_max: int = 20
    seed: int = 0

    def __post_init__(self):
        if min(self.topics, self.articles_per_topic, self.users) < 1:
            raise ValueError("topics, articles_per_topic and users must be positive")
        if min(self.topic_vocab_size, self.background_vocab_size) < 1:
            raise ValueError("vocabulary sizes must be positive")
        if not 0.0 <= self.noise_rate < 1.0:
            raise ValueError("noise_rate must be in [0, 1)")
        if not 2 <= self.library_min <= self.library_max:
            raise ValueError("library bounds must satisfy 2 <= min <= max")


def synth_corpus(params: SynthParams) -> Catalog:
    """Planted-topic catalog: disjoint topic vocabularies, per-topic groups,
    venues and owners, and user libraries sampled within 1-3 topics."""
    rng = random.Random(params.seed)
    topic_vocab = [
        [f"topic{t}word{i}" for i in range(params.topic_vocab_size)]
        for t in range(params.topics)
    ]
    background = [f"fillerword{i}" for i in range(params.background_vocab_size)]

    def draw_words(topic: int, count: int) -> list[str]:
        words = []
        for _ in range(count):
            if rng.random() < params.noise_rate:
                words.append(rng.choice(background))
            else:
                words.append(rng.choice(topic_vocab[topic]))
        return words

    articles: dict[str, Article] = {}
    topic_article_ids: list[list[str]] = []
    for t in range(params.topics):
        ids = []
        for j in range(params.articles_per_topic):
            article_id = f"t{t}a{j}"
            ids.append(article_id)
            articles[article_id] = Article(
                id=article_id,
                title=" ".join(draw_words(t, 6)),
                abstract=" ".join(draw_words(t, 40)),
                authors=[f"Author {t} Prime", f"Author {t} Second"],
                tags=rng.sample(topic_vocab[t], 2),
                keywords=rng.sample(topic_vocab[t], 3),
                mesh_terms=rng.sample(topic_vocab[t], 2) if j % 2 == 0 else [],
                venue_id=f"venue{t}",
                group_ids=[f"group{t}"],
                owner_user_ids=[f"owner{t}"],
            )
        topic_article_ids.append(ids)

    libraries: list[UserLibrary] = []
    for t in range(params.topics):
        libraries.append(UserLibrary(f"owner{t}", set(topic_article_ids[t])))
    for u in range(params.users):
        n_topics = rng.randint(1, min(3, params.topics))
        chosen = sorted(rng.sample(range(params.topics), n_topics))
        pool = sorted(a for t in chosen for a in topic_article_ids[t])
        size = min(rng.randint(params.library_min, params.library_max), len(pool))
        members = set(rng.sample(pool, size))
        libraries.append(UserLibrary(f"u{u:04d}", members))
    return Catalog(articles=articles, libraries=libraries)
