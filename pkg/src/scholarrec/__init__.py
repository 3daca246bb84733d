"""Scientific-literature recommendation: content-based retrieval, item-based
collaborative filtering, a hybrid of the two, scenario test sets and a
trec-style P@5 evaluation harness."""

__version__ = "0.1.0"

from .cf import (
    build_interactions,
    cap_cooccurrences,
    read_neighbors,
    recommend_cf,
    similarity,
    top_k_neighbors,
    train_neighbors,
    write_neighbors,
)
from .contentrec import (
    ContentConfig,
    build_query,
    recommend,
    recommend_bm25c,
    recommend_nq,
    recommend_prf,
    recommend_tfidf,
)
from .corpus import (
    Article,
    Catalog,
    UserLibrary,
    load_articles,
    load_catalog,
    load_libraries,
    save_articles,
    save_libraries,
    validate,
)
from .datasets import (
    SynthParams,
    TestSet,
    build_testset,
    derive_training,
    load_testset,
    make_qrels,
    save_testset,
    synth_corpus,
)
from .evaluation import (
    RankedRun,
    evaluate,
    precision_at_k,
    read_qrels,
    read_run,
    write_qrels,
    write_run,
)
from .harness import ExperimentConfig, build_run, compare_runs, run_pipeline
from .hybrid import HybridConfig, augment_index, build_hybrid_query, recommend_hybrid
from .index import FieldedIndex, FieldedQuery, build_index, load_index, save_index, search
from .textproc import analyze, porter_stem, remove_stopwords, tokenize
from .textrank import enrich_textrank, textrank_keywords

__all__ = [
    "Article",
    "Catalog",
    "ContentConfig",
    "ExperimentConfig",
    "FieldedIndex",
    "FieldedQuery",
    "HybridConfig",
    "RankedRun",
    "SynthParams",
    "TestSet",
    "UserLibrary",
    "analyze",
    "augment_index",
    "build_hybrid_query",
    "build_index",
    "build_interactions",
    "build_query",
    "build_run",
    "build_testset",
    "cap_cooccurrences",
    "compare_runs",
    "derive_training",
    "enrich_textrank",
    "evaluate",
    "load_articles",
    "load_catalog",
    "load_index",
    "load_libraries",
    "load_testset",
    "make_qrels",
    "porter_stem",
    "precision_at_k",
    "read_neighbors",
    "read_qrels",
    "read_run",
    "recommend",
    "recommend_bm25c",
    "recommend_cf",
    "recommend_hybrid",
    "recommend_nq",
    "recommend_prf",
    "recommend_tfidf",
    "remove_stopwords",
    "run_pipeline",
    "save_articles",
    "save_index",
    "save_libraries",
    "save_testset",
    "search",
    "similarity",
    "synth_corpus",
    "textrank_keywords",
    "tokenize",
    "top_k_neighbors",
    "train_neighbors",
    "validate",
    "write_neighbors",
    "write_qrels",
    "write_run",
]
