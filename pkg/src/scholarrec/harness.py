"""Experiment orchestration: test set -> training -> recommendations -> metrics.

Every artifact embeds the effective configuration, its hash and the seed in
a header comment (json artifacts carry a provenance object instead), so a
run is reproducible byte-for-byte from (corpus, config, seed) and metrics
from different configurations can never be compared against mismatched
ground truth unnoticed.
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__, cf, contentrec
from .contentrec import ContentConfig
from .corpus import Catalog, load_catalog
from .datasets import SCENARIOS, Qrels, TestSet, build_testset, derive_training, make_qrels, save_testset
from .evaluation import RankedRun, evaluate, write_qrels, write_run
from .hybrid import HybridConfig, augment_index, recommend_hybrid
from .index import build_index
from .runtime import parallel_map
from .textproc import specs_for
from .textrank import enrich_textrank

RECOMMENDERS = ("content", "cf", "hybrid")


class ConfigError(Exception):
    """Unusable experiment configuration or missing input."""


@dataclass
class ExperimentConfig:
    scenario: str = "groups"
    recommender: str = "hybrid"
    seed: int = 0
    content: ContentConfig = field(default_factory=ContentConfig)
    cf_measure: str = "loglikelihood"
    cf_max_cooccurrences: int = 100
    cf_max_similarities: int = 100
    neighbor_weighting: str = "similarity"
    include_self_id: bool = True
    sample_fraction: float = 1.0
    run_depth: int = 10
    eval_ks: tuple[int, ...] = (5,)
    textrank_top_n: int = 10

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if self.recommender not in RECOMMENDERS:
            raise ConfigError(f"unknown recommender {self.recommender!r}")
        if self.cf_measure not in cf.MEASURES:
            raise ConfigError(f"unknown similarity measure {self.cf_measure!r}")
        if self.run_depth < 1:
            raise ConfigError("run_depth must be >= 1")
        self.eval_ks = tuple(self.eval_ks)

    def hybrid_config(self) -> HybridConfig:
        weighting = self.neighbor_weighting
        if self.content.variant == "bm25c":
            weighting = "unweighted"
        return HybridConfig(
            base=self.content,
            neighbor_weighting=weighting,
            include_self_id=self.include_self_id,
        )

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        content = data.pop("content", {})
        try:
            if isinstance(content, dict):
                content = ContentConfig(**content)
            unknown = set(data) - set(cls.__dataclass_fields__)
            if unknown:
                raise ConfigError(f"unknown config keys: {sorted(unknown)}")
            return cls(content=content, **data)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc


def config_dict(cfg: ExperimentConfig) -> dict:
    data = asdict(cfg)
    data["content"]["fields_used"] = list(cfg.content.fields_used)
    data["eval_ks"] = list(cfg.eval_ks)
    return data


def config_json(cfg: ExperimentConfig) -> str:
    return json.dumps(config_dict(cfg), sort_keys=True, separators=(",", ":"))


def config_hash(cfg: ExperimentConfig) -> str:
    return hashlib.sha256(config_json(cfg).encode("utf-8")).hexdigest()


def qrels_hash(qrels: Qrels) -> str:
    body = "".join(
        f"{q} 0 {d} 1\n" for q in sorted(qrels) for d in sorted(qrels[q])
    )
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


def artifact_header(cfg: ExperimentConfig, **extra) -> list[str]:
    header = [
        f"scholarrec {__version__}",
        f"config {config_json(cfg)}",
        f"config_sha256 {config_hash(cfg)}",
        f"seed {cfg.seed}",
    ]
    header.extend(f"{key} {value}" for key, value in extra.items())
    return header


def train_cf(catalog: Catalog, testset: TestSet, cfg: ExperimentConfig, threads=None):
    training = derive_training(catalog.libraries, testset, catalog)
    return cf.train_neighbors(
        training,
        measure=cfg.cf_measure,
        max_cooc=cfg.cf_max_cooccurrences,
        max_similarities_per_item=cfg.cf_max_similarities,
        threads=threads,
    )


def build_run(
    catalog: Catalog,
    testset: TestSet,
    cfg: ExperimentConfig,
    neighbors: cf.NeighborMap | None = None,
    threads=None,
) -> RankedRun:
    """Answer every test query with the configured recommender.

    The search space is the test set's articles, excluding the query.
    Queries may fan out across worker threads; results merge in query order.
    """
    article_ids = testset.all_article_ids()
    candidates = set(article_ids)
    if cfg.recommender in ("cf", "hybrid") and neighbors is None:
        neighbors = train_cf(catalog, testset, cfg, threads=threads)

    content_index = None
    aug = None
    hybrid_cfg = None
    if cfg.recommender in ("content", "hybrid"):
        articles = [catalog.articles[a] for a in article_ids]
        if "textrank_keyword" in cfg.content.fields_used:
            enrich_textrank(articles, cfg.textrank_top_n)
        content_index = build_index(articles, specs_for(cfg.content.fields_used))
        if cfg.recommender == "hybrid":
            hybrid_cfg = cfg.hybrid_config()
            aug = augment_index(content_index, neighbors)

    def answer(query_pair):
        query, _set_id = query_pair
        if cfg.recommender == "cf":
            return cf.recommend_cf(neighbors, query, candidates - {query}, cfg.run_depth)
        article = catalog.articles[query]
        if cfg.recommender == "content":
            return contentrec.recommend(content_index, article, cfg.content, cfg.run_depth)
        return recommend_hybrid(aug, article, neighbors, hybrid_cfg, cfg.run_depth)

    answers = parallel_map(answer, testset.queries, threads=threads)
    tag = cfg.recommender
    if cfg.recommender in ("content", "hybrid"):
        tag = f"{cfg.recommender}-{cfg.content.variant}"
    return RankedRun(
        results={q: result for (q, _sid), result in zip(testset.queries, answers)},
        run_tag=tag,
    )


def run_pipeline(
    articles_path,
    libraries_path,
    cfg: ExperimentConfig,
    out_dir,
    threads=None,
) -> dict:
    """Chain all stages; write testset json, qrels, run file and metrics tsv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    catalog = load_catalog(articles_path, libraries_path)
    testset = build_testset(catalog, cfg.scenario, cfg.seed, cfg.sample_fraction)
    qrels = make_qrels(testset)
    run = build_run(catalog, testset, cfg, threads=threads)
    metrics = evaluate(run, qrels, cfg.eval_ks)

    qhash = qrels_hash(qrels)
    paths = {
        "testset": out / "testset.json",
        "qrels": out / "qrels.txt",
        "run": out / "run.txt",
        "metrics": out / "metrics.tsv",
    }
    save_testset(
        testset,
        paths["testset"],
        provenance={
            "config": config_dict(cfg),
            "config_sha256": config_hash(cfg),
            "seed": cfg.seed,
        },
    )
    write_qrels(qrels, paths["qrels"], header=artifact_header(cfg, qrels_sha256=qhash))
    write_run(run, paths["run"], header=artifact_header(cfg, qrels_sha256=qhash))
    with open(paths["metrics"], "w", encoding="utf-8") as handle:
        for line in artifact_header(cfg, qrels_sha256=qhash):
            handle.write(f"# {line}\n")
        handle.write(metrics.to_tsv())
    return {"paths": paths, "metrics": metrics, "testset": testset, "qrels": qrels}


def parse_metrics_file(path) -> tuple[dict, list[tuple[str, str, str]]]:
    """Header key/value pairs and (metric, mode, value) rows from a metrics tsv."""
    headers: dict[str, str] = {}
    rows: list[tuple[str, str, str]] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].strip().split(" ", 1)
                if len(parts) == 2:
                    headers[parts[0]] = parts[1]
                continue
            cells = line.split("\t")
            if len(cells) != 3:
                raise ValueError(f"{path}: line {line_no}: expected metric\\tmode\\tvalue")
            rows.append((cells[0], cells[1], cells[2]))
    return headers, rows


def compare_runs(metrics_paths) -> str:
    """Side-by-side table of metric values with per-file deltas vs the first.

    All files must share the same qrels provenance hash.
    """
    paths = [Path(p) for p in metrics_paths]
    if len(paths) < 2:
        raise ConfigError("compare needs at least two metrics files")
    parsed = [parse_metrics_file(p) for p in paths]
    hashes = {headers.get("qrels_sha256") for headers, _rows in parsed}
    if len(hashes) != 1 or None in hashes:
        raise ValueError("metrics files do not share a qrels provenance hash")

    labels = []
    for (headers, _rows), path in zip(parsed, paths):
        cfg_hash = headers.get("config_sha256", "")
        labels.append(f"{path.stem}[{cfg_hash[:8]}]" if cfg_hash else path.stem)
    keys = [(m, mode) for m, mode, _v in parsed[0][1]]
    tables = [{(m, mode): value for m, mode, value in rows} for _h, rows in parsed]

    lines = ["\t".join(["metric", "mode"] + labels + [f"delta:{l}" for l in labels[1:]])]
    for metric, mode in keys:
        cells = [metric, mode]
        values = []
        for table in tables:
            raw = table.get((metric, mode), "")
            cells.append(raw)
            try:
                values.append(float(raw))
            except ValueError:
                values.append(None)
        for value in values[1:]:
            if value is None or values[0] is None:
                cells.append("")
            else:
                cells.append(f"{value - values[0]:+.6f}")
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"
