"""Command-line interface for batch experiments.

Subcommands mirror the pipeline stages (ingest, synth, make-testset,
cf-train, index, recommend, evaluate, pipeline, compare). Any stage failure
exits nonzero with a single machine-parseable line on stderr:
``error: <category>: <message>`` where the category is one of config (2),
data (3), io (4) or internal (1).

The SCHOLARREC_THREADS environment variable caps worker parallelism.
"""

import argparse
import json
import sys
from pathlib import Path

from . import cf, harness
from .corpus import (
    CorpusError,
    load_catalog,
    save_articles,
    save_libraries,
    validate,
)
from .datasets import (
    SCENARIOS,
    SynthParams,
    build_testset,
    derive_training,
    load_testset,
    make_qrels,
    save_testset,
    synth_corpus,
)
from .evaluation import (
    RunFormatError,
    evaluate,
    read_qrels,
    read_run,
    write_qrels,
    write_run,
)
from .harness import ConfigError, ExperimentConfig, artifact_header, run_pipeline
from .index import build_index, save_index
from .textproc import specs_for
from .textrank import enrich_textrank


def _require_file(path, what: str) -> Path:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"{what} not found: {path}")
    return path


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _experiment_config(args) -> ExperimentConfig:
    data: dict = {}
    if getattr(args, "config", None):
        config_path = _require_file(args.config, "config file")
        try:
            data = json.loads(config_path.read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid json: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a json object")
    for key in ("scenario", "recommender", "seed", "sample_fraction"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    content = dict(data.get("content", {}))
    if getattr(args, "variant", None):
        content["variant"] = args.variant
    if getattr(args, "fields", None):
        content["fields_used"] = [f.strip() for f in args.fields.split(",") if f.strip()]
    if content:
        data["content"] = content
    return ExperimentConfig.from_dict(data)


def _load_inputs(args):
    articles = _require_file(args.articles, "articles file")
    libraries = None
    if getattr(args, "libraries", None):
        libraries = _require_file(args.libraries, "libraries file")
    return load_catalog(articles, libraries)


def cmd_ingest(args) -> int:
    catalog = _load_inputs(args)
    out = _out_dir(args)
    report = validate(catalog)
    save_articles(catalog.articles, out / "catalog.jsonl")
    if catalog.libraries:
        save_libraries(catalog.libraries, out / "libraries.jsonl")
    (out / "report.json").write_text(
        json.dumps(report.to_dict(), indent=1, sort_keys=True) + "\n", "utf-8"
    )
    print(
        f"ingested {report.n_articles} articles, {report.n_libraries} libraries, "
        f"{report.unresolved_ids} unresolved library ids"
    )
    return 0


def cmd_synth(args) -> int:
    params = SynthParams(
        topics=args.topics,
        articles_per_topic=args.articles_per_topic,
        users=args.users,
        topic_vocab_size=args.topic_vocab,
        background_vocab_size=args.background_vocab,
        noise_rate=args.noise,
        seed=args.seed,
    )
    catalog = synth_corpus(params)
    out = _out_dir(args)
    header = [f"synth {json.dumps(params.__dict__, sort_keys=True)}"]
    save_articles(catalog.articles, out / "articles.jsonl", header=header)
    save_libraries(catalog.libraries, out / "libraries.jsonl", header=header)
    print(f"wrote {len(catalog.articles)} articles, {len(catalog.libraries)} libraries")
    return 0


def cmd_make_testset(args) -> int:
    cfg = _experiment_config(args)
    catalog = _load_inputs(args)
    testset = build_testset(catalog, cfg.scenario, cfg.seed, cfg.sample_fraction)
    qrels = make_qrels(testset)
    out = _out_dir(args)
    save_testset(
        testset,
        out / "testset.json",
        provenance={
            "config": harness.config_dict(cfg),
            "config_sha256": harness.config_hash(cfg),
            "seed": cfg.seed,
        },
    )
    write_qrels(
        qrels,
        out / "qrels.txt",
        header=artifact_header(cfg, qrels_sha256=harness.qrels_hash(qrels)),
    )
    print(f"{len(testset.sets)} article sets, {len(testset.queries)} queries")
    return 0


def cmd_cf_train(args) -> int:
    cfg = _experiment_config(args)
    catalog = _load_inputs(args)
    testset = load_testset(_require_file(args.testset, "testset file"))
    training = derive_training(catalog.libraries, testset, catalog)
    neighbors = cf.train_neighbors(
        training,
        measure=cfg.cf_measure,
        max_cooc=cfg.cf_max_cooccurrences,
        max_similarities_per_item=cfg.cf_max_similarities,
    )
    out = _out_dir(args)
    cf.write_neighbors(neighbors, out / "neighbors.tsv", header=artifact_header(cfg))
    edges = sum(len(v) for v in neighbors.values())
    print(f"{len(neighbors)} items, {edges} neighbor edges")
    return 0


def cmd_index(args) -> int:
    cfg = _experiment_config(args)
    catalog = _load_inputs(args)
    if getattr(args, "testset", None):
        testset = load_testset(_require_file(args.testset, "testset file"))
        articles = [catalog.articles[a] for a in testset.all_article_ids()]
    else:
        articles = list(catalog.articles.values())
    if "textrank_keyword" in cfg.content.fields_used:
        enrich_textrank(articles, cfg.textrank_top_n)
    built = build_index(articles, specs_for(cfg.content.fields_used))
    out = _out_dir(args)
    save_index(built, out / "index.json")
    print(f"indexed {len(articles)} articles over {len(built.fields)} fields")
    return 0


def cmd_recommend(args) -> int:
    cfg = _experiment_config(args)
    catalog = _load_inputs(args)
    testset = load_testset(_require_file(args.testset, "testset file"))
    neighbors = None
    if getattr(args, "neighbors", None):
        neighbors = cf.read_neighbors(_require_file(args.neighbors, "neighbors file"))
    elif cfg.recommender in ("cf", "hybrid") and not catalog.libraries:
        raise ConfigError(
            f"recommender {cfg.recommender} needs --neighbors or --libraries to train on"
        )
    run = harness.build_run(catalog, testset, cfg, neighbors=neighbors)
    qrels = make_qrels(testset)
    out = _out_dir(args)
    write_run(
        run,
        out / "run.txt",
        header=artifact_header(cfg, qrels_sha256=harness.qrels_hash(qrels)),
    )
    answered = sum(1 for results in run.results.values() if results)
    print(f"answered {answered}/{len(run.results)} queries")
    return 0


def cmd_evaluate(args) -> int:
    cfg = _experiment_config(args)
    run = read_run(_require_file(args.run, "run file"))
    qrels = read_qrels(_require_file(args.qrels, "qrels file"))
    ks = tuple(args.k) if args.k else cfg.eval_ks
    table = evaluate(run, qrels, ks)
    out = _out_dir(args)
    with open(out / "metrics.tsv", "w", encoding="utf-8") as handle:
        for line in artifact_header(cfg, qrels_sha256=harness.qrels_hash(qrels)):
            handle.write(f"# {line}\n")
        handle.write(table.to_tsv())
    print(table.to_pretty())
    return 0


def cmd_pipeline(args) -> int:
    cfg = _experiment_config(args)
    articles = _require_file(args.articles, "articles file")
    libraries = _require_file(args.libraries, "libraries file")
    result = run_pipeline(articles, libraries, cfg, args.out)
    print(result["metrics"].to_pretty())
    return 0


def cmd_compare(args) -> int:
    for path in args.metrics:
        _require_file(path, "metrics file")
    print(harness.compare_runs(args.metrics), end="")
    return 0


def _add_config_flags(parser, seed_required=False):
    parser.add_argument("--config", help="json file with experiment configuration")
    parser.add_argument("--seed", type=int, required=seed_required, help="rng seed")
    parser.add_argument("--fields", help="comma-separated metadata fields to use")
    parser.add_argument(
        "--variant", choices=("tfidf", "nq", "prf", "bm25c"), help="content variant"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scholarrec",
        description="Scientific-literature recommendation experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a catalog")
    p.add_argument("--articles", required=True)
    p.add_argument("--libraries")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--topics", type=int, default=5)
    p.add_argument("--articles-per-topic", type=int, default=15)
    p.add_argument("--users", type=int, default=200)
    p.add_argument("--topic-vocab", type=int, default=40)
    p.add_argument("--background-vocab", type=int, default=80)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("make-testset", help="build a scenario test set and qrels")
    p.add_argument("--articles", required=True)
    p.add_argument("--libraries")
    p.add_argument("--scenario", choices=SCENARIOS, required=True)
    p.add_argument("--sample-fraction", type=float, dest="sample_fraction")
    p.add_argument("--out", required=True)
    _add_config_flags(p, seed_required=True)
    p.set_defaults(func=cmd_make_testset)

    p = sub.add_parser("cf-train", help="train item neighbor lists")
    p.add_argument("--articles", required=True)
    p.add_argument("--libraries", required=True)
    p.add_argument("--testset", required=True)
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_cf_train)

    p = sub.add_parser("index", help="build and snapshot a content index")
    p.add_argument("--articles", required=True)
    p.add_argument("--testset")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("recommend", help="answer test queries with a recommender")
    p.add_argument("--articles", required=True)
    p.add_argument("--libraries")
    p.add_argument("--testset", required=True)
    p.add_argument("--recommender", choices=harness.RECOMMENDERS)
    p.add_argument("--neighbors", help="neighbors.tsv from cf-train")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("evaluate", help="score a run file against qrels")
    p.add_argument("--run", required=True)
    p.add_argument("--qrels", required=True)
    p.add_argument("--k", type=int, action="append", help="cutoff (repeatable)")
    p.add_argument("--out", required=True)
    _add_config_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="run every stage end to end")
    p.add_argument("--articles", required=True)
    p.add_argument("--libraries", required=True)
    p.add_argument("--scenario", choices=SCENARIOS)
    p.add_argument("--recommender", choices=harness.RECOMMENDERS)
    p.add_argument("--sample-fraction", type=float, dest="sample_fraction")
    p.add_argument("--out", required=True)
    _add_config_flags(p, seed_required=True)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("compare", help="side-by-side metrics comparison")
    p.add_argument("metrics", nargs="+")
    p.set_defaults(func=cmd_compare)

    return parser


_CATEGORIES = (
    (ConfigError, "config", 2),
    (FileNotFoundError, "config", 2),
    ((CorpusError, RunFormatError, ValueError, KeyError), "data", 3),
    (OSError, "io", 4),
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - single-line categorized exit
        for types, category, code in _CATEGORIES:
            if isinstance(exc, types):
                print(f"error: {category}: {exc}", file=sys.stderr)
                return code
        print(f"error: internal: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
