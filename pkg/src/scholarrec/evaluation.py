"""TREC-format run/qrels files and precision at k.

P@k uses a fixed denominator of k even when fewer results were returned,
matching the reference trec_eval tool. Two macro-averaging modes ship:

* ``all_queries``    — average over every qrels query, scoring queries the
  run never answered as 0 (trec_eval -c)
* ``answered_only``  — average only over queries with a nonempty result
  list (trec_eval default, where unanswered queries have no run lines)
"""

from dataclasses import dataclass, field

from .index import RankedList

Qrels = dict[str, set[str]]

MODES = ("all_queries", "answered_only")


class RunFormatError(ValueError):
    """Malformed run or qrels file."""


@dataclass
class RankedRun:
    results: dict[str, RankedList] = field(default_factory=dict)
    run_tag: str = "scholarrec"


def write_qrels(qrels: Qrels, path, header: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for line in header or []:
            handle.write(f"# {line}\n")
        for query in sorted(qrels):
            for doc in sorted(qrels[query]):
                handle.write(f"{query} 0 {doc} 1\n")


def read_qrels(path) -> Qrels:
    qrels: Qrels = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 4:
                raise RunFormatError(f"line {line_no}: expected qid 0 docid rel")
            query, _iter, doc, rel = parts
            try:
                relevant = int(rel) > 0
            except ValueError as exc:
                raise RunFormatError(f"line {line_no}: bad relevance {rel!r}") from exc
            qrels.setdefault(query, set())
            if relevant:
                qrels[query].add(doc)
    return qrels


def write_run(run: RankedRun, path, header: list[str] | None = None) -> None:
    """Lines ``qid Q0 docid rank score tag`` with 6-decimal scores."""
    with open(path, "w", encoding="utf-8") as handle:
        for line in header or []:
            handle.write(f"# {line}\n")
        for query in sorted(run.results):
            for rank, (doc, score) in enumerate(run.results[query], start=1):
                handle.write(f"{query} Q0 {doc} {rank} {score:.6f} {run.run_tag}\n")


def read_run(path) -> RankedRun:
    results: dict[str, RankedList] = {}
    tag = "scholarrec"
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 6:
                raise RunFormatError(
                    f"line {line_no}: expected qid Q0 docid rank score tag"
                )
            query, _q0, doc, rank_s, score_s, tag = parts
            try:
                rank = int(rank_s)
                score = float(score_s)
            except ValueError as exc:
                raise RunFormatError(f"line {line_no}: bad rank or score") from exc
            ranked = results.setdefault(query, [])
            if rank != len(ranked) + 1:
                raise RunFormatError(
                    f"line {line_no}: rank {rank} out of sequence for query {query}"
                )
            if ranked:
                prev_doc, prev_score = ranked[-1]
                if score > prev_score or (score == prev_score and doc <= prev_doc):
                    raise RunFormatError(
                        f"line {line_no}: ranking order violated for query {query}"
                    )
            ranked.append((doc, score))
    return RankedRun(results=results, run_tag=tag)


def precision_at_k(
    run: RankedRun, qrels: Qrels, k: int = 5, mode: str = "all_queries"
) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not qrels:
        raise ValueError("empty qrels")

    def per_query(query: str) -> float:
        top = run.results.get(query, [])[:k]
        hits = sum(1 for doc, _score in top if doc in qrels[query])
        return hits / k

    if mode == "all_queries":
        return sum(per_query(q) for q in qrels) / len(qrels)
    answered = [q for q in qrels if run.results.get(q)]
    if not answered:
        raise ValueError("no answered queries to average over")
    return sum(per_query(q) for q in answered) / len(answered)


@dataclass
class MetricsTable:
    rows: list[tuple[str, str, float]]
    n_queries: int
    n_answered: int

    def value(self, metric: str, mode: str) -> float:
        for name, row_mode, value in self.rows:
            if name == metric and row_mode == mode:
                return value
        raise KeyError((metric, mode))

    def to_tsv(self) -> str:
        lines = [f"{name}\t{mode}\t{value:.6f}" for name, mode, value in self.rows]
        lines.append(f"queries\ttotal\t{self.n_queries}")
        lines.append(f"queries\tanswered\t{self.n_answered}")
        return "\n".join(lines) + "\n"

    def to_pretty(self) -> str:
        width = max(len(name) for name, _m, _v in self.rows) if self.rows else 6
        lines = [f"{'metric':<{width}}  {'mode':<13}  value"]
        for name, mode, value in self.rows:
            lines.append(f"{name:<{width}}  {mode:<13}  {value:.4f}")
        lines.append(f"queries: {self.n_queries} total, {self.n_answered} answered")
        return "\n".join(lines)


def evaluate(run: RankedRun, qrels: Qrels, ks=(5,)) -> MetricsTable:
    """P@k under both modes for each k. The answered_only rows are omitted
    when the run answered nothing (the average would be undefined)."""
    answered = [q for q in qrels if run.results.get(q)]
    rows = []
    for k in ks:
        rows.append((f"P@{k}", "all_queries", precision_at_k(run, qrels, k, "all_queries")))
        if answered:
            rows.append(
                (f"P@{k}", "answered_only", precision_at_k(run, qrels, k, "answered_only"))
            )
    return MetricsTable(rows=rows, n_queries=len(qrels), n_answered=len(answered))
