"""TextRank keyword extraction over a word co-occurrence graph.

Content words (tokenized, stop-word filtered) become nodes; words within a
sliding window of each other in the filtered sequence share an undirected,
unweighted edge. Scores come from the original damped random-walk recursion
(not the probability-normalized variant), so on a connected graph the scores
sum to the node count.
"""

from .textproc import remove_stopwords, tokenize

DAMPING = 0.85
MAX_ITERATIONS = 100
CONVERGENCE = 1e-6
WINDOW = 2


def cooccurrence_graph(words: list[str], window: int = WINDOW) -> dict[str, list[str]]:
    """Adjacency lists (sorted, deduplicated) for the sliding-window graph."""
    nodes = sorted(set(words))
    edges = set()
    for i, word in enumerate(words):
        for j in range(i + 1, min(i + window, len(words))):
            if words[j] != word:
                edges.add((min(word, words[j]), max(word, words[j])))
    adjacency = {node: set() for node in nodes}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    return {node: sorted(peers) for node, peers in adjacency.items()}


def pagerank_scores(
    adjacency: dict[str, list[str]],
    damping: float = DAMPING,
    max_iterations: int = MAX_ITERATIONS,
    convergence: float = CONVERGENCE,
) -> dict[str, float]:
    scores = {node: 1.0 for node in adjacency}
    for _ in range(max_iterations):
        updated = {}
        for node in adjacency:
            rank = sum(scores[peer] / len(adjacency[peer]) for peer in adjacency[node])
            updated[node] = (1.0 - damping) + damping * rank
        delta = max(abs(updated[n] - scores[n]) for n in adjacency)
        scores = updated
        if delta < convergence:
            break
    return scores


def textrank_keywords(abstract: str, top_n: int = 10, window: int = WINDOW) -> list[str]:
    """Top-n abstract words by TextRank score, ties broken lexicographically."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    words = remove_stopwords(tokenize(abstract))
    if not words:
        return []
    adjacency = cooccurrence_graph(words, window)
    scores = pagerank_scores(adjacency)
    ranked = sorted(scores, key=lambda w: (-scores[w], w))
    return ranked[:top_n]


def enrich_textrank(articles, top_n: int = 10) -> None:
    """Fill in derived keywords for every article that has an abstract."""
    for article in articles:
        if article.abstract:
            article.textrank_keywords = textrank_keywords(article.abstract, top_n)
