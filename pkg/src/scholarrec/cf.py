"""Item-based collaborative filtering over boolean user-article interactions.

Libraries with fewer than 2 or more than 1000 articles are dropped before
training. Co-occurrence counting is capped per item (top counts retained, a
pair survives if either endpoint retains it), then one of six similarity
measures scores the surviving pairs and per-item neighbor lists keep the
top K. Neighbor maps are exchanged as tsv: item, neighbor, score.
"""

import math
from dataclasses import dataclass

from .index import RankedList
from .runtime import parallel_map

MEASURES = (
    "cooccurrence",
    "cosine",
    "tanimoto",
    "loglikelihood",
    "cityblock",
    "euclidean",
)

MIN_LIBRARY_SIZE = 2
MAX_LIBRARY_SIZE = 1000
DEFAULT_MAX_COOCCURRENCES = 100
DEFAULT_MAX_SIMILARITIES = 100

NeighborMap = dict[str, RankedList]


@dataclass
class InteractionMatrix:
    item_users: dict[str, set[str]]
    n_users: int


def build_interactions(
    libraries,
    min_library_size: int = MIN_LIBRARY_SIZE,
    max_library_size: int = MAX_LIBRARY_SIZE,
) -> InteractionMatrix:
    kept = [
        lib
        for lib in libraries
        if min_library_size <= len(lib.article_ids) <= max_library_size
    ]
    item_users: dict[str, set[str]] = {}
    for lib in kept:
        for article_id in lib.article_ids:
            item_users.setdefault(article_id, set()).add(lib.user_id)
    return InteractionMatrix(item_users=item_users, n_users=len(kept))


def cooccurrence_counts(matrix: InteractionMatrix) -> dict[str, dict[str, int]]:
    """Pair counts |A n B| for all co-occurring item pairs, both directions."""
    user_items: dict[str, list[str]] = {}
    for item in sorted(matrix.item_users):
        for user in matrix.item_users[item]:
            user_items.setdefault(user, []).append(item)
    counts: dict[str, dict[str, int]] = {item: {} for item in matrix.item_users}
    for user in sorted(user_items):
        items = user_items[user]
        for i, a in enumerate(items):
            row = counts[a]
            for b in items[i + 1 :]:
                row[b] = row.get(b, 0) + 1
                counts[b][a] = counts[b].get(a, 0) + 1
    return counts


def cap_cooccurrences(
    matrix: InteractionMatrix, max_cooc: int = DEFAULT_MAX_COOCCURRENCES
) -> dict[str, dict[str, int]]:
    """Keep per item the max_cooc highest-count partners; a pair survives if
    either endpoint retains it."""
    if max_cooc < 1:
        raise ValueError("max_cooc must be >= 1")
    counts = cooccurrence_counts(matrix)
    retained = {
        item: set(sorted(row, key=lambda b: (-row[b], b))[:max_cooc])
        for item, row in counts.items()
    }
    capped: dict[str, dict[str, int]] = {}
    for item, row in counts.items():
        kept = {
            partner: count
            for partner, count in row.items()
            if partner in retained[item] or item in retained[partner]
        }
        capped[item] = kept
    return capped


def _loglikelihood_ratio(k11: int, k12: int, k21: int, k22: int) -> float:
    def entropy_term(x: int) -> float:
        return x * math.log(x) if x > 0 else 0.0

    total = k11 + k12 + k21 + k22
    g2 = 2.0 * (
        entropy_term(k11)
        + entropy_term(k12)
        + entropy_term(k21)
        + entropy_term(k22)
        - entropy_term(k11 + k12)
        - entropy_term(k21 + k22)
        - entropy_term(k11 + k21)
        - entropy_term(k12 + k22)
        + entropy_term(total)
    )
    return max(0.0, g2)


def similarity(measure: str, matrix: InteractionMatrix, a: str, b: str) -> float:
    if a not in matrix.item_users or b not in matrix.item_users:
        missing = a if a not in matrix.item_users else b
        raise KeyError(f"item {missing!r} absent from interaction matrix")
    users_a = matrix.item_users[a]
    users_b = matrix.item_users[b]
    c = len(users_a & users_b)
    na, nb = len(users_a), len(users_b)
    if measure == "cooccurrence":
        return float(c)
    if measure == "cosine":
        return c / math.sqrt(na * nb)
    if measure == "tanimoto":
        return c / (na + nb - c)
    if measure == "cityblock":
        return 1.0 / (1.0 + na + nb - 2 * c)
    if measure == "euclidean":
        return 1.0 / (1.0 + math.sqrt(na + nb - 2 * c))
    if measure == "loglikelihood":
        k11 = c
        k12 = nb - c
        k21 = na - c
        k22 = matrix.n_users - na - nb + c
        g2 = _loglikelihood_ratio(k11, k12, k21, k22)
        return 1.0 - 1.0 / (1.0 + g2)
    raise ValueError(f"unknown similarity measure {measure!r}")


def top_k_neighbors(
    matrix: InteractionMatrix,
    measure: str,
    max_similarities_per_item: int = DEFAULT_MAX_SIMILARITIES,
    capped: dict[str, dict[str, int]] | None = None,
    threads: int | None = None,
) -> NeighborMap:
    if capped is None:
        capped = cap_cooccurrences(matrix)
    items = sorted(capped)

    def score_item(item: str) -> RankedList:
        scored = [
            (partner, similarity(measure, matrix, item, partner))
            for partner in capped[item]
        ]
        scored.sort(key=lambda pair: (-pair[1], pair[0]))
        return scored[:max_similarities_per_item]

    results = parallel_map(score_item, items, threads=threads)
    return dict(zip(items, results))


def train_neighbors(
    libraries,
    measure: str = "loglikelihood",
    max_cooc: int = DEFAULT_MAX_COOCCURRENCES,
    max_similarities_per_item: int = DEFAULT_MAX_SIMILARITIES,
    threads: int | None = None,
) -> NeighborMap:
    """Full training pipeline: filter libraries, cap co-occurrences, score."""
    matrix = build_interactions(libraries)
    capped = cap_cooccurrences(matrix, max_cooc)
    return top_k_neighbors(
        matrix, measure, max_similarities_per_item, capped=capped, threads=threads
    )


def recommend_cf(
    neighbors: NeighborMap, query: str, candidates: set[str], k: int
) -> RankedList:
    """Neighbors of the query restricted to the candidate pool, top k."""
    ranked = neighbors.get(query, [])
    filtered = [(doc, score) for doc, score in ranked if doc in candidates]
    return filtered[:k]


def write_neighbors(neighbors: NeighborMap, path, header: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for line in header or []:
            handle.write(f"# {line}\n")
        for item in sorted(neighbors):
            for neighbor, score in neighbors[item]:
                handle.write(f"{item}\t{neighbor}\t{score:.6f}\n")


def read_neighbors(path) -> NeighborMap:
    neighbors: NeighborMap = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValueError(f"line {line_no}: expected item\\tneighbor\\tscore")
            item, neighbor, score = parts
            neighbors.setdefault(item, []).append((neighbor, float(score)))
    return neighbors
