import random

import pytest

from scholarrec.corpus import Article, UserLibrary


@pytest.fixture
def tiny_articles():
    return [
        Article(id="a1", title="Deep Learning Methods", abstract="neural networks learn representations"),
        Article(id="a2", title="Learning Graphs", abstract="graph mining and learning"),
        Article(id="a3", title="Database Systems", abstract="transactions and storage engines"),
    ]


def random_article(rng: random.Random, art_id: str, vocab: list[str]) -> Article:
    def words(n):
        return " ".join(rng.choice(vocab) for _ in range(n))

    return Article(
        id=art_id,
        title=words(rng.randint(3, 7)),
        abstract=words(rng.randint(10, 30)) if rng.random() < 0.8 else None,
        authors=[f"author {rng.randint(0, 9)}" for _ in range(rng.randint(0, 3))],
        tags=[rng.choice(vocab) for _ in range(rng.randint(0, 3))],
        keywords=[rng.choice(vocab) for _ in range(rng.randint(0, 3))],
        mesh_terms=[rng.choice(vocab) for _ in range(rng.randint(0, 2))],
    )


def random_corpus(seed: int, n_articles: int, vocab_size: int = 30) -> list[Article]:
    rng = random.Random(seed)
    vocab = [f"word{i}" for i in range(vocab_size)]
    return [random_article(rng, f"d{i:03d}", vocab) for i in range(n_articles)]


def random_libraries(seed: int, n_users: int, n_items: int, min_size: int = 2) -> list[UserLibrary]:
    rng = random.Random(seed)
    items = [f"i{j:03d}" for j in range(n_items)]
    libraries = []
    for u in range(n_users):
        size = rng.randint(min_size, max(min_size, n_items // 3))
        libraries.append(UserLibrary(f"u{u:03d}", set(rng.sample(items, size))))
    return libraries
