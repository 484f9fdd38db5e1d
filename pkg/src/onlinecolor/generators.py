"""Seeded random presentations for stress runs."""

from __future__ import annotations

import random

from .analysis import is_pk_free
from .transcript import presentation_from_edges


def _present(n: int, edges, rng: random.Random) -> list[tuple[int, ...]]:
    order = list(range(n))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    return presentation_from_edges(n, [(rank[a], rank[b]) for a, b in edges])


def random_bipartite_edges(n: int, p: float, rng: random.Random) -> list[tuple[int, int]]:
    left = rng.randint(1, max(1, n - 1)) if n > 1 else 1
    return [(a, b) for a in range(left) for b in range(left, n) if rng.random() < p]


def random_bipartite_presentation(n: int, p: float, rng: random.Random, p9_free: bool = False, max_tries: int = 10_000):
    """Random bipartite graph with cross edges of probability ``p``, shown in a random order.

    With ``p9_free`` the draw is repeated until the graph has no induced P9.
    """
    for _ in range(max_tries):
        edges = random_bipartite_edges(n, p, rng)
        pres = _present(n, edges, rng)
        if not p9_free or n < 9 or is_pk_free(_adj(n, edges), 9):
            return pres
    raise RuntimeError(f"no P9-free sample after {max_tries} draws (n={n}, p={p})")


def random_forest_presentation(n: int, rng: random.Random, tree_prob: float = 0.85) -> list[tuple[int, ...]]:
    """Random forest: each vertex after the first attaches to an earlier one with ``tree_prob``."""
    edges = [(rng.randrange(v), v) for v in range(1, n) if rng.random() < tree_prob]
    return _present(n, edges, rng)


def crown_edges(pairs: int) -> list[tuple[int, int]]:
    return [(i, pairs + j) for i in range(pairs) for j in range(pairs) if i != j]


def random_crown_presentation(pairs: int, rng: random.Random) -> list[tuple[int, ...]]:
    return _present(2 * pairs, crown_edges(pairs), rng)


def _adj(n: int, edges) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def p9_free_sample(seed: int, n_max: int = 14) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    p = rng.uniform(0.1, 0.7)
    return random_bipartite_presentation(n, p, rng, p9_free=True)
