from __future__ import annotations

from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from onlinecolor.analysis import is_pk_free
from onlinecolor.engines import make_engine

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def bipartite_presentations(draw, min_n: int = 0, max_n: int = 12):
    """An online bipartite presentation: each vertex sees a subset of earlier vertices on the other side."""
    n = draw(st.integers(min_n, max_n))
    sides = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    pres = []
    for v in range(n):
        others = [u for u in range(v) if sides[u] != sides[v]]
        chosen = draw(st.lists(st.sampled_from(others), unique=True)) if others else []
        pres.append(tuple(sorted(chosen)))
    return pres


@st.composite
def p9_free_presentations(draw, max_n: int = 12):
    pres = draw(bipartite_presentations(max_n=max_n))
    if len(pres) >= 9:
        assume(is_pk_free(adjacency_of(pres), 9))
    return pres


def adjacency_of(presentation) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in presentation]
    for v, nbrs in enumerate(presentation):
        for u in nbrs:
            adj[v].add(u)
            adj[u].add(v)
    return adj


def play(engine: str, presentation, seed: int = 0):
    c = make_engine(engine, seed=seed)
    for nbrs in presentation:
        c.step(nbrs)
    return c
