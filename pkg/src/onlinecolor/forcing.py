"""The rooted family X_k, embeddings of smaller members, and adaptive adversaries.

Vertex numbering of ``build_xk(k)`` for k >= 3: ids ``[0, n)`` are the first
copy of X_{k-1}, ``[n, 2n)`` the second copy, and ``2n`` is the root. X_1 is the
single vertex 0; X_2 is the edge 0-1 with root 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .engines import Colorer, make_engine
from .transcript import GameTranscript, transcript_from_colorer


@dataclass(frozen=True)
class RootedBipartiteGraph:
    adj: tuple[frozenset, ...]
    root: int
    root_side: frozenset
    non_root_side: frozenset

    @property
    def n(self) -> int:
        return len(self.adj)

    def vertices(self) -> range:
        return range(len(self.adj))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in self.vertices() for u in sorted(self.adj[v]) if u < v]


@lru_cache(maxsize=None)
def build_xk(k: int) -> RootedBipartiteGraph:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        return RootedBipartiteGraph((frozenset(),), 0, frozenset({0}), frozenset())
    if k == 2:
        return RootedBipartiteGraph((frozenset({1}), frozenset({0})), 1, frozenset({1}), frozenset({0}))
    sub = build_xk(k - 1)
    n = sub.n
    root = 2 * n
    adj = [set(a) for a in sub.adj] + [{u + n for u in a} for a in sub.adj] + [set()]
    hooks = list(sub.root_side) + [u + n for u in sub.non_root_side]
    for u in hooks:
        adj[u].add(root)
        adj[root].add(u)
    root_side = {root} | set(sub.non_root_side) | {u + n for u in sub.root_side}
    non_root = set(sub.root_side) | {u + n for u in sub.non_root_side}
    return RootedBipartiteGraph(tuple(frozenset(a) for a in adj), root, frozenset(root_side), frozenset(non_root))


def xk_size(k: int) -> int:
    return 1 if k == 1 else 3 * 2 ** (k - 2) - 1


@dataclass(frozen=True)
class EmbeddedCopy:
    level: int
    mapping: tuple[int, ...]  # abstract X_level id -> host X_k id
    alpha: int


@dataclass(frozen=True)
class EmbeddingPlan:
    k: int
    alpha: tuple[int, ...]
    copies: tuple[EmbeddedCopy, ...]  # copies[i-1] is Y_i


def embed_copies(k: int, alpha: Sequence[int]) -> EmbeddingPlan:
    """Disjoint, mutually non-adjacent induced copies Y_1..Y_{k-1} inside X_k.

    The root of Y_i lies on the root side of X_k exactly when ``alpha[i-1] == 1``.
    """
    if k < 2:
        raise ValueError("embedding needs k >= 2")
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != k - 1 or any(a not in (0, 1) for a in alpha):
        raise ValueError(f"alpha must be a 0/1 sequence of length {k - 1}")
    found: dict[int, tuple[int, ...]] = {}

    def place(level: int, bits: tuple[int, ...], host: tuple[int, ...]) -> None:
        # host maps ids of an abstract X_level onto X_k ids
        if level == 2:
            found[1] = (host[1],) if bits[0] == 1 else (host[0],)
            return
        n = xk_size(level - 1)
        first, second = host[:n], host[n : 2 * n]
        if bits[-1] == 0:
            found[level - 1] = first
            place(level - 1, bits[:-1], second)
        else:
            found[level - 1] = second
            place(level - 1, tuple(1 - b for b in bits[:-1]), first)

    place(k, alpha, tuple(range(xk_size(k))))
    copies = tuple(EmbeddedCopy(i, found[i], alpha[i - 1]) for i in range(1, k))
    return EmbeddingPlan(k, alpha, copies)


def induced_match(host_adj, small: RootedBipartiteGraph, mapping: Sequence[int]) -> bool:
    """True iff ``mapping`` is an injective induced isomorphism of ``small`` into the host."""
    if len(mapping) != small.n or len(set(mapping)) != len(mapping):
        return False
    for a in small.vertices():
        for b in range(a + 1, small.n):
            if (b in small.adj[a]) != (mapping[b] in host_adj[mapping[a]]):
                return False
    return True


def verify_embedding(xk: RootedBipartiteGraph, plan: EmbeddingPlan) -> bool:
    used: set[int] = set()
    owner: dict[int, int] = {}
    for copy in plan.copies:
        small = build_xk(copy.level)
        if any(not 0 <= x < xk.n for x in copy.mapping):
            return False
        if not induced_match(xk.adj, small, copy.mapping):
            return False
        if (copy.mapping[small.root] in xk.root_side) != (copy.alpha == 1):
            return False
        image = set(copy.mapping)
        if image & used:
            return False
        used |= image
        for x in image:
            owner[x] = copy.level
    for x, lvl in owner.items():
        if any(owner.get(y, lvl) != lvl for y in xk.adj[x]):
            return False
    return True


class _Game:
    def __init__(self, engine: Colorer) -> None:
        self.engine = engine

    def present(self, neighbors) -> tuple[int, object]:
        color = self.engine.step(sorted(neighbors))
        return self.engine.graph.n - 1, color

    def color(self, v: int):
        return self.engine.coloring[v]


def _pick_representatives(game: _Game, parts: list[list[int]]) -> list[int]:
    """Greedy distinct representatives: part i (forced i+1 colors) yields one vertex of a fresh color."""
    taken: set = set()
    picks = []
    for i, part in enumerate(parts, 1):
        for v in sorted(part):
            c = game.color(v)
            if c not in taken:
                taken.add(c)
                picks.append(v)
                break
        else:
            raise RuntimeError(f"copy {i} offers no unused color; engine used too few colors on it")
    return picks


def _force_xk(game: _Game, k: int) -> dict[int, int]:
    """Play X_k on fresh vertices; return presented id -> abstract X_k vertex."""
    if k == 1:
        v, _ = game.present(())
        return {v: 0}
    parts = [_force_xk(game, i) for i in range(1, k)]
    picks = _pick_representatives(game, [list(p) for p in parts])
    alpha = []
    for i, (part, v) in enumerate(zip(parts, picks), 1):
        alpha.append(1 if part[v] in build_xk(i).non_root_side else 0)
    plan = embed_copies(k, alpha)
    xk = build_xk(k)
    emb: dict[int, int] = {}
    for part, copy in zip(parts, plan.copies):
        for p, a in part.items():
            emb[p] = copy.mapping[a]
    root, _ = game.present([p for p, x in emb.items() if x in xk.non_root_side])
    emb[root] = xk.root
    return emb


def _as_engine(engine: str | Colorer, seed: int) -> Colorer:
    return make_engine(engine, seed=seed) if isinstance(engine, str) else engine


def adversary_force(k: int, engine: str | Colorer, seed: int = 0) -> GameTranscript:
    """Force at least k colors while presenting an induced subgraph of X_k on 2^(k-1) vertices.

    The returned transcript carries ``embedding``: presented id -> vertex of ``build_xk(k)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    colorer = _as_engine(engine, seed)
    emb = _force_xk(_Game(colorer), k)
    t = transcript_from_colorer(colorer, adversary="xk", k=k)
    t.embedding = emb
    return t


def crown_presentation(pairs: int) -> list[tuple[int, ...]]:
    """u_1, w_1, ..., u_p, w_p with u_i ~ w_j and w_i ~ u_j for j < i."""
    if pairs < 1:
        raise ValueError("pairs must be >= 1")
    pres = []
    for i in range(pairs):
        pres.append(tuple(2 * j + 1 for j in range(i)))  # u_i sees earlier w's
        pres.append(tuple(2 * j for j in range(i)))  # w_i sees earlier u's
    return pres


def _force_tree(game: _Game, k: int) -> list[int]:
    if k == 1:
        v, _ = game.present(())
        return [v]
    parts = [_force_tree(game, i) for i in range(1, k)]
    picks = _pick_representatives(game, parts)
    v, _ = game.present(picks)
    return [x for p in parts for x in p] + [v]


def forest_adversary(k: int, engine: str | Colorer, seed: int = 0) -> GameTranscript:
    """Binomial-tree strategy: a tree on 2^(k-1) vertices forcing k colors."""
    if k < 1:
        raise ValueError("k must be >= 1")
    colorer = _as_engine(engine, seed)
    _force_tree(_Game(colorer), k)
    return transcript_from_colorer(colorer, adversary="forest", k=k)


def crown_game(pairs: int, engine: str | Colorer, seed: int = 0) -> GameTranscript:
    colorer = _as_engine(engine, seed)
    for nbrs in crown_presentation(pairs):
        colorer.step(nbrs)
    return transcript_from_colorer(colorer, adversary="crown", k=pairs)
