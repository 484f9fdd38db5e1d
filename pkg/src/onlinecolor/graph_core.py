"""Online bipartite graphs and the level-component queries used by the colorers.

Vertices are dense integers equal to their arrival rank. Every vertex carries a
global side bit that is consistent inside each connected component; when a new
vertex merges components the smaller ones are flipped as needed.

A vertex colored with index ``i`` (any palette) belongs to every level ``>= i``.
``level_component(..., anchor=v, level=i)`` is the component of ``v`` in the
subgraph induced by the colored vertices of level at most ``i`` plus ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

PALETTES = ("A", "B", "C")


class Color(NamedTuple):
    palette: str
    index: int

    def __str__(self) -> str:
        return f"{self.palette.lower()}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Color":
        return make_color(text[0].upper(), int(text[1:]))


def make_color(palette: str, index: int) -> Color:
    if palette not in PALETTES:
        raise ValueError(f"unknown palette {palette!r}")
    if index < 1:
        raise ValueError(f"color index must be >= 1, got {index}")
    return Color(palette, index)


def color_index(color: Color | None) -> int | None:
    """Index of an ``a_i``/``b_i`` color; ``None`` for palette C or uncolored."""
    if color is None or color.palette == "C":
        return None
    return color.index


# PartialColoring: vertex id -> Color, only processed vertices are present.
PartialColoring = dict


class GraphError(ValueError):
    pass


class UnknownVertexError(GraphError):
    pass


class NotBipartiteError(GraphError):
    """The requested insertion would close an odd cycle."""


class OnlineBipartiteGraph:
    def __init__(self) -> None:
        self.adj: list[set[int]] = []
        self.side: list[int] = []
        self._comp: list[int] = []
        self._members: dict[int, list[int]] = {}

    def __len__(self) -> int:
        return len(self.adj)

    @property
    def n(self) -> int:
        return len(self.adj)

    def vertices(self) -> range:
        return range(len(self.adj))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in self.vertices() for u in sorted(self.adj[v]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def same_component(self, u: int, v: int) -> bool:
        return self._comp[u] == self._comp[v]

    def opposite(self, u: int, v: int) -> bool:
        return self.side[u] != self.side[v]

    def add_vertex(self, neighbors: Iterable[int]) -> int:
        nbrs = set(neighbors)
        n = len(self.adj)
        for u in nbrs:
            if not (isinstance(u, int) and 0 <= u < n):
                raise UnknownVertexError(f"unknown neighbor {u!r} (graph has {n} vertices)")

        # each touched component must present all of its neighbors on one side
        wanted: dict[int, int] = {}
        for u in nbrs:
            c = self._comp[u]
            if wanted.setdefault(c, self.side[u]) != self.side[u]:
                raise NotBipartiteError(
                    f"vertex {n} with neighbors {sorted(nbrs)} closes an odd cycle"
                )

        v = n
        self.adj.append(set(nbrs))
        for u in nbrs:
            self.adj[u].add(v)
        if not wanted:
            self._comp.append(v)
            self.side.append(0)
            self._members[v] = [v]
            return v

        comps = sorted(wanted, key=lambda c: -len(self._members[c]))
        keep = comps[0]
        vside = 1 - wanted[keep]
        self._comp.append(keep)
        self.side.append(vside)
        self._members[keep].append(v)
        for c in comps[1:]:
            flip = wanted[c] == vside
            for w in self._members.pop(c):
                self._comp[w] = keep
                if flip:
                    self.side[w] ^= 1
                self._members[keep].append(w)
        return v

    @classmethod
    def from_presentation(cls, presentation: Iterable[Iterable[int]]) -> "OnlineBipartiteGraph":
        g = cls()
        for nbrs in presentation:
            g.add_vertex(nbrs)
        return g

    def copy(self) -> "OnlineBipartiteGraph":
        g = OnlineBipartiteGraph()
        g.adj = [set(s) for s in self.adj]
        g.side = list(self.side)
        g._comp = list(self._comp)
        g._members = {c: list(m) for c, m in self._members.items()}
        return g


@dataclass(frozen=True)
class ComponentView:
    vertices: frozenset
    side1: frozenset
    side2: frozenset
    anchor: int

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def side_of(self, v: int) -> int:
        if v in self.side1:
            return 1
        if v in self.side2:
            return 2
        raise KeyError(v)


def _bfs_view(adj, anchor: int, allowed) -> ComponentView:
    """Component of ``anchor`` in the subgraph induced by ``allowed(w)`` vertices plus the anchor."""
    parity = {anchor: 0}
    queue = deque([anchor])
    while queue:
        x = queue.popleft()
        px = parity[x]
        for w in adj[x]:
            if w not in parity and allowed(w):
                parity[w] = px ^ 1
                queue.append(w)
    side1 = frozenset(w for w, p in parity.items() if p == 0)
    side2 = frozenset(w for w, p in parity.items() if p == 1)
    return ComponentView(side1 | side2, side1, side2, anchor)


def level_component(
    graph: OnlineBipartiteGraph,
    coloring: Mapping[int, Color],
    anchor: int,
    level: int,
    include_uncolored_anchor: bool = False,
    before: int | None = None,
) -> ComponentView:
    """C_level[anchor]: component among colored vertices of index <= level, plus the anchor.

    ``before`` restricts the view to vertices presented before that id, which
    replays the state at the moment vertex ``before`` arrived.
    """
    if not 0 <= anchor < graph.n:
        raise UnknownVertexError(f"unknown anchor {anchor!r}")
    anchor_colored = anchor in coloring and (before is None or anchor < before)
    if not anchor_colored and not include_uncolored_anchor:
        raise GraphError(f"anchor {anchor} is uncolored; pass include_uncolored_anchor=True")
    limit = graph.n if before is None else before

    def allowed(w: int) -> bool:
        if w >= limit:
            return False
        c = coloring.get(w)
        return c is not None and c.index <= level

    return _bfs_view(graph.adj, anchor, allowed)


def component_minus_anchor(graph: OnlineBipartiteGraph, view: ComponentView, anchor: int | None = None) -> list[ComponentView]:
    """Connected pieces of ``view`` with the anchor deleted, each anchored at its earliest vertex."""
    anchor = view.anchor if anchor is None else anchor
    if anchor not in view.vertices:
        raise GraphError(f"anchor {anchor} not in view")
    rest = view.vertices - {anchor}
    seen: set[int] = set()
    out = []
    for start in sorted(rest):
        if start in seen:
            continue
        piece = _bfs_view(graph.adj, start, rest.__contains__)
        seen |= piece.vertices
        out.append(piece)
    return out


def subcomponent_of(pieces: list[ComponentView], x: int) -> ComponentView:
    """C^x_i(v): the piece containing ``x``."""
    for piece in pieces:
        if x in piece.vertices:
            return piece
    raise KeyError(x)


def is_mixed(view: ComponentView, color: Color, coloring: Mapping[int, Color]) -> bool:
    return any(coloring.get(w) == color for w in view.side1) and any(
        coloring.get(w) == color for w in view.side2
    )


def is_universal(graph: OnlineBipartiteGraph, candidate: int, target) -> bool:
    """True iff ``candidate`` sees every target vertex on the side opposite to it.

    ``target`` may be a ComponentView or any iterable of vertex ids; it should
    lie in the candidate's component so that sides are comparable.
    """
    verts = target.vertices if isinstance(target, ComponentView) else target
    s = graph.side[candidate]
    nbrs = graph.adj[candidate]
    return all(w in nbrs for w in verts if graph.side[w] != s)


def bfs_two_coloring(adj) -> list[int] | None:
    """Plain BFS 2-coloring of an adjacency list; ``None`` if some component has an odd cycle."""
    n = len(adj)
    col = [-1] * n
    for s in range(n):
        if col[s] != -1:
            continue
        col[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for w in adj[x]:
                if col[w] == -1:
                    col[w] = col[x] ^ 1
                    queue.append(w)
                elif col[w] == col[x]:
                    return None
    return col
