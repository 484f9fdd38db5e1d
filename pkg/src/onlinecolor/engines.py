"""Online colorers sharing one step contract.

Each engine owns a :class:`ColorerState` and is driven by ``step(neighbors)``,
where ``neighbors`` are ids of previously presented vertices. Three engines are
registered for the CLI: ``bicolormax`` (three palettes a/b/c, the competitive
algorithm for P9-free bipartite graphs), ``firstfit`` and ``cbip``. A seeded
``random`` proper colorer exists for adversary testing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .graph_core import (
    Color,
    OnlineBipartiteGraph,
    PartialColoring,
    is_mixed,
    level_component,
)

B_BRANCH = "B-branch"
A_VIA_C = "A-via-c"
C_BRANCH = "C-branch"
A_DEFAULT = "A-default"
BRANCHES = (B_BRANCH, A_VIA_C, C_BRANCH, A_DEFAULT)


class ImproperColoringError(RuntimeError):
    pass


@dataclass
class ColorerState:
    graph: OnlineBipartiteGraph = field(default_factory=OnlineBipartiteGraph)
    coloring: PartialColoring = field(default_factory=dict)
    max_index_used: int = 0
    scratch: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Trace:
    m: int
    a_on_i2: bool
    c_on_i2: bool
    branch: str
    witness: tuple[int, int] | None = None  # (u, u') when the C-branch fires


@dataclass(frozen=True)
class StepOutcome:
    vertex: int
    color: Color
    trace: Trace | None = None

    @property
    def branch(self) -> str | None:
        return None if self.trace is None else self.trace.branch


def threshold_holds(m: int, j: int) -> bool:
    """``j >= m - sqrt(2m) + 2`` in exact integer arithmetic."""
    if m < 1 or j < 1:
        raise ValueError("m and j must be positive")
    d = m + 2 - j
    return d <= 0 or d * d <= 2 * m


def _record(state: ColorerState, v: int, color: Color) -> None:
    state.coloring[v] = color
    if color.index > state.max_index_used:
        state.max_index_used = color.index


def mixed_level(state: ColorerState, v: int) -> int:
    """Largest i with a_i mixed in C_i[v] (0 if none); scans downward from the max index used."""
    g, col = state.graph, state.coloring
    for i in range(state.max_index_used, 0, -1):
        if is_mixed(level_component(g, col, v, i, include_uncolored_anchor=True), Color("A", i), col):
            return i
    return 0


def _c_branch_witness(state: ColorerState, v: int, view, m: int, any_palette: bool) -> tuple[int, int] | None:
    g, col = state.graph, state.coloring
    if not view.side2:
        return None
    vside = g.side[v]
    i2_sorted = sorted(view.side2)
    inner = sorted(view.vertices - {v})
    pieces: dict[int, tuple[dict[int, int], dict[int, list[int]]]] = {}

    def level_pieces(level: int):
        # components of the level-`level` colored vertices inside C_m[v] - v
        if level not in pieces:
            label: dict[int, int] = {}
            members: dict[int, list[int]] = {}
            for s in inner:
                if s in label or col[s].index > level:
                    continue
                label[s] = s
                members[s] = [s]
                stack = [s]
                while stack:
                    x = stack.pop()
                    for w in g.adj[x]:
                        if w not in label and w != v and w in view.vertices and col[w].index <= level:
                            label[w] = s
                            members[s].append(w)
                            stack.append(w)
            pieces[level] = (label, members)
        return pieces[level]

    for u in inner:
        c = col[u]
        if c.palette == "C" and not any_palette:
            continue
        j = c.index
        if not threshold_holds(m, j):
            continue
        label, members = level_pieces(j - 1)
        # C_{j-1}[u] is u plus the level-(j-1) pieces touching u
        target = [u]
        for root in {label[w] for w in g.adj[u] if w in label}:
            target.extend(members[root])
        must_see = [w for w in target if g.side[w] == vside]
        for up in i2_sorted:
            nb = g.adj[up]
            if all(w in nb for w in must_see):
                return (u, up)
    return None


def bicolormax_step(state: ColorerState, neighbors: Iterable[int], any_palette_witness: bool = False) -> StepOutcome:
    v = state.graph.add_vertex(neighbors)
    col = state.coloring
    m = mixed_level(state, v) + 1
    view = level_component(state.graph, col, v, m, include_uncolored_anchor=True)
    i2_colors = {col[w] for w in view.side2}
    a_m, b_m, c_m = Color("A", m), Color("B", m), Color("C", m)
    a_on, c_on = a_m in i2_colors, c_m in i2_colors
    witness = None
    if a_on:
        color, branch = b_m, B_BRANCH
    elif c_on:
        color, branch = a_m, A_VIA_C
    else:
        witness = _c_branch_witness(state, v, view, m, any_palette_witness)
        if witness is not None:
            color, branch = c_m, C_BRANCH
        else:
            color, branch = a_m, A_DEFAULT
    _record(state, v, color)
    return StepOutcome(v, color, Trace(m, a_on, c_on, branch, witness))


def first_fit_step(state: ColorerState, neighbors: Iterable[int]) -> StepOutcome:
    v = state.graph.add_vertex(neighbors)
    used = {state.coloring[u].index for u in state.graph.adj[v]}
    c = 1
    while c in used:
        c += 1
    color = Color("A", c)
    _record(state, v, color)
    return StepOutcome(v, color)


def cbip_step(state: ColorerState, neighbors: Iterable[int]) -> StepOutcome:
    """Least color missing from the opposite side of v's current component."""
    g = state.graph
    v = g.add_vertex(neighbors)
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for w in g.adj[x]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    used = {state.coloring[w].index for w in seen if g.side[w] != g.side[v]}
    c = 1
    while c in used:
        c += 1
    color = Color("A", c)
    _record(state, v, color)
    return StepOutcome(v, color)


def random_step(state: ColorerState, neighbors: Iterable[int]) -> StepOutcome:
    """Uniform choice among admissible colors in 1..max_index_used+1."""
    rng = state.scratch.setdefault("rng", random.Random(state.scratch.get("seed", 0)))
    v = state.graph.add_vertex(neighbors)
    used = {state.coloring[u].index for u in state.graph.adj[v]}
    options = [c for c in range(1, state.max_index_used + 2) if c not in used]
    color = Color("A", rng.choice(options))
    _record(state, v, color)
    return StepOutcome(v, color)


STEPS: dict[str, Callable[..., StepOutcome]] = {
    "bicolormax": bicolormax_step,
    "firstfit": first_fit_step,
    "cbip": cbip_step,
    "random": random_step,
}
CLI_ENGINES = ("bicolormax", "firstfit", "cbip")


class Colorer:
    """An engine bound to its own state; ``step`` colors one new vertex."""

    def __init__(self, name: str, seed: int = 0, check: bool = True, **options) -> None:
        if name not in STEPS:
            raise ValueError(f"unknown engine {name!r}; expected one of {sorted(STEPS)}")
        self.name = name
        self.seed = seed
        self.check = check
        self.options = options
        self.state = ColorerState()
        self.state.scratch["seed"] = seed
        self.outcomes: list[StepOutcome] = []
        self._step = STEPS[name]

    def step(self, neighbors: Iterable[int]) -> Color:
        out = self._step(self.state, neighbors, **self.options)
        if self.check:
            col = self.state.coloring
            clash = [u for u in self.state.graph.adj[out.vertex] if col[u] == out.color]
            if clash:
                raise ImproperColoringError(
                    f"{self.name} gave vertex {out.vertex} color {out.color} shared with {clash}"
                )
        self.outcomes.append(out)
        return out.color

    @property
    def graph(self) -> OnlineBipartiteGraph:
        return self.state.graph

    @property
    def coloring(self) -> PartialColoring:
        return self.state.coloring


def make_engine(name: str, seed: int = 0, **options) -> Colorer:
    return Colorer(name, seed=seed, **options)


def run_colorer(engine: str | Colorer, presentation: Iterable[Iterable[int]], adversary: str = "replay", seed: int = 0):
    """Feed a fixed presentation to an engine and return the transcript."""
    from .transcript import transcript_from_colorer

    colorer = make_engine(engine, seed=seed) if isinstance(engine, str) else engine
    for nbrs in presentation:
        colorer.step(nbrs)
    return transcript_from_colorer(colorer, adversary=adversary, seed=seed)
