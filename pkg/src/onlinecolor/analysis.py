"""Checks on finished runs: properness, induced paths, and the structural
objects behind the competitiveness argument for ``bicolormax``.

Every structural query is evaluated at the moment its vertex arrived: queries
about ``v`` only see vertices presented before ``v`` (plus ``v`` itself).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Mapping

from .engines import A_DEFAULT, A_VIA_C, Colorer, Trace
from .forcing import RootedBipartiteGraph, build_xk, induced_match
from .graph_core import (
    Color,
    OnlineBipartiteGraph,
    color_index,
    component_minus_anchor,
    is_universal,
    level_component,
    subcomponent_of,
)
from .transcript import GameTranscript, replay, transcript_from_colorer


class StructureError(RuntimeError):
    """A structural guarantee failed: either the input is outside the hypothesis or the engine is wrong."""


class NotP9FreeError(StructureError):
    pass


def adjacency(graph) -> list:
    if isinstance(graph, (OnlineBipartiteGraph, RootedBipartiteGraph)):
        return list(graph.adj)
    if hasattr(graph, "adj") and not isinstance(graph, (list, tuple)):
        # networkx-style mapping of node -> neighbors with nodes 0..n-1
        return [set(graph.adj[v]) for v in range(len(graph))]
    return [set(a) for a in graph]


def check_proper(graph, coloring: Mapping[int, Color]) -> bool:
    adj = adjacency(graph)
    for v in range(len(adj)):
        if v not in coloring:
            raise ValueError(f"vertex {v} is uncolored")
    return all(coloring[u] != coloring[v] for v in range(len(adj)) for u in adj[v] if u < v)


def find_induced_path(graph, length: int, endpoint: int | None = None, within=None) -> list[int] | None:
    """Backtracking search for an induced path on ``length`` vertices.

    ``endpoint`` fixes the first vertex; ``within`` restricts the search to an
    induced subgraph given by a vertex set.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    adj = adjacency(graph)
    allowed = None if within is None else set(within)
    if endpoint is not None:
        if allowed is not None and endpoint not in allowed:
            return None
        starts = [endpoint]
    else:
        starts = sorted(allowed) if allowed is not None else range(len(adj))
    path: list[int] = []
    on_path: set[int] = set()

    def grow() -> bool:
        if len(path) == length:
            return True
        last = path[-1]
        for w in sorted(adj[last]):
            if w in on_path or (allowed is not None and w not in allowed):
                continue
            aw = adj[w]
            if any(p in aw for p in path[:-1]):
                continue
            path.append(w)
            on_path.add(w)
            if grow():
                return True
            path.pop()
            on_path.discard(w)
        return False

    for s in starts:
        path[:] = [s]
        on_path.clear()
        on_path.add(s)
        if grow():
            return list(path)
    return None


def is_pk_free(graph, k: int) -> bool:
    if k < 2:
        raise ValueError("k must be >= 2")
    return find_induced_path(graph, k) is None


@dataclass
class RunRecord:
    transcript: GameTranscript
    graph: OnlineBipartiteGraph
    coloring: dict[int, Color]
    traces: list[Trace | None]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_colorer(cls, colorer: Colorer, adversary: str = "replay", k: int | None = None) -> "RunRecord":
        t = transcript_from_colorer(colorer, adversary=adversary, k=k)
        return cls(t, colorer.graph, dict(colorer.coloring), [o.trace for o in colorer.outcomes])

    @classmethod
    def from_transcript(cls, t: GameTranscript) -> "RunRecord":
        colorer = replay(t)
        rec = cls.from_colorer(colorer, adversary=t.adversary, k=t.k)
        rec.transcript = t
        return rec

    def index(self, v: int) -> int | None:
        return color_index(self.coloring[v])

    def view_at_arrival(self, v: int, level: int, anchor: int | None = None, before: int | None = None):
        """C_level[anchor] as it looked when vertex ``before`` (default ``v``) arrived."""
        anchor = v if anchor is None else anchor
        before = v if before is None else before
        return level_component(self.graph, self.coloring, anchor, level, include_uncolored_anchor=True, before=before)


def children_of(run: RunRecord, v: int) -> tuple[int, int]:
    key = ("children", v)
    if key in run._cache:
        return run._cache[key]
    k = run.index(v)
    if k is None or k < 2:
        raise ValueError(f"vertex {v} ({run.coloring[v]}) has no a/b color index >= 2")
    view = run.view_at_arrival(v, k - 1)
    target = Color("A", k - 1)
    ones = [w for w in sorted(view.side1) if w != v and run.coloring[w] == target]
    twos = [w for w in sorted(view.side2) if run.coloring[w] == target]
    if not ones or not twos:
        raise StructureError(f"vertex {v} has index {k} but a_{k - 1} is not mixed in its level-{k - 1} component")
    x, y = ones[0], twos[0]
    pieces = component_minus_anchor(run.graph, view, v)
    if y in subcomponent_of(pieces, x).vertices:
        raise StructureError(f"children {x}, {y} of {v} share a component after deleting {v}")
    run._cache[key] = out = (min(x, y), max(x, y))
    return out


def grandchildren_of(run: RunRecord, v: int) -> tuple[int, int]:
    key = ("grandchildren", v)
    if key in run._cache:
        return run._cache[key]
    k = run.index(v)
    if k is None or k < 3:
        raise ValueError(f"vertex {v} ({run.coloring[v]}) needs color index >= 3")
    view = run.view_at_arrival(v, k - 1)
    pieces = component_minus_anchor(run.graph, view, v)
    for child in children_of(run, v):
        region = subcomponent_of(pieces, child).vertices | {v}
        if find_induced_path(run.graph, 5, endpoint=v, within=region) is None:
            run._cache[key] = out = children_of(run, child)
            return out
    raise NotP9FreeError(f"both child components of {v} hold an induced P5 ending at {v}")


# S-tree node: (vertex, subtrees); subtrees are empty at depth limit or below index 3
def s_tree(run: RunRecord, v: int, i: int) -> tuple:
    if i < 1:
        raise ValueError("i must be >= 1")
    k = run.index(v)
    if i == 1 or k is None or k < 3:
        return (v, ())
    g1, g2 = grandchildren_of(run, v)
    return (v, (s_tree(run, g1, i - 1), s_tree(run, g2, i - 1)))


def _walk(tree):
    yield tree
    for sub in tree[1]:
        yield from _walk(sub)


def s_set(run: RunRecord, v: int, i: int) -> set[int]:
    return {node[0] for node in _walk(s_tree(run, v, i))}


def incomplete_pairs(run: RunRecord, v: int, i: int):
    """Ancestor/descendant pairs of S_i(v) on opposite sides that are not adjacent, in DFS order."""
    g = run.graph
    for node in _walk(s_tree(run, v, i)):
        u = node[0]
        for sub in node[1]:
            for desc in _walk(sub):
                w = desc[0]
                if g.opposite(u, w) and not g.has_edge(u, w):
                    yield (u, w)


def is_complete_s(run: RunRecord, v: int, i: int) -> bool:
    return next(incomplete_pairs(run, v, i), None) is None


def assemble_full_tree(run: RunRecord, tree, i: int) -> tuple[int, ...]:
    """Mapping of X_i (``build_xk`` numbering) onto a complete S-tree rooted at ``tree[0]``."""
    v, subs = tree
    if i == 1:
        return (v,)
    if len(subs) != 2:
        raise StructureError(f"S-tree at {v} is too shallow for X_{i}")
    g = run.graph
    if i == 2:
        far = [s[0] for s in subs if g.opposite(v, s[0])]
        return (far[0], v)
    a, b = subs
    if g.opposite(v, b[0]):
        a, b = b, a
    return assemble_full_tree(run, a, i - 1) + assemble_full_tree(run, b, i - 1) + (v,)


@dataclass(frozen=True)
class WitnessMap:
    k: int
    mapping: tuple[int, ...]  # vertex of build_xk(k) -> graph vertex
    anchor: int | None = None

    @property
    def root(self) -> int:
        return self.mapping[build_xk(self.k).root]


def verify_witness(graph, witness: WitnessMap) -> bool:
    adj = adjacency(graph)
    if any(not 0 <= x < len(adj) for x in witness.mapping):
        return False
    return induced_match(adj, build_xk(witness.k), witness.mapping)


def _universal_neighbor(run: RunRecord, x: int, y: int) -> int:
    """A neighbor of x inside C^y_{i-1}(x) universal to C_{j-1}[y], both taken when x arrived."""
    g = run.graph
    i, j = run.index(x), run.index(y)
    view = run.view_at_arrival(x, i - 1)
    pieces = component_minus_anchor(g, view, x)
    try:
        piece = subcomponent_of(pieces, y)
    except KeyError:
        raise StructureError(f"descendant {y} is outside the level-{i - 1} component of {x}") from None
    target = run.view_at_arrival(y, j - 1, anchor=y, before=x)
    for r in sorted(g.adj[x]):
        if r in piece.vertices and is_universal(g, r, target):
            return r
    raise StructureError(f"no neighbor of {x} in the component of {y} is universal to C_{j - 1}[{y}]")


def _anchor_pair(run: RunRecord, v: int, s: int) -> tuple[int, int]:
    """(z, z'): z' on v's side, universal to C_{l-1}[z], with z of large index."""
    k = run.index(v)
    trace = run.traces[v]
    if trace is None:
        raise ValueError("witness extraction needs a bicolormax run")
    if trace.branch == A_VIA_C:
        view = run.view_at_arrival(v, k)
        c_k = Color("C", k)
        holders = [u for u in sorted(view.side2) if run.coloring[u] == c_k]
        if not holders or run.traces[holders[0]].witness is None:
            raise StructureError(f"{v} took a_{k} via c_{k} but no stored c-witness is available")
        return run.traces[holders[0]].witness
    if trace.branch == A_DEFAULT:
        pair = next(incomplete_pairs(run, v, s), None)
        if pair is None:
            raise StructureError(f"S_{s}({v}) unexpectedly complete")
        x, y = pair
        return (y, _universal_neighbor(run, x, y))
    raise StructureError(f"vertex {v} has branch {trace.branch}, not an a-color branch")


def _witness(run: RunRecord, v: int, s: int) -> tuple[int, ...]:
    key = ("witness", v, s)
    if key in run._cache:
        return run._cache[key]
    if s <= 1:
        return (v,)
    tree = s_tree(run, v, s)
    if is_complete_s(run, v, s):
        out = assemble_full_tree(run, tree, s)
    else:
        g = run.graph
        z, zp = _anchor_pair(run, v, s)
        if g.opposite(zp, v):
            raise StructureError(f"universal vertex {zp} for {v} lies on the wrong side")
        z1, z2 = children_of(run, z)
        if s == 2:
            far = z1 if g.opposite(zp, z1) else z2
            out = (far, zp)
        else:
            lvl = run.index(z) - 1
            if isqrt(lvl // 2) < s - 1:
                raise StructureError(f"index of {z} too small to host X_{s - 1}")
            m1, m2 = _witness(run, z1, s - 1), _witness(run, z2, s - 1)
            if not g.opposite(zp, z1):
                m1, m2 = m2, m1
            out = m1 + m2 + (zp,)
    run._cache[key] = out
    return out


def witness_level(k: int) -> int:
    """floor(sqrt(k/2)) exactly."""
    return isqrt(k // 2)


def extract_x_witness(run: RunRecord, v: int) -> WitnessMap:
    """An induced X_{floor(sqrt(k/2))} inside C_k[v] whose root shares v's side (v colored a_k)."""
    c = run.coloring[v]
    if c.palette != "A" or c.index < 2:
        raise ValueError(f"vertex {v} must be colored a_k with k >= 2, got {c}")
    s = witness_level(c.index)
    return WitnessMap(s, _witness(run, v, s), anchor=v)


@dataclass
class TheoremReport:
    k: int  # largest index over all palettes
    k_ab: int  # largest a/b color index
    colors: int
    colors_ok: bool
    witness_ok: bool
    bound_ok: bool
    witness: WitnessMap | None = None
    checked: list[int] = field(default_factory=list)
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.colors_ok and self.witness_ok and self.bound_ok


def check_witness_for(run: RunRecord, v: int) -> WitnessMap:
    """Extract and fully validate the witness for an a_k vertex; raise StructureError on any defect."""
    w = extract_x_witness(run, v)
    if not verify_witness(run.graph, w):
        raise StructureError(f"witness for {v} is not an induced X_{w.k}: {w.mapping}")
    g = run.graph
    if g.opposite(w.root, v):
        raise StructureError(f"witness root {w.root} is not on the side of {v}")
    region = run.view_at_arrival(v, run.index(v)).vertices
    if not set(w.mapping) <= region:
        raise StructureError(f"witness for {v} leaves C_k[{v}]")
    return w


def theorem_consistency(run: RunRecord, every_vertex: bool = False) -> TheoremReport:
    """Color-count, witness and bound legs of the competitiveness argument for one run.

    A ``c_m`` color can appear while no ``a_m``/``b_m`` does, so the witness is
    taken at the largest a/b index ``k_ab`` (an ``a_{k_ab}`` vertex always
    exists) while the color count is compared against both ``3k`` and
    ``3k_ab + 1``.
    """
    if run.transcript.engine != "bicolormax":
        raise ValueError("theorem_consistency applies to bicolormax runs only")
    k = max((c.index for c in run.coloring.values()), default=0)
    k_ab = max((c.index for c in run.coloring.values() if c.palette != "C"), default=0)
    colors = len(set(run.coloring.values()))
    rep = TheoremReport(k, k_ab, colors, colors <= 3 * k and colors <= 3 * k_ab + 1 and k <= k_ab + 1, True, True)
    if not rep.colors_ok:
        rep.failure = f"{colors} colors with max index {k} and a/b index {k_ab}"
    if k_ab >= 2:
        tops = [v for v in sorted(run.coloring) if run.coloring[v] == Color("A", k_ab)]
        if not tops:
            rep.witness_ok = False
            rep.failure = f"a/b index {k_ab} used but no vertex colored a_{k_ab}"
        for v in tops if every_vertex else tops[:1]:
            try:
                w = check_witness_for(run, v)
            except StructureError as exc:
                rep.witness_ok = False
                rep.failure = f"vertex {v}: {exc}"
                break
            rep.checked.append(v)
            if rep.witness is None:
                rep.witness = w
    if k_ab >= 1:
        rep.bound_ok = 3 * k <= 6 * (witness_level(k_ab) + 1) ** 2
    return rep
