"""Game transcripts and their JSON-lines form.

File layout: the first line is a header object ``{"header": {...}}`` naming the
engine, adversary, parameter and seed; every following line is one step
``{"v", "neighbors", "palette", "index", "branch"}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .graph_core import Color, OnlineBipartiteGraph, make_color


class TranscriptError(ValueError):
    pass


class ReplayMismatch(TranscriptError):
    pass


@dataclass(frozen=True)
class Step:
    neighbors: tuple[int, ...]
    color: Color
    branch: str | None = None


@dataclass
class GameTranscript:
    steps: list[Step]
    engine: str
    adversary: str
    k: int | None = None
    seed: int = 0
    embedding: dict[int, int] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def colors(self) -> list[Color]:
        return [s.color for s in self.steps]

    @property
    def distinct_colors(self) -> int:
        return len(set(self.colors))

    @property
    def max_index(self) -> int:
        return max((s.color.index for s in self.steps), default=0)

    def presentation(self) -> list[tuple[int, ...]]:
        return [s.neighbors for s in self.steps]

    def graph(self) -> OnlineBipartiteGraph:
        return OnlineBipartiteGraph.from_presentation(self.presentation())

    def coloring(self) -> dict[int, Color]:
        return dict(enumerate(self.colors))


def transcript_from_colorer(colorer, adversary: str, k: int | None = None, seed: int | None = None) -> GameTranscript:
    adj = colorer.graph.adj
    steps = [
        Step(tuple(sorted(u for u in adj[o.vertex] if u < o.vertex)), o.color, o.branch)
        for o in colorer.outcomes
    ]
    return GameTranscript(steps, colorer.name, adversary, k, colorer.seed if seed is None else seed)


def dumps(t: GameTranscript) -> str:
    lines = [json.dumps({"header": {"engine": t.engine, "adversary": t.adversary, "k": t.k, "seed": t.seed}}, sort_keys=True)]
    for v, s in enumerate(t.steps):
        row = {"v": v, "neighbors": list(s.neighbors), "palette": s.color.palette, "index": s.color.index, "branch": s.branch}
        lines.append(json.dumps(row, sort_keys=True))
    return "\n".join(lines) + "\n"


def loads(text: str) -> GameTranscript:
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise TranscriptError("empty transcript")
    try:
        head = json.loads(rows[0])["header"]
        steps = []
        for expect, line in enumerate(rows[1:]):
            obj = json.loads(line)
            if obj["v"] != expect:
                raise TranscriptError(f"step {expect} has v={obj['v']}")
            nbrs = tuple(obj["neighbors"])
            if any(not isinstance(u, int) or not 0 <= u < expect for u in nbrs):
                raise TranscriptError(f"step {expect} references a non-earlier vertex")
            steps.append(Step(nbrs, make_color(obj["palette"], int(obj["index"])), obj.get("branch")))
    except (KeyError, TypeError, ValueError) as exc:
        raise TranscriptError(f"malformed transcript: {exc}") from exc
    return GameTranscript(steps, head["engine"], head["adversary"], head.get("k"), int(head.get("seed", 0)))


def write(t: GameTranscript, path: str | Path) -> None:
    Path(path).write_text(dumps(t))


def read(path: str | Path) -> GameTranscript:
    return loads(Path(path).read_text())


def replay(t: GameTranscript, **engine_options):
    """Re-run the recorded engine on the recorded presentation; raise on any color mismatch.

    Returns the fresh :class:`~onlinecolor.engines.Colorer`.
    """
    from .engines import make_engine

    colorer = make_engine(t.engine, seed=t.seed, **engine_options)
    for v, s in enumerate(t.steps):
        got = colorer.step(s.neighbors)
        if got != s.color:
            raise ReplayMismatch(f"vertex {v}: transcript says {s.color}, {t.engine} gives {got}")
    return colorer


def presentation_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    back: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        lo, hi = min(a, b), max(a, b)
        back[hi].append(lo)
    return [tuple(sorted(x)) for x in back]
