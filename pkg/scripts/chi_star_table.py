"""Exact on-line chromatic numbers of tiny bipartite graphs next to what the engines pay.

    python scripts/chi_star_table.py

For each graph: the game value, the colors adversary_force(k) extracts from
each engine (X_k only), and each engine's worst case over all presentation
orders. The game value must sit between the forced count and every worst case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from onlinecolor.engines import CLI_ENGINES, run_colorer
from onlinecolor.forcing import adversary_force, build_xk
from onlinecolor.generators import crown_edges
from onlinecolor.solver import online_chromatic_number
from onlinecolor.transcript import presentation_from_edges


def _adj(n, edges):
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _path(n):
    return _adj(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n):
    return _adj(n, [(i, (i + 1) % n) for i in range(n)])


@dataclass
class TableConfig:
    graphs: dict = field(
        default_factory=lambda: {
            "K1": [set()],
            "K2": _path(2),
            "P3": _path(3),
            "P4": _path(4),
            "P5": _path(5),
            "P6": _path(6),
            "P7": _path(7),
            "C4": _cycle(4),
            "C6": _cycle(6),
            "K3,3": _adj(6, [(a, b) for a in range(3) for b in range(3, 6)]),
            "crown3": _adj(6, crown_edges(3)),
            "X2": [set(a) for a in build_xk(2).adj],
            "X3": [set(a) for a in build_xk(3).adj],
        }
    )


def worst_case(engine, adj):
    n = len(adj)
    edges = [(a, b) for a in range(n) for b in adj[a] if a < b]
    worst = 0
    for order in permutations(range(n)):
        rank = {v: i for i, v in enumerate(order)}
        worst = max(worst, run_colorer(engine, presentation_from_edges(n, [(rank[a], rank[b]) for a, b in edges])).distinct_colors)
    return worst


def run(cfg: TableConfig) -> None:
    print("\t".join(["graph", "n", "chi*", "forced"] + [f"worst:{e}" for e in CLI_ENGINES]))
    for name, adj in cfg.graphs.items():
        value = online_chromatic_number(adj)
        forced = "-"
        if name.startswith("X"):
            k = int(name[1:])
            forced = str(min(adversary_force(k, e).distinct_colors for e in CLI_ENGINES))
        worst = [worst_case(e, adj) for e in CLI_ENGINES]
        print("\t".join(map(str, [name, len(adj), value, forced] + worst)), flush=True)


if __name__ == "__main__":
    run(TableConfig())
