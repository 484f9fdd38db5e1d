"""Exact on-line chromatic number of tiny graphs by game-tree search.

The adversary picks, at each turn, any neighborhood among the presented
vertices that extends some induced embedding of the presented graph into the
target; the algorithm answers with a proper color. The observation graph
(presented graph plus colors) fully determines both players' options, so the
search is memoized on a canonical form of it, taken up to vertex permutation
and color renaming.
"""

from __future__ import annotations

from itertools import permutations, product

from .analysis import adjacency

DEFAULT_LIMIT = 7


class SolverLimitError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _refine(masks: tuple[int, ...], colors: tuple) -> list[list[int]]:
    """Ordered cells of an equitable-ish partition (1-WL over adjacency and same-color relations)."""
    t = len(masks)
    classes = {}
    for h in range(t):
        classes.setdefault(colors[h], []).append(h)
    same = [sum(1 << x for x in classes[colors[h]] if x != h) for h in range(t)]
    cell = [(bin(masks[h]).count("1"), len(classes[colors[h]])) for h in range(t)]
    while True:
        sig = [
            (
                cell[h],
                tuple(sorted(cell[x] for x in range(t) if masks[h] >> x & 1)),
                tuple(sorted(cell[x] for x in range(t) if same[h] >> x & 1)),
            )
            for h in range(t)
        ]
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(cell)):
            cell = new
            break
        cell = new
    cells: dict[int, list[int]] = {}
    for h in range(t):
        cells.setdefault(cell[h], []).append(h)
    return [cells[r] for r in sorted(cells)]


def canonical_form(masks: tuple[int, ...], colors: tuple) -> tuple:
    """Canonical key of a vertex-colored graph, invariant under relabeling vertices and colors."""
    cells = _refine(masks, colors)
    best = None
    for choice in product(*(permutations(c) for c in cells)):
        order = [h for part in choice for h in part]
        pos = {h: i for i, h in enumerate(order)}
        bits = 0
        for i, h in enumerate(order):
            for x in range(len(order)):
                if masks[h] >> x & 1 and pos[x] > i:
                    bits |= 1 << (pos[x] * (pos[x] - 1) // 2 + i)
        rename: dict = {}
        pattern = tuple(rename.setdefault(colors[h], len(rename)) for h in order)
        key = (bits, pattern)
        if best is None or key < best:
            best = key
    return (len(masks), best)


def online_chromatic_number(graph, budget: int | None = None, limit: int = DEFAULT_LIMIT) -> int:
    """Game value min_algorithm max_presentation of the number of colors used on ``graph``."""
    g = adjacency(graph)
    n = len(g)
    if n > limit:
        raise SolverLimitError(f"graph has {n} vertices; solver limit is {limit}")
    if budget is None:
        budget = max(n, 1)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if n == 0:
        return 0
    gmask = [sum(1 << u for u in g[v]) for v in range(n)]
    infinite = budget + 1
    memo: dict[tuple, int] = {}

    def value(masks: tuple[int, ...], colors: tuple[int, ...], embs: list[tuple[int, ...]]) -> int:
        t = len(colors)
        if t == n:
            return len(set(colors))
        key = canonical_form(masks, colors)
        if key in memo:
            return memo[key]
        moves: dict[int, list[tuple[int, ...]]] = {}
        for phi in embs:
            image = set(phi)
            for x in range(n):
                if x in image:
                    continue
                nb = 0
                for h, y in enumerate(phi):
                    if gmask[x] >> y & 1:
                        nb |= 1 << h
                moves.setdefault(nb, []).append(phi + (x,))
        used = set(colors)
        fresh = max(used, default=0) + 1
        worst = 0
        for nb, nxt in sorted(moves.items()):
            blocked = {colors[h] for h in range(t) if nb >> h & 1}
            options = sorted(used - blocked)
            if len(used) < budget:
                options.append(fresh)
            new_masks = tuple(m | (1 << t) if nb >> h & 1 else m for h, m in enumerate(masks)) + (nb,)
            best = infinite
            floor = len(used) + (0 if used - blocked else 1)
            for c in options:
                best = min(best, value(new_masks, colors + (c,), nxt))
                if best <= max(floor, worst):
                    break
            worst = max(worst, best)
            if worst >= infinite:
                break
        memo[key] = worst
        return worst

    result = value((), (), [()])
    if result > budget:
        raise BudgetExceeded(f"on-line chromatic number exceeds budget {budget}")
    return result
