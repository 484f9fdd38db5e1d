from dataclasses import replace
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from onlinecolor.analysis import check_proper, is_pk_free
from onlinecolor.engines import make_engine
from onlinecolor.forcing import (
    EmbeddedCopy,
    adversary_force,
    build_xk,
    crown_game,
    crown_presentation,
    embed_copies,
    forest_adversary,
    induced_match,
    verify_embedding,
    xk_size,
)
from onlinecolor.graph_core import bfs_two_coloring

ENGINES = ("bicolormax", "firstfit", "cbip", "random")


def sizes_by_recursion(k):
    """(|X_k|, root-side size) from r_k = 1 + r_{k-1} + s_{k-1}, s_k = |X_{k-1}|."""
    if k == 1:
        return 1, 1
    if k == 2:
        return 2, 1
    n, r = sizes_by_recursion(k - 1)
    return 2 * n + 1, 1 + r + (n - r)


def is_forest(adj):
    n = len(adj)
    edges = sum(len(a) for a in adj) // 2
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u in range(n):
        for w in adj[u]:
            if u < w:
                a, b = find(u), find(w)
                if a != b:
                    parent[a] = b
                    comps -= 1
    return edges == n - comps


class TestBuildXk:
    def test_x1(self):
        x = build_xk(1)
        assert x.n == 1 and x.root_side == {x.root} and not x.non_root_side

    def test_x2_is_an_edge(self):
        x = build_xk(2)
        assert x.n == 2 and len(x.edges) == 1

    def test_x3(self):
        x = build_xk(3)
        assert x.n == 5 and len(x.root_side) == 3 and len(x.non_root_side) == 2
        assert len(x.adj[x.root]) == 2

    def test_x4(self):
        x = build_xk(4)
        assert x.n == 11 and len(x.adj[x.root]) == 5

    @pytest.mark.parametrize("k", range(1, 13))
    def test_sizes_and_sides(self, k):
        x = build_xk(k)
        n, r = sizes_by_recursion(k)
        assert x.n == n == xk_size(k)
        assert len(x.root_side) == r
        if k >= 2:
            assert len(x.non_root_side) == build_xk(k - 1).n

    @pytest.mark.parametrize("k", range(1, 11))
    def test_structure_invariants(self, k):
        x = build_xk(k)
        parity = bfs_two_coloring(x.adj)
        assert parity is not None
        assert len({parity[v] for v in x.vertices()}) == (1 if k == 1 else 2)
        assert all(parity[v] == parity[x.root] for v in x.root_side)
        assert x.adj[x.root] == x.non_root_side
        assert x.root_side | x.non_root_side == set(x.vertices())

    @pytest.mark.parametrize("k", range(1, 6))
    def test_p6_free(self, k):
        assert is_pk_free(build_xk(k).adj, 6)

    def test_rejects_k0(self):
        with pytest.raises(ValueError):
            build_xk(0)


class TestEmbedCopies:
    def test_k2_examples(self):
        x = build_xk(2)
        assert embed_copies(2, (1,)).copies[0].mapping == (x.root,)
        assert embed_copies(2, (0,)).copies[0].mapping == (0,)

    @pytest.mark.parametrize("k", range(2, 7))
    def test_all_sequences_verify(self, k):
        x = build_xk(k)
        for alpha in product((0, 1), repeat=k - 1):
            plan = embed_copies(k, alpha)
            assert [c.level for c in plan.copies] == list(range(1, k))
            assert verify_embedding(x, plan)

    def test_overlapping_images_rejected(self):
        x = build_xk(4)
        plan = embed_copies(4, (0, 0, 0))
        y1 = plan.copies[0]
        clash = EmbeddedCopy(1, (plan.copies[1].mapping[0],), 1 if plan.copies[1].mapping[0] in x.root_side else 0)
        assert not verify_embedding(x, replace(plan, copies=(clash,) + plan.copies[1:]))
        assert verify_embedding(x, replace(plan, copies=(y1,) + plan.copies[1:]))

    def test_flipped_orientation_rejected(self):
        x = build_xk(4)
        plan = embed_copies(4, (1, 0, 1))
        bad = replace(plan.copies[2], alpha=1 - plan.copies[2].alpha)
        assert not verify_embedding(x, replace(plan, copies=plan.copies[:2] + (bad,)))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            embed_copies(4, (0, 1))

    def test_induced_match_detects_missing_and_extra_edges(self):
        x3 = build_xk(3)
        x4 = build_xk(4)
        assert induced_match(x3.adj, x3, tuple(range(5)))
        swapped = (1, 0, 2, 3, 4)
        assert not induced_match(x3.adj, x3, swapped)
        assert not induced_match(x4.adj, x3, (0, 1, 2, 2, 4))


class TestAdversaryForce:
    @pytest.mark.parametrize("engine", ENGINES)
    def test_small_examples(self, engine):
        t1 = adversary_force(1, engine)
        assert t1.n == 1 and t1.distinct_colors == 1
        t2 = adversary_force(2, engine)
        assert t2.n == 2 and t2.presentation() == [(), (0,)] and t2.distinct_colors == 2

    @pytest.mark.parametrize("engine", ENGINES)
    @pytest.mark.parametrize("k", range(1, 9))
    def test_forces_k_colors_on_an_induced_subgraph(self, engine, k):
        t = adversary_force(k, engine, seed=k)
        assert t.n == 2 ** (k - 1)
        assert t.distinct_colors >= k
        g = t.graph()
        assert check_proper(g, t.coloring())
        x = build_xk(k)
        emb = [t.embedding[v] for v in range(t.n)]
        assert len(set(emb)) == t.n
        for a in range(t.n):
            for b in range(a + 1, t.n):
                assert g.has_edge(a, b) == (emb[b] in x.adj[emb[a]])

    @pytest.mark.parametrize("k", range(1, 6))
    def test_presented_graph_p6_free(self, k):
        assert is_pk_free(adversary_force(k, "firstfit").graph(), 6)

    @given(st.integers(0, 2**32), st.integers(1, 7))
    def test_any_random_proper_colorer(self, seed, k):
        t = adversary_force(k, make_engine("random", seed=seed))
        assert t.distinct_colors >= k


class TestCrowns:
    def test_crown_shape(self):
        assert crown_presentation(1) == [(), ()]
        assert crown_presentation(3) == [(), (), (1,), (0,), (1, 3), (0, 2)]

    @pytest.mark.parametrize("pairs", [1, 3, 7, 20])
    def test_first_fit_uses_one_color_per_round(self, pairs):
        t = crown_game(pairs, "firstfit")
        assert t.distinct_colors == pairs
        assert [c.index for c in t.colors] == [i // 2 + 1 for i in range(2 * pairs)]

    def test_cbip_on_crown20(self):
        assert crown_game(20, "cbip").distinct_colors <= 2 * 5 + 1

    def test_rejects_zero_pairs(self):
        with pytest.raises(ValueError):
            crown_presentation(0)


class TestForestAdversary:
    def test_k1(self):
        t = forest_adversary(1, "bicolormax")
        assert t.n == 1 and t.distinct_colors == 1

    def test_k3_first_fit(self):
        t = forest_adversary(3, "firstfit")
        assert t.n == 4 and t.distinct_colors >= 3

    @pytest.mark.parametrize("engine", ENGINES)
    @pytest.mark.parametrize("k", range(1, 7))
    def test_forces_k_on_a_forest(self, engine, k):
        t = forest_adversary(k, engine, seed=k)
        assert t.n == 2 ** (k - 1)
        assert t.distinct_colors >= k
        assert is_forest(t.graph().adj)
