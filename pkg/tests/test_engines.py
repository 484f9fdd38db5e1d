from decimal import Decimal, getcontext

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bipartite_presentations, play
from onlinecolor.analysis import check_proper
from onlinecolor.engines import (
    A_DEFAULT,
    B_BRANCH,
    BRANCHES,
    C_BRANCH,
    Colorer,
    ImproperColoringError,
    make_engine,
    mixed_level,
    run_colorer,
    threshold_holds,
)
from onlinecolor.forcing import crown_presentation
from onlinecolor.graph_core import Color, NotBipartiteError, level_component

A, B = (lambda i: Color("A", i)), (lambda i: Color("B", i))
ALL_ENGINES = ("bicolormax", "firstfit", "cbip", "random")


def threshold_oracle(m, j):
    getcontext().prec = 60
    return Decimal(j) >= Decimal(m) - (Decimal(2 * m)).sqrt() + 2


class TestThreshold:
    @pytest.mark.parametrize(
        "m, j, expected",
        [(1, 1, False), (2, 2, True), (8, 6, True), (8, 5, False), (18, 14, True), (18, 13, False)],
    )
    def test_examples(self, m, j, expected):
        assert threshold_holds(m, j) is expected

    @given(st.integers(1, 10**6), st.integers(1, 10**6))
    def test_matches_high_precision_oracle(self, m, j):
        assert threshold_holds(m, j) == threshold_oracle(m, j)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            threshold_holds(0, 1)


class TestBicolormax:
    def test_first_vertex(self):
        c = make_engine("bicolormax")
        assert c.step(()) == A(1)
        assert c.outcomes[0].branch == A_DEFAULT

    def test_second_vertex_takes_b1(self):
        c = play("bicolormax", [(), (0,)])
        assert c.coloring[1] == B(1)
        assert c.outcomes[1].branch == B_BRANCH

    def test_four_vertex_hand_simulation(self):
        c = play("bicolormax", [(), (), (1,), (0, 2)])
        assert [c.coloring[v] for v in range(4)] == [A(1), A(1), B(1), A(2)]
        t = c.outcomes[3].trace
        assert t.m == 2 and not t.a_on_i2 and not t.c_on_i2 and t.branch == A_DEFAULT

    def test_improper_insertion_rejected(self):
        c = play("bicolormax", [(), (0,)])
        with pytest.raises(NotBipartiteError):
            c.step((0, 1))

    @given(bipartite_presentations())
    def test_trace_invariants(self, pres):
        c = play("bicolormax", pres)
        top = 0
        for out in c.outcomes:
            assert out.branch in BRANCHES
            assert out.color.index == out.trace.m
            assert out.trace.m <= top + 1
            if out.branch == C_BRANCH:
                assert out.trace.witness is not None
                assert out.color.index >= 2
            top = max(top, out.color.index)

    @given(bipartite_presentations())
    def test_never_c1_and_at_most_three_per_index(self, pres):
        c = play("bicolormax", pres)
        used = set(c.coloring.values())
        assert Color("C", 1) not in used
        assert len(used) <= 3 * c.state.max_index_used

    @given(bipartite_presentations(min_n=1))
    def test_mixed_level_below_max_index(self, pres):
        c = play("bicolormax", pres[:-1])
        state = c.state
        v = state.graph.add_vertex(pres[-1])
        m = mixed_level(state, v)
        assert m <= state.max_index_used
        top = level_component(state.graph, state.coloring, v, state.max_index_used + 1, include_uncolored_anchor=True)
        a = Color("A", state.max_index_used + 1)
        assert not any(state.coloring.get(w) == a for w in top.vertices)

    @given(bipartite_presentations())
    def test_any_palette_option_stays_proper(self, pres):
        c = Colorer("bicolormax", any_palette_witness=True)
        for nbrs in pres:
            c.step(nbrs)
        assert check_proper(c.graph, c.coloring)


class TestBaselines:
    def test_first_fit_isolated(self):
        assert make_engine("firstfit").step(()) == A(1)

    def test_first_fit_skips_neighbor_colors(self):
        # 0:1, 1:1, 2:2 (adjacent to 1); the new vertex sees colors {1, 2}
        c = play("firstfit", [(), (), (1,)])
        assert c.coloring[2] == A(2)
        assert c.step((0, 2)) == A(3)

    def test_first_fit_reuses_lowest_gap(self):
        c = play("firstfit", [(), (0,)])
        assert c.coloring[1] == A(2)
        assert c.step((1,)) == A(1)

    def test_cbip_edge(self):
        c = play("cbip", [(), (0,)])
        assert [c.coloring[0], c.coloring[1]] == [A(1), A(2)]

    def test_cbip_joins_two_components(self):
        # edges 0-1 and 2-3; vertex 4 adjacent to 0 and 2 sees color 1 on its opposite side
        c = play("cbip", [(), (0,), (), (2,)])
        assert c.coloring[0] == c.coloring[2] == A(1)
        assert c.step((0, 2)) == A(2)

    def test_cbip_looks_past_the_neighborhood(self):
        # path 0-2-3-1-4 with colors 1,1,2,3; vertex 4 only sees 1 (color 1) but 2 (color 2) is also opposite
        pres = [(), (), (0,), (1, 2), (1,)]
        assert play("firstfit", pres).coloring[4] == A(2)
        assert play("cbip", pres).coloring[4] == A(3)

    def test_first_fit_on_crown(self):
        t = run_colorer("firstfit", crown_presentation(3))
        assert t.distinct_colors == 3

    def test_random_engine_is_seeded(self):
        pres = crown_presentation(6)
        a = run_colorer("random", pres, seed=11).colors
        b = run_colorer("random", pres, seed=11).colors
        assert a == b


class TestCommonContract:
    @pytest.mark.parametrize("engine", ALL_ENGINES)
    def test_empty_presentation(self, engine):
        t = run_colorer(engine, [])
        assert t.distinct_colors == 0 and t.max_index == 0

    @pytest.mark.parametrize("engine", ALL_ENGINES)
    @given(pres=bipartite_presentations())
    def test_proper_after_every_step(self, engine, pres):
        c = make_engine(engine, seed=3)
        for nbrs in pres:
            color = c.step(nbrs)
            v = c.graph.n - 1
            assert all(c.coloring[u] != color for u in c.graph.adj[v])
        assert check_proper(c.graph, c.coloring)

    @pytest.mark.parametrize("engine", ALL_ENGINES)
    @given(pres=bipartite_presentations())
    def test_deterministic(self, engine, pres):
        assert run_colorer(engine, pres, seed=5) == run_colorer(engine, pres, seed=5)

    @given(pres=bipartite_presentations(min_n=1))
    def test_cbip_log_bound(self, pres):
        n = len(pres)
        assert run_colorer("cbip", pres).distinct_colors <= 2 * (n.bit_length() - 1) + 1

    def test_checked_colorer_catches_bad_engine(self, monkeypatch):
        from onlinecolor import engines

        def constant(state, neighbors):
            v = state.graph.add_vertex(neighbors)
            state.coloring[v] = A(1)
            return engines.StepOutcome(v, A(1))

        monkeypatch.setitem(engines.STEPS, "constant", constant)
        c = Colorer("constant")
        c.step(())
        with pytest.raises(ImproperColoringError):
            c.step((0,))

    def test_unknown_engine(self):
        with pytest.raises(ValueError):
            make_engine("nope")
