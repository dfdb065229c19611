from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from dseprel.dsep import build_bundle
from dseprel.reachability import OrientState, active_reach, d_connected_reach, reachable_targets
from dseprel.relation import VertexSubset
from dseprel.upath import MINUS, PLUS, all_paths_upto, completeness_bound, is_active

from strategies import CHAIN3, COLLIDER, LOOP1, graphs_with_given, names


def states(g, st_set):
    return {(g.names[v], o) for v, o in st_set}


def test_chain3_unconditioned():
    got = active_reach(CHAIN3, 0, VertexSubset.empty(3))
    assert states(CHAIN3, got) == {("b", PLUS), ("c", PLUS)}


def test_collider_given_collider():
    got = states(COLLIDER, active_reach(COLLIDER, 0, names(COLLIDER, "c")))
    assert {("c", PLUS), ("b", MINUS)} <= got
    # a -> c <- a is also an active walk, so a is re-entered against its edge
    assert got == {("c", PLUS), ("b", MINUS), ("a", MINUS)}


def test_loop_seeds_both_orientations():
    got = active_reach(LOOP1, 0, VertexSubset.empty(1))
    assert got == {OrientState(0, PLUS), OrientState(0, MINUS)}


def test_connected_reach_examples():
    for g in (CHAIN3, COLLIDER, LOOP1):
        for x in range(g.n):
            assert d_connected_reach(g, x, x, VertexSubset.full(g.n))
    assert not d_connected_reach(CHAIN3, 0, 2, names(CHAIN3, "b"))
    assert d_connected_reach(COLLIDER, 0, 2, names(COLLIDER, "c"))


def test_chain3_given_b_runs_to_fixpoint():
    got = states(CHAIN3, active_reach(CHAIN3, 0, names(CHAIN3, "b")))
    assert got == {("b", PLUS), ("a", MINUS)}


@settings(max_examples=100)
@given(graphs_with_given(max_n=3))
def test_states_match_active_path_endings(gw):
    """(v, o) is reachable iff some active path of length >= 1 ends at v with o."""
    g, w = gw
    complete = g.n <= 2
    by_source = {x: set() for x in range(g.n)}
    for p in all_paths_upto(g, completeness_bound(g) if complete else 4):
        if p.length >= 1 and is_active(p, g, w):
            by_source[p.vertices[0]].add((p.vertices[-1], p.orientations[-1]))
    for x in range(g.n):
        got = active_reach(g, x, w)
        assert by_source[x] <= got
        if complete:
            assert got == by_source[x]


@settings(max_examples=200)
@given(graphs_with_given(max_n=6), st.data())
def test_orientation_refinement(gw, data):
    g, w = gw
    b = build_bundle(g, w)
    x = data.draw(st.integers(0, g.n - 1))
    got = active_reach(g, x, w)
    for y in range(g.n):
        assert (OrientState(y, PLUS) in got) == ((x, y) in b.active_plus)
        assert (OrientState(y, MINUS) in got) == ((x, y) in b.active_minus)


@given(graphs_with_given(max_n=6), st.data())
def test_targets(gw, data):
    g, w = gw
    x = data.draw(st.integers(0, g.n - 1))
    t = reachable_targets(g, x, w)
    assert [d_connected_reach(g, x, y, w) for y in range(g.n)] == [y in t for y in range(g.n)]
