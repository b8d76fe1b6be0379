"""Exact-length and windowed-length path realization."""

import random

import pytest

from balsub.connect import check_path
from balsub.gadgets import Expansion
from balsub.generators import (
    complete_graph,
    cycle_graph,
    gnp,
    path_graph,
)
from balsub.graph import Graph
from balsub.outcomes import BuildFailure, InvalidArgumentError, TooLargeError
from balsub.router import (
    LengthWindow,
    connect_pair_with_length,
    connect_with_length,
    exact_path_in_region,
    realize_exact_length,
    simple_path_lengths,
)


def all_simple_path_lengths(g, region, v1, v2):
    """Brute-force oracle: lengths of every simple v1,v2-path whose
    interior stays inside region."""
    lengths = set()

    def walk(cur, seen):
        for w in g.neighbors(cur):
            if w == v2:
                lengths.add(len(seen))
                continue
            if w in seen or w not in region:
                continue
            walk(w, seen | {w})

    walk(v1, {v1})
    return frozenset(lengths)


def test_length_window_contract():
    w = LengthWindow(2, 5)
    assert 2 in w and 5 in w and 6 not in w
    with pytest.raises(InvalidArgumentError):
        LengthWindow(0, 4)
    with pytest.raises(InvalidArgumentError):
        LengthWindow(3, 2)


def test_realize_long_arc_of_c6():
    g = cycle_graph(6)
    w = realize_exact_length(g, [1, 3, 4, 5], 0, 2, 4)
    assert w is not None
    assert w.vertices == (0, 5, 4, 3, 2)


def test_realize_parity_obstruction():
    # C6 is bipartite; an odd 0,2-path cannot exist
    g = cycle_graph(6)
    assert realize_exact_length(g, [1, 3, 4, 5], 0, 2, 3) is None


def test_realize_single_edge():
    g = path_graph(2)
    w = realize_exact_length(g, [], 0, 1, 1)
    assert w is not None and w.vertices == (0, 1)


def test_realize_validates_inputs():
    g = complete_graph(4)
    with pytest.raises(InvalidArgumentError):
        realize_exact_length(g, [], 0, 0, 1)
    with pytest.raises(InvalidArgumentError):
        realize_exact_length(g, [], 0, 1, 0)
    with pytest.raises(TooLargeError):
        realize_exact_length(complete_graph(30), range(2, 30), 0, 1, 3)


def test_exact_path_in_region_returns_host_ids():
    g = cycle_graph(6)
    found = exact_path_in_region(g, [1, 3, 4, 5], 0, [2], 4)
    assert found == [0, 5, 4, 3, 2]
    assert exact_path_in_region(g, [1, 3, 4, 5], 0, [2], 3) is None
    with pytest.raises(InvalidArgumentError):
        exact_path_in_region(g, [1], 0, [], 2)


def test_menu_of_c6_arcs():
    g = cycle_graph(6)
    menu = simple_path_lengths(g, [1, 3, 4, 5], 0, 2)
    assert menu == frozenset({2, 4})


def test_realize_matches_bruteforce_oracle():
    rng = random.Random(5)
    checked = 0
    for seed in range(200):
        n = rng.randint(4, 12)
        g = gnp(n, 0.45, seed)
        v1, v2 = 0, n - 1
        region = frozenset(range(1, n - 1))
        oracle = all_simple_path_lengths(g, region, v1, v2)
        menu = simple_path_lengths(g, region, v1, v2)
        assert menu == oracle
        for target in range(1, n):
            w = realize_exact_length(g, region, v1, v2, target)
            if target in oracle:
                assert w is not None and w.length == target
                assert check_path(g, w)
                assert w.vertices[0] == v1 and w.vertices[-1] == v2
                assert set(w.interior()) <= region
            else:
                assert w is None
        checked += 1
    assert checked == 200


def test_connect_with_length_on_k20():
    g = complete_graph(20)
    f = Expansion(0, frozenset({0}), 0)
    w = connect_with_length(g, 0, f, [19], window=LengthWindow(5, 9))
    assert not isinstance(w, BuildFailure)
    assert w.vertices[0] == 0 and w.vertices[-1] == 19
    assert 5 <= w.length <= 9
    assert check_path(g, w)


def test_connect_with_length_single_edge():
    g = complete_graph(5)
    f = Expansion(0, frozenset({0}), 0)
    w = connect_with_length(g, 0, f, [3], window=LengthWindow(1, 1))
    assert not isinstance(w, BuildFailure)
    assert w.vertices == (0, 3)


def test_connect_with_length_impossible_window():
    g = path_graph(6)
    f = Expansion(0, frozenset({0}), 0)
    out = connect_with_length(g, 0, f, [5], window=LengthWindow(7, 9))
    assert isinstance(out, BuildFailure)
    assert out.reason == "window_unreachable"


def test_connect_with_length_respects_avoid():
    g = complete_graph(10)
    f = Expansion(0, frozenset({0}), 0)
    w = connect_with_length(g, 0, f, [9], avoid=[4, 5], window=LengthWindow(3, 5))
    assert not isinstance(w, BuildFailure)
    assert not set(w.vertices) & {4, 5}


def test_connect_pair_on_k30():
    g = complete_graph(30)
    u1 = frozenset(range(5))
    u2 = frozenset(range(5, 10))
    f3 = Expansion(10, frozenset(range(10, 15)), 1)
    f4 = Expansion(15, frozenset(range(15, 20)), 1)
    out = connect_pair_with_length(g, u1, u2, f3, f4, window=LengthWindow(6, 12))
    assert not isinstance(out, BuildFailure)
    p, q = out
    assert 6 <= p.length + q.length <= 12
    assert not set(p.vertices) & set(q.vertices)
    starts = {p.vertices[0], q.vertices[0]}
    assert len(starts & u1) == 1 and len(starts & u2) == 1
    assert {p.vertices[-1], q.vertices[-1]} == {10, 15}


def test_connect_pair_disconnected_failure():
    g = Graph(12, [(4, 5), (5, 6), (6, 7), (8, 9), (10, 11)])
    u1 = frozenset({0, 1})  # isolated vertices
    u2 = frozenset({4})
    f3 = Expansion(8, frozenset({8, 9}), 1)
    f4 = Expansion(10, frozenset({10, 11}), 1)
    out = connect_pair_with_length(g, u1, u2, f3, f4, window=LengthWindow(2, 6))
    assert isinstance(out, BuildFailure)


def test_connect_pair_forced_single_edges():
    g = Graph(4, [(0, 2), (1, 3)])
    u1 = frozenset({0})
    u2 = frozenset({1})
    f3 = Expansion(2, frozenset({2}), 0)
    f4 = Expansion(3, frozenset({3}), 0)
    out = connect_pair_with_length(g, u1, u2, f3, f4, window=LengthWindow(2, 2))
    assert not isinstance(out, BuildFailure)
    p, q = out
    assert p.length == 1 and q.length == 1
    assert {p.vertices[0], q.vertices[0]} == {0, 1}
