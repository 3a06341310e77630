import pytest

from symbreak.autsearch import automorphism_group
from symbreak.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    hypercube,
    path_graph,
    star_graph,
)

from conftest import brute_force_automorphisms


KNOWN_ORDERS = [
    (path_graph(2), 2),
    (path_graph(4), 2),
    (path_graph(7), 2),
    (cycle_graph(3), 6),
    (cycle_graph(6), 12),
    (cycle_graph(8), 16),
    (complete_graph(4), 24),
    (complete_graph(5), 120),
    (complete_bipartite(2, 3), 12),
    (complete_bipartite(3, 3), 72),
    (star_graph(4), 24),
    (hypercube(3), 48),
]


@pytest.mark.parametrize("graph, order", KNOWN_ORDERS)
def test_known_group_orders(graph, order):
    assert automorphism_group(graph).order() == order


def test_matches_brute_force_on_corpus(corpus):
    for name, g in corpus.items():
        if g.vertex_count > 8:
            continue
        expected = brute_force_automorphisms(g)
        aut = automorphism_group(g)
        assert aut.order() == len(expected), name
        for e in expected:
            assert aut.contains(e), (name, e)


def test_every_generator_preserves_adjacency(corpus):
    for name, g in corpus.items():
        adj = [frozenset(nbrs) for nbrs in g.adjacency]
        for gen in automorphism_group(g).generators:
            for v in range(g.vertex_count):
                assert frozenset(gen(u) for u in adj[v]) == adj[gen(v)], name


class TestColourConstrained:
    def test_c4_alternating(self):
        got = automorphism_group(cycle_graph(4), vertex_colours=(0, 1, 0, 1))
        assert got.order() == 4

    def test_matches_brute_force_with_colours(self):
        cases = [
            (cycle_graph(4), (0, 1, 0, 1)),
            (cycle_graph(4), (0, 0, 1, 1)),
            (cycle_graph(6), (0, 0, 0, 1, 1, 0)),
            (path_graph(4), (0, 0, 1, 0)),
            (complete_graph(4), (0, 1, 1, 0)),
            (star_graph(4), (0, 1, 1, 0, 1)),
        ]
        for g, colours in cases:
            expected = brute_force_automorphisms(g, colours)
            aut = automorphism_group(g, vertex_colours=colours)
            assert aut.order() == len(expected), colours
            for e in expected:
                assert aut.contains(e)

    def test_constant_colouring_is_unconstrained(self):
        g = cycle_graph(5)
        assert automorphism_group(g, vertex_colours=(7,) * 5).order() == 10

    def test_partial_colouring_rejected(self):
        with pytest.raises(ValueError):
            automorphism_group(path_graph(3), vertex_colours=(0, 1))


def test_edgeless_and_disconnected():
    edgeless = Graph.from_edges(4, [])
    assert automorphism_group(edgeless).order() == 24
    two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
    # each edge flips, and the two edges swap
    assert automorphism_group(two_edges).order() == 8


def test_single_vertex():
    assert automorphism_group(complete_graph(1)).order() == 1


def test_asymmetric_graph_is_trivial():
    # spider with leg lengths 1, 2, 3: the smallest asymmetric tree
    g = Graph.from_edges(7, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)])
    assert automorphism_group(g).order() == 1


def test_random_graphs_match_brute_force():
    # seeded fuzzing of the generic search against the permutation filter
    from symbreak.rng import SeededRng

    rng = SeededRng(777)
    for trial in range(120):
        draws = rng.stream(trial)
        n = 1 + draws.integers_below(6, 1)[0]
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        picks = draws.integers_below(3, len(all_pairs)) if all_pairs else []
        edges = [e for e, p in zip(all_pairs, picks) if p > 0]
        g = Graph.from_edges(n, edges)
        colours = tuple(draws.integers_below(2, n))
        for cols in (None, colours):
            expected = brute_force_automorphisms(g, cols)
            aut = automorphism_group(g, vertex_colours=cols)
            assert aut.order() == len(expected), (n, edges, cols)
            for e in expected:
                assert aut.contains(e)


def test_random_trees_match_brute_force():
    # exercises the tree fast path (single centres and centre edges) against
    # the permutation filter, with and without colours
    from symbreak.rng import SeededRng

    rng = SeededRng(1234)
    for trial in range(60):
        draws = rng.stream(trial)
        n = 2 + draws.integers_below(6, 1)[0]
        attach = draws.integers_below(max(n - 1, 1), n - 1)
        edges = [(attach[v - 1] % v, v) for v in range(1, n)]
        g = Graph.from_edges(n, edges)
        colours = tuple(draws.integers_below(2, n))
        for cols in (None, colours):
            expected = brute_force_automorphisms(g, cols)
            aut = automorphism_group(g, vertex_colours=cols)
            assert aut.order() == len(expected), (edges, cols)
            for e in expected:
                assert aut.contains(e)


def test_petersen_graph_order():
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((i + 5, 5 + (i + 2) % 5))
    g = Graph.from_edges(10, edges)
    assert automorphism_group(g).order() == 120
