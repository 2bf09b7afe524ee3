import pytest
from hypothesis import given, strategies as st

from gmwis import Graph, GraphError, build_graph, named_graph


def cycle(k):
    return [(i, (i + 1) % k) for i in range(k)]


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(min_value=1, max_value=max_n))
    edges = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                lambda e: e[0] != e[1]
            ),
            max_size=3 * n,
        )
    )
    return Graph(n, edges)


class TestConstruction:
    def test_k2_with_weights(self):
        g = build_graph(2, [(0, 1)], [5, 7])
        assert g.n == 2 and g.num_edges() == 1 and g.weights == (5, 7)

    def test_edgeless(self):
        g = build_graph(3, [], [1, 1, 1])
        assert g.num_edges() == 0

    def test_c5(self):
        g = build_graph(5, cycle(5))
        assert g.num_edges() == 5 and all(g.degree(v) == 2 for v in range(5))

    def test_duplicate_edges_collapse(self):
        g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
        assert g.num_edges() == 1

    def test_out_of_range_endpoint(self):
        with pytest.raises(GraphError, match=r"\(0,5\)"):
            build_graph(3, [(0, 5)])

    def test_self_loop(self):
        with pytest.raises(GraphError, match="self-loop at vertex 2"):
            build_graph(3, [(2, 2)])

    def test_negative_weight(self):
        with pytest.raises(GraphError, match="vertex 1"):
            build_graph(2, [], [3, -1])

    def test_weight_count_mismatch(self):
        with pytest.raises(GraphError):
            build_graph(3, [], [1, 2])

    def test_total_weight_bound(self):
        with pytest.raises(GraphError, match="64-bit"):
            build_graph(2, [], [2**62, 2**62])


class TestNeighborhoods:
    def test_c5_closed(self):
        g = build_graph(5, cycle(5))
        assert g.closed_neighborhood(0) == {4, 0, 1}

    def test_isolated_closed(self):
        g = build_graph(3, [(0, 1)])
        assert g.closed_neighborhood(2) == {2}

    def test_k4_closed(self):
        g = build_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert g.closed_neighborhood(1) == {0, 1, 2, 3}

    def test_anti_complete(self):
        g = build_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert g.anti_neighborhood(2) == frozenset()

    def test_anti_c5(self):
        g = build_graph(5, cycle(5))
        assert g.anti_neighborhood(0) == {2, 3}

    def test_anti_apple_pendant_neighbor(self):
        # pendant sits on cycle vertex 0; its anti-neighborhood is the far side
        g = named_graph("5-apple")
        assert g.anti_neighborhood(0) == {2, 3}

    def test_out_of_range(self):
        g = build_graph(2, [])
        with pytest.raises(GraphError):
            g.closed_neighborhood(5)


class TestInduced:
    def test_c5_three_consecutive_is_p3(self):
        g = build_graph(5, cycle(5))
        sub, old_of = g.induced({0, 1, 2})
        assert old_of == (0, 1, 2)
        assert sorted(sub.edges()) == [(0, 1), (1, 2)]

    def test_full_set_identity(self):
        g = build_graph(4, [(0, 2), (1, 3)], [4, 3, 2, 1])
        sub, old_of = g.induced(range(4))
        assert sub == g and old_of == (0, 1, 2, 3)

    def test_gem_path_vertices_give_p4(self):
        g = named_graph("gem")
        sub, _ = g.induced({0, 1, 2, 3})
        assert sorted(sub.edges()) == [(0, 1), (1, 2), (2, 3)]

    def test_out_of_range(self):
        with pytest.raises(GraphError):
            build_graph(3, []).induced({0, 7})

    @given(graphs())
    def test_restricting_twice_composes(self, g):
        outer = frozenset(v for v in range(g.n) if v % 2 == 0)
        sub, old_of = g.induced(outer)
        inner_local = frozenset(u for u in range(sub.n) if u != 0)
        twice, inner_old = sub.induced(inner_local)
        direct, direct_old = g.induced({old_of[u] for u in inner_local})
        assert twice == direct
        assert tuple(old_of[u] for u in inner_old) == direct_old


class TestSetPredicates:
    def test_clique_k4(self):
        g = build_graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert g.is_clique(range(4))

    def test_independent_c5(self):
        g = build_graph(5, cycle(5))
        assert g.is_independent({0, 2})
        assert not g.is_independent({0, 1})

    def test_diamond_triangle(self):
        g = named_graph("diamond")
        # both degree-3 corners plus one degree-2 corner form a triangle
        degs = sorted(range(4), key=g.degree, reverse=True)
        assert g.is_clique(degs[:2] + [degs[2]])

    def test_empty_and_singletons(self):
        g = build_graph(2, [(0, 1)])
        assert g.is_clique([]) and g.is_independent([])
        assert g.is_clique([0]) and g.is_independent([0])


class TestComponents:
    def test_two_k2(self):
        g = build_graph(4, [(0, 1), (2, 3)])
        assert sorted(map(sorted, g.components())) == [[0, 1], [2, 3]]

    def test_connected_cycle(self):
        assert build_graph(5, cycle(5)).components() == [frozenset(range(5))]

    def test_empty_graph(self):
        assert build_graph(0, []).components() == []


@given(graphs())
def test_closed_and_anti_partition_vertices(g):
    for v in range(g.n):
        closed = g.closed_neighborhood(v)
        anti = g.anti_neighborhood(v)
        assert closed | anti == set(range(g.n))
        assert not closed & anti


@given(graphs())
def test_handshake(g):
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.num_edges()


@given(graphs())
def test_complement_involution(g):
    assert g.complement().complement() == g


def test_graphs_hashable_and_equal():
    a = build_graph(3, [(0, 1)], [1, 2, 3])
    b = build_graph(3, [(1, 0)], [1, 2, 3])
    assert a == b and hash(a) == hash(b)
    assert a != build_graph(3, [(0, 2)], [1, 2, 3])
