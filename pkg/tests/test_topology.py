from collections import deque

import pytest
from hypothesis import given, strategies as st

from foldcube import (
    Complementary,
    Dimensional,
    NotAnFqEdge,
    build_folded_hypercube,
    build_hypercube,
    common_neighbors,
    complementary_class,
    dimension_class,
    distance,
    edge_class,
    edge_distance,
)
from foldcube.errors import DimensionError
from foldcube.topology import common_neighbor_counts, format_vertex, parse_vertex

from conftest import bfs_oracle_distance, fq_adjacent, oracle_edges


def b(s):
    return int(s, 2)


def girth(g):
    best = None
    for root in g.vertices():
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    cycle = dist[v] + dist[w] + 1
                    best = cycle if best is None else min(best, cycle)
    return best


class TestBuild:
    def test_q1_is_k2(self):
        g = build_hypercube(1)
        assert g.vertex_count == 2
        assert list(g.edges()) == [(0, 1)]

    def test_q3_counts(self):
        g = build_hypercube(3)
        assert (g.vertex_count, g.edge_count) == (8, 12)
        assert all(g.degree(v) == 3 for v in g.vertices())
        assert all(bin(u).count("1") % 2 != bin(v).count("1") % 2 for u, v in g.edges())

    def test_q4_girth(self):
        g = build_hypercube(4)
        assert (g.vertex_count, g.edge_count) == (16, 32)
        assert girth(g) == 4

    def test_fq2_is_k4(self):
        g = build_folded_hypercube(2)
        assert g.edge_count == 6
        assert all(g.has_edge(u, v) for u in range(4) for v in range(4) if u != v)

    @pytest.mark.parametrize("n,edges", [(3, 16), (4, 40)])
    def test_fq_counts(self, n, edges):
        g = build_folded_hypercube(n)
        assert g.vertex_count == 1 << n
        assert g.edge_count == edges
        assert all(g.degree(v) == n + 1 for v in g.vertices())

    @pytest.mark.parametrize("n", range(1, 9))
    def test_edge_sets_match_closed_form(self, n):
        assert list(build_hypercube(n).edges()) == oracle_edges(n, folded=False)
        if n >= 2:
            assert list(build_folded_hypercube(n).edges()) == oracle_edges(n)
            assert build_folded_hypercube(n).edge_count == (n + 1) << (n - 1)

    def test_symmetric_no_loops(self):
        g = build_folded_hypercube(5)
        for u in g.vertices():
            assert u not in g.adjacency[u]
            assert len(set(g.adjacency[u])) == len(g.adjacency[u])
            for w in g.adjacency[u]:
                assert u in g.adjacency[w]

    @pytest.mark.parametrize("n", [0, 21])
    def test_dimension_guard(self, n):
        with pytest.raises(DimensionError):
            build_hypercube(n)

    def test_fq1_rejected(self):
        with pytest.raises(DimensionError):
            build_folded_hypercube(1)

    def test_guard_env_override(self, monkeypatch):
        monkeypatch.setenv("FOLDCUBE_MAX_N", "3")
        with pytest.raises(DimensionError):
            build_hypercube(4)
        assert build_hypercube(3).vertex_count == 8


class TestLabels:
    def test_leftmost_is_position_one(self):
        assert format_vertex(b("0100"), 4) == "0100"
        assert edge_class(4, (b("0000"), b("1000"))) == Dimensional(1)

    def test_parse_roundtrip(self):
        assert all(parse_vertex(format_vertex(v, 5), 5) == v for v in range(32))

    def test_parse_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            parse_vertex("010", 4)


class TestEdgeClass:
    def test_dimensional(self):
        assert edge_class(4, (b("0000"), b("0100"))) == Dimensional(2)

    def test_complementary(self):
        assert edge_class(4, (b("0100"), b("1011"))) == Complementary()

    def test_not_an_edge(self):
        with pytest.raises(NotAnFqEdge):
            edge_class(4, (b("0000"), b("0011")))

    def test_n1_edge_is_dimensional(self):
        assert edge_class(1, (0, 1)) == Dimensional(1)


class TestClasses:
    def test_e1_n2(self):
        assert dimension_class(2, 1).edges == ((b("00"), b("10")), (b("01"), b("11")))

    def test_e3_n3(self):
        edges = dimension_class(3, 3).edges
        assert len(edges) == 4
        assert all(v == u + 1 and u % 2 == 0 for u, v in edges)

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_e_i_n4_saturates(self, i):
        m = dimension_class(4, i)
        assert len(m) == 8
        assert {x for e in m for x in e} == set(range(16))

    def test_ec_n2(self):
        assert complementary_class(2).edges == ((b("00"), b("11")), (b("01"), b("10")))

    def test_ec_n3(self):
        assert [(format_vertex(u, 3), format_vertex(v, 3)) for u, v in complementary_class(3)] == [
            ("000", "111"), ("001", "110"), ("010", "101"), ("011", "100"),
        ]

    def test_ec_removal_is_q4(self):
        fq = build_folded_hypercube(4)
        assert fq.without_edges(complementary_class(4)) == build_hypercube(4)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_partition_of_fq_edges(self, n):
        classes = [set(dimension_class(n, i)) for i in range(1, n + 1)] + [set(complementary_class(n))]
        union = set().union(*classes)
        assert sum(len(c) for c in classes) == len(union)
        assert union == set(build_folded_hypercube(n).edges())

    def test_position_out_of_range(self):
        with pytest.raises(DimensionError):
            dimension_class(3, 4)


class TestDistance:
    def test_examples(self):
        assert distance(build_hypercube(3), 0, 7) == 3
        assert distance(build_folded_hypercube(3), 0, 7) == 1
        assert distance(build_folded_hypercube(4), b("0000"), b("0111")) == 2

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_matches_closed_form(self, n):
        q, fq = build_hypercube(n), build_folded_hypercube(n)
        for u in range(1 << n):
            for v in range(1 << n):
                assert distance(q, u, v) == bfs_oracle_distance(n, u, v, folded=False)
                assert distance(fq, u, v) == bfs_oracle_distance(n, u, v)

    @given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
    def test_symmetry_and_triangle(self, u, v, w):
        g = build_folded_hypercube(6)
        assert distance(g, u, v) == distance(g, v, u)
        assert distance(g, u, w) <= distance(g, u, v) + distance(g, v, w)

    def test_out_of_range(self):
        with pytest.raises(DimensionError):
            distance(build_hypercube(3), 0, 8)


class TestEdgeDistance:
    def test_same_edge(self):
        g = build_folded_hypercube(4)
        assert edge_distance(g, (0, 1), (0, 1)) == 0

    @pytest.mark.parametrize("f,expected", [(("110", "111"), 2), (("011", "111"), 1)])
    def test_q3_examples(self, f, expected):
        g = build_hypercube(3)
        e = (b("000"), b("001"))
        f = (b(f[0]), b(f[1]))
        # 001 and 011 are adjacent, so the second pair sits at distance 1.
        assert min(bin(x ^ y).count("1") for x in e for y in f) == expected
        assert edge_distance(g, e, f) == expected

    def test_rejects_non_edge(self):
        with pytest.raises(ValueError):
            edge_distance(build_hypercube(3), (0, 3), (0, 1))


class TestCommonNeighbors:
    def test_fq4_pair(self):
        g = build_folded_hypercube(4)
        assert common_neighbors(g, b("0000"), b("0011")) == {b("0001"), b("0010")}

    def test_fq3_pair_has_four(self):
        g = build_folded_hypercube(3)
        assert len(common_neighbors(g, b("000"), b("011"))) == 4

    def test_adjacent_in_q_n(self):
        g = build_hypercube(5)
        assert all(not common_neighbors(g, u, v) for u, v in g.edges())

    @pytest.mark.parametrize("n", [4, 5])
    def test_lemma_spectrum(self, n):
        g = build_folded_hypercube(n)
        for u, v, c in common_neighbor_counts(g):
            brute = sum(fq_adjacent(n, u, w) and fq_adjacent(n, v, w) for w in range(1 << n))
            assert c == brute
            assert c in (0, 2)

    def test_fq3_exceeds_two(self):
        assert any(c > 2 for _, _, c in common_neighbor_counts(build_folded_hypercube(3)))

    def test_same_vertex_rejected(self):
        with pytest.raises(ValueError):
            common_neighbors(build_hypercube(3), 1, 1)
