"""Ingestion, neighborhoods, and summary statistics."""

import itertools

import numpy as np
import pytest

from netuniq.canon import certificate
from netuniq.graph import (
    Graph,
    load_edge_list,
    neighborhood,
    relabel,
    summary_stats,
    triangle_count,
    triangles_per_node,
)

TRIANGLE = "a b\nb c\na c"


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


class TestLoadEdgeList:
    def test_triangle(self):
        g = load_edge_list(TRIANGLE)
        assert (g.n, g.m) == (3, 3)
        assert g.labels == ["a", "b", "c"]

    def test_duplicates_and_self_loops_dropped(self):
        g = load_edge_list("a b\na b\na a")
        assert (g.n, g.m) == (2, 1)

    def test_symmetrized(self):
        g = load_edge_list("a b\nb a")
        assert g.m == 1

    def test_comments_and_blanks_ignored(self):
        g = load_edge_list("# header\n\na b\n  \n# tail\nb c\n")
        assert (g.n, g.m) == (3, 2)

    def test_malformed_line_reports_number(self):
        with pytest.raises(ValueError, match="line 2"):
            load_edge_list("a b\na b c")

    def test_empty_input(self):
        with pytest.raises(ValueError, match="empty"):
            load_edge_list("# nothing here\n")

    def test_first_appearance_indexing(self):
        g = load_edge_list("x y\ny z")
        assert g.labels == ["x", "y", "z"]
        assert g.neighbors(1) == [0, 2]


class TestNeighborhood:
    def test_triangle_corner(self):
        g = load_edge_list(TRIANGLE)
        nb = neighborhood(g, 0)
        assert (nb.n, nb.m) == (2, 1)

    def test_star_center(self):
        g = load_edge_list("c a\nc b\nc d")
        nb = neighborhood(g, 0)
        assert (nb.n, nb.m) == (3, 0)

    def test_isolated_node(self):
        g = Graph.from_edges(1, [])
        nb = neighborhood(g, 0)
        assert (nb.n, nb.m) == (0, 0)

    def test_out_of_range(self):
        g = load_edge_list(TRIANGLE)
        with pytest.raises(IndexError):
            neighborhood(g, 3)

    def test_size_equals_degree(self):
        g = random_graph(30, 0.2, seed=1)
        for v in range(g.n):
            assert neighborhood(g, v).n == g.degree(v)

    def test_label_stable_under_relabeling(self):
        # per-node neighborhoods of a permuted graph are isomorphic to the originals
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(3, 8))
            g = random_graph(n, rng.random(), seed=int(rng.integers(1 << 30)))
            perm = list(rng.permutation(n))
            h = relabel(g, perm)
            for v in range(n):
                assert certificate(neighborhood(g, v)) == certificate(
                    neighborhood(h, perm[v])
                )


class TestSummaryStats:
    def test_triangle(self):
        s = summary_stats(load_edge_list(TRIANGLE))
        assert (s.n, s.m, s.avg_degree, s.clustering) == (3, 3, 2.0, 1.0)

    def test_path(self):
        s = summary_stats(load_edge_list("a b\nb c"))
        assert (s.n, s.m, s.clustering) == (3, 2, 0.0)
        assert s.avg_degree == pytest.approx(4 / 3)

    def test_degree_sum_is_twice_edges(self):
        g = random_graph(60, 0.1, seed=2)
        assert sum(g.degrees()) == 2 * g.m

    def test_clustering_matches_triangle_enumeration(self):
        # independent oracle: count triangles by iterating all vertex triples
        for seed in range(5):
            g = random_graph(40, 0.15, seed=seed)
            tri = [0] * g.n
            for a, b, c in itertools.combinations(range(g.n), 3):
                if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
                    tri[a] += 1
                    tri[b] += 1
                    tri[c] += 1
            assert triangles_per_node(g) == tri
            expect = 0.0
            for v in range(g.n):
                k = g.degree(v)
                if k >= 2:
                    expect += 2 * tri[v] / (k * (k - 1))
            assert summary_stats(g).clustering == pytest.approx(expect / g.n)
            assert triangle_count(g) == sum(tri) // 3


def test_edges_sorted_and_unique():
    g = random_graph(25, 0.3, seed=3)
    edges = list(g.edges())
    assert edges == sorted(edges)
    assert len(edges) == len(set(edges)) == g.m
