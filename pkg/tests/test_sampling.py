"""Edge sampling, estimators, and the per-rate report."""

import numpy as np
import pytest

from netuniq.graph import Graph, load_edge_list, triangle_count
from netuniq.models import ModelSpec, gen_er, substream_seed
from netuniq.sampling import (
    SamplingPlan,
    estimate_degree,
    estimate_triangles,
    sample_edges,
    sampling_report,
)
from netuniq.uniqueness import neighborhood_uniqueness

TRIANGLE = load_edge_list("a b\nb c\na c")


class TestPlan:
    def test_rate_bounds(self):
        with pytest.raises(ValueError):
            SamplingPlan(rate=0.0)
        with pytest.raises(ValueError):
            SamplingPlan(rate=1.2)
        with pytest.raises(ValueError):
            SamplingPlan(rate=0.5, mode="systematic")


class TestSampleEdges:
    def test_rate_one_is_identity(self):
        g = gen_er(ModelSpec("er", 100, 5.0, seed=1))
        for mode in ("bernoulli", "exact-count"):
            s = sample_edges(g, SamplingPlan(rate=1.0, mode=mode, seed=2))
            assert list(s.edges()) == list(g.edges())
            assert neighborhood_uniqueness(s) == neighborhood_uniqueness(g)

    def test_exact_count_third_of_triangle(self):
        s = sample_edges(TRIANGLE, SamplingPlan(rate=1 / 3, mode="exact-count", seed=3))
        assert s.m == 1
        assert s.n == 3

    def test_tiny_rate_rounds_to_zero_edges(self):
        s = sample_edges(TRIANGLE, SamplingPlan(rate=0.01, mode="exact-count", seed=3))
        assert (s.n, s.m) == (3, 0)

    def test_exact_count_size(self):
        g = gen_er(ModelSpec("er", 200, 8.0, seed=4))
        for rate in (0.25, 0.5, 0.8):
            s = sample_edges(g, SamplingPlan(rate=rate, mode="exact-count", seed=5))
            assert s.m == int(np.floor(rate * g.m + 0.5))

    def test_nodes_and_labels_preserved(self):
        s = sample_edges(TRIANGLE, SamplingPlan(rate=0.34, mode="exact-count", seed=6))
        assert s.n == TRIANGLE.n
        assert s.labels == TRIANGLE.labels

    def test_deterministic(self):
        g = gen_er(ModelSpec("er", 150, 6.0, seed=7))
        plan = SamplingPlan(rate=0.4, seed=8)
        assert list(sample_edges(g, plan).edges()) == list(sample_edges(g, plan).edges())

    def test_composition_matches_product_rate(self):
        # sampling at s1 then s2 retains each edge like one pass at s1*s2
        g = load_edge_list("\n".join(f"n{i} n{(i + 1) % 12}" for i in range(12)))
        s1, s2 = 0.8, 0.6
        trials = 10_000
        twice = np.zeros(g.m)
        once = np.zeros(g.m)
        edges = list(g.edges())
        for t in range(trials):
            g1 = sample_edges(g, SamplingPlan(rate=s1, seed=substream_seed(9, t, 0)))
            g2 = sample_edges(g1, SamplingPlan(rate=s2, seed=substream_seed(9, t, 1)))
            kept = set(g2.edges())
            for idx, e in enumerate(edges):
                twice[idx] += e in kept
            gp = sample_edges(
                g, SamplingPlan(rate=s1 * s2, seed=substream_seed(9, t, 2))
            )
            kept = set(gp.edges())
            for idx, e in enumerate(edges):
                once[idx] += e in kept
        se = np.sqrt(2 * s1 * s2 * (1 - s1 * s2) / trials)
        assert np.all(np.abs(twice - once) / trials <= 4 * se)


class TestEstimators:
    def test_degree_arithmetic(self):
        assert estimate_degree(3, 0.5) == 6.0
        assert estimate_degree(7, 1.0) == 7.0

    def test_triangle_arithmetic(self):
        assert estimate_triangles(2, 0.5) == 16.0
        assert estimate_triangles(5, 1.0) == 5.0

    def test_zero_rate_rejected(self):
        with pytest.raises(ValueError):
            estimate_degree(3, 0.0)
        with pytest.raises(ValueError):
            estimate_triangles(3, 0.0)

    def test_unbiased_under_bernoulli(self):
        g = gen_er(ModelSpec("er", 200, 8.0, seed=10))
        true_mean_degree = 2 * g.m / g.n
        true_triangles = triangle_count(g)
        rate, trials = 0.5, 300
        deg_means, tri_vals = [], []
        for t in range(trials):
            s = sample_edges(g, SamplingPlan(rate=rate, seed=substream_seed(11, t)))
            deg_means.append(np.mean([estimate_degree(d, rate) for d in s.degrees()]))
            tri_vals.append(estimate_triangles(triangle_count(s), rate))
        for observed, truth in [(deg_means, true_mean_degree), (tri_vals, true_triangles)]:
            observed = np.array(observed)
            sem = observed.std(ddof=1) / np.sqrt(trials)
            assert abs(observed.mean() - truth) <= 3 * sem


class TestReport:
    def test_rate_one_row_has_zero_errors(self):
        g = gen_er(ModelSpec("er", 120, 6.0, seed=12))
        rep = sampling_report(g, rates=[1.0], seed=13)
        row = rep.rows[0]
        assert row.degree_error == 0.0
        assert row.triangle_error == 0.0
        assert row.uniqueness == neighborhood_uniqueness(g)

    def test_rows_sorted_decreasing(self):
        g = gen_er(ModelSpec("er", 120, 6.0, seed=12))
        rep = sampling_report(g, rates=[0.2, 1.0, 0.6], seed=13)
        assert [r.rate for r in rep.rows] == [1.0, 0.6, 0.2]

    def test_triangle_collapses_to_single_class(self):
        rep = sampling_report(TRIANGLE, rates=[1.0, 0.01], seed=14, mode="exact-count")
        assert rep.rows[0].uniqueness == 0.0  # K3 neighborhoods all alike
        assert rep.rows[-1].uniqueness == 0.0  # empty neighborhoods all alike

    def test_invalid_rates(self):
        with pytest.raises(ValueError):
            sampling_report(TRIANGLE, rates=[0.5, 0.0], seed=15)
