import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import matassoc as ma
from matassoc.errors import InvalidK
from matassoc.graphassoc import build_graph, graph_statistic

import oracles


def test_knn_collinear_points():
    d = ma.pairwise_distance(np.array([0.0, 1.0, 3.0]))
    assert ma.knn_graph(d, 1).edges == {(0, 1), (1, 2)}


def test_knn_complete_graph(rng):
    d = ma.pairwise_distance(rng.standard_normal((6, 2)))
    assert len(ma.knn_graph(d, 5).edges) == 15
    with pytest.raises(InvalidK):
        ma.knn_graph(d, 6)


def test_knn_ties_use_smaller_index():
    d = ma.pairwise_distance(np.array([0.0, 0.0, 0.0, 5.0]))
    g = ma.knn_graph(d, 1)
    assert g.edges == {(0, 1), (0, 2), (0, 3)}
    assert ma.knn_graph(d, 1) == g


def test_mst_small_cases():
    d = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]], dtype=float)
    assert ma.mst(d).edges == {(0, 1), (1, 2)}
    assert ma.mst(np.array([[0.0, 3.0], [3.0, 0.0]])).edges == {(0, 1)}


@given(st.integers(0, 10_000), st.integers(3, 7))
def test_mst_weight_is_minimal(seed, n):
    rng = np.random.default_rng(seed)
    d = ma.pairwise_distance(rng.standard_normal((n, 2))).values
    g = ma.mst(d)
    assert len(g.edges) == n - 1
    weight = sum(d[i, j] for i, j in g.edges)
    assert weight == pytest.approx(oracles.spanning_tree_min_weight(d), rel=1e-12)


def test_k_mst_edge_disjoint(rng):
    d = ma.pairwise_distance(rng.standard_normal((10, 2)))
    one, two = ma.mst(d), ma.mst(d, 2)
    assert one.edges < two.edges
    assert len(two.edges) == 18


def test_common_edges(rng):
    d = ma.pairwise_distance(rng.standard_normal((8, 2)))
    g = ma.knn_graph(d, 2)
    assert ma.common_edges(g, g) == len(g.edges)
    path = ma.NeighborGraph(4, frozenset({(0, 1), (1, 2), (2, 3)}), "custom")
    other = ma.NeighborGraph(4, frozenset({(0, 2), (1, 3), (0, 3)}), "custom")
    assert ma.common_edges(path, other) == 0


@given(st.integers(0, 10_000))
def test_statistic_counts_common_edges(seed):
    rng = np.random.default_rng(seed)
    dx = ma.pairwise_distance(rng.standard_normal((12, 2)))
    dy = ma.pairwise_distance(rng.standard_normal((12, 3)))
    ms = graph_statistic(dx, dy, kind="knn", k=3)
    t = np.sum(ms.left * ms.right)
    assert ms.finish(t) == ma.common_edges(ma.knn_graph(dx, 3), ma.knn_graph(dy, 3))


@given(st.integers(0, 10_000), st.sampled_from(["knn", "mst"]))
def test_graph_invariant_under_monotone_map(seed, kind):
    rng = np.random.default_rng(seed)
    d = ma.pairwise_distance(rng.standard_normal((10, 2))).values
    assert build_graph(d, kind, 3).edges == build_graph(d**3, kind, 3).edges


def test_relabel_matches_permuted_distances(rng):
    d = ma.pairwise_distance(rng.standard_normal((9, 2))).values
    s = rng.permutation(9)
    # node i of the permuted matrix is node s[i] of the original
    assert ma.knn_graph(d[np.ix_(s, s)], 2).relabel(s).edges == ma.knn_graph(d, 2).edges
    assert ma.mst(d[np.ix_(s, s)]).relabel(s).edges == ma.mst(d).edges


def test_graph_test_identical_inputs(rng):
    d = ma.pairwise_distance(rng.standard_normal((30, 3)))
    res = ma.graph_test(d, d, "knn", ma.TestPlan(replicates=199, seed=1), k=3)
    assert res.p_value == pytest.approx(1 / 200)
    assert res.observed == len(ma.knn_graph(d, 3).edges)
    assert res.meta["edges_x"] == res.meta["edges_y"]


def test_graph_test_methods(rng):
    d = ma.pairwise_distance(rng.standard_normal((6, 2)))
    e = ma.pairwise_distance(rng.standard_normal((6, 2)))
    res = ma.graph_test(d, e, "mst", ma.TestPlan("permutation_exact"), k=1)
    assert res.replicates_used == 720
    with pytest.raises(ma.AssocError):
        ma.graph_test(d, e, "knn", ma.TestPlan("pearson3"), k=2)
