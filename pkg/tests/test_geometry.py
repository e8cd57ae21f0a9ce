import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import matassoc as ma
from matassoc.errors import (
    AssocError,
    InvalidAlpha,
    NotPreprocessed,
    NotSymmetric,
    ZeroVarianceColumn,
)
from matassoc.geometry import SquareMatrix, embed_gram


def test_preprocess_center_and_standardize():
    t = ma.DataTable(np.array([1.0, 2.0, 3.0]))
    assert np.allclose(ma.preprocess(t, "center").values[:, 0], [-1, 0, 1])
    s = ma.preprocess(t, "standardize")
    assert np.allclose(s.values[:, 0], [-1, 0, 1])
    assert s.preprocessing == "standardized"


def test_standardize_constant_column_names_it():
    t = ma.DataTable(np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 4.0]]), col_labels=("c", "d"))
    with pytest.raises(ZeroVarianceColumn, match="c"):
        ma.preprocess(t, "standardize")


def test_table_is_read_only_and_validated():
    t = ma.DataTable(np.ones((3, 2)))
    with pytest.raises(ValueError):
        t.values[0, 0] = 2.0
    with pytest.raises(AssocError):
        ma.DataTable(np.array([[1.0, np.nan], [2.0, 3.0]]))
    with pytest.raises(AssocError):
        ma.DataTable(np.ones((3, 2)), preprocessing="centered")


def test_cross_product_two_points():
    t = ma.preprocess(np.array([-1.0, 1.0]), "center")
    assert np.allclose(ma.cross_product(t).values, [[1, -1], [-1, 1]])


def test_cross_product_rejects_raw_table():
    with pytest.raises(NotPreprocessed):
        ma.cross_product(ma.DataTable(np.arange(6.0).reshape(3, 2)))


def test_cross_product_orthonormal_trace():
    # orthonormal columns spanning part of the centered subspace
    basis = np.linalg.svd(np.eye(6) - 1 / 6)[0][:, :3]
    w = ma.cross_product(basis).values
    assert np.trace(w) == pytest.approx(3.0, abs=1e-12)


@given(st.integers(0, 10_000))
def test_cross_product_is_psd(seed):
    x = np.random.default_rng(seed).standard_normal((9, 4))
    w = ma.cross_product(x).values
    assert np.linalg.eigvalsh(w).min() >= -1e-10


def test_pairwise_distance_small_cases():
    pts = np.array([0.0, 2.0])
    assert np.allclose(ma.pairwise_distance(pts, 1).values, [[0, 2], [2, 0]])
    assert np.allclose(ma.pairwise_distance(pts, 2).values, [[0, 4], [4, 0]])


def test_pairwise_distance_alpha_half_is_sqrt(rng):
    x = rng.standard_normal((8, 3))
    d1 = ma.pairwise_distance(x, 1).values
    assert np.allclose(ma.pairwise_distance(x, 0.5).values, np.sqrt(d1), atol=1e-14)


@pytest.mark.parametrize("alpha", [0, -1, 2.5])
def test_pairwise_distance_rejects_alpha(alpha):
    with pytest.raises(InvalidAlpha):
        ma.pairwise_distance(np.ones((3, 1)), alpha)


def test_double_center_examples(rng):
    assert np.allclose(ma.double_center([[0.0, 2.0], [2.0, 0.0]]).values, [[-1, 1], [1, -1]])
    a = rng.standard_normal((6, 6))
    once = ma.double_center(a + a.T).values
    assert np.allclose(ma.double_center(once).values, once, atol=1e-12)
    assert np.allclose(ma.double_center(np.full((4, 4), 3.5)).values, 0.0, atol=1e-15)


def test_double_center_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        ma.double_center([[0.0, 1.0], [2.0, 0.0]])


def test_gram_from_distance_examples():
    assert np.allclose(ma.gram_from_distance([[0.0, 4.0], [4.0, 0.0]]).values, [[1, -1], [-1, 1]])
    assert np.allclose(ma.gram_from_distance(np.zeros((3, 3))).values, 0.0)


@given(st.integers(0, 10_000), st.integers(3, 15), st.integers(1, 6))
def test_gram_from_distance_round_trip(seed, n, p):
    x = np.random.default_rng(seed).standard_normal((n, p))
    d2 = ma.pairwise_distance(x, 2)
    assert np.allclose(ma.gram_from_distance(d2).values, ma.cross_product(x).values, atol=1e-9)


def test_frobenius_inner_examples():
    assert ma.frobenius_inner(np.eye(2), np.eye(2)) == 2.0
    assert ma.frobenius_inner(np.ones((2, 2)), np.zeros((2, 2))) == 0.0
    assert ma.frobenius_inner([[1, 2], [2, 1]], [[0, 1], [1, 0]]) == 4.0


def _embedded_distances(coords):
    return np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(-1))


def test_mds_collinear_points():
    d = ma.pairwise_distance(np.array([0.0, 1.0, 2.0]))
    emb = ma.mds(d, dims=3)
    assert emb.dims == 1
    assert np.allclose(_embedded_distances(emb.coordinates), d.values, atol=1e-9)


def test_mds_recovers_planar_configuration(rng):
    conf = rng.standard_normal((10, 2))
    conf -= conf.mean(axis=0)
    emb = ma.mds(ma.pairwise_distance(conf), dims=5)
    assert emb.dims == 2
    # orthogonal Procrustes residual between the two configurations
    u, _, vt = np.linalg.svd(emb.coordinates.T @ conf)
    assert np.allclose(emb.coordinates @ u @ vt, conf, atol=1e-9)


def test_mds_zero_matrix_is_empty():
    emb = ma.mds(np.zeros((4, 4)))
    assert emb.dims == 0
    assert emb.coordinates.shape == (4, 0)


def test_mds_accepts_gram_role():
    g = ma.cross_product(np.array([[0.0], [1.0], [3.0]]))
    emb = ma.mds(g, dims=2)
    assert np.allclose(_embedded_distances(emb.coordinates), [[0, 1, 3], [1, 0, 2], [3, 2, 0]])


def test_embed_gram_counts_negative_eigenvalues():
    emb = embed_gram(np.diag([2.0, -1.0, 0.0]))
    assert emb.dims == 1 and emb.dropped_negative == 1


def test_square_matrix_roles():
    with pytest.raises(AssocError):
        SquareMatrix(np.ones((2, 2)), "distance")
    with pytest.raises(AssocError):
        SquareMatrix(np.eye(3), "centered")
