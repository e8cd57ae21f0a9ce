import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import matassoc as ma
from matassoc.coefficients import first_eigenvalue
from matassoc.errors import (
    DimensionMismatch,
    InvalidCorrelation,
    NotPreprocessed,
    NotPSD,
    NotStandardized,
    TooFewObservations,
)

import oracles
from conftest import random_orthogonal, table_pairs


# ---------------------------------------------------------------- RV family


def test_rv_self_is_one(rng):
    x = rng.standard_normal((15, 4))
    assert ma.rv(x, x).value == pytest.approx(1.0, abs=1e-14)


@given(st.integers(0, 10_000))
def test_rv_scalar_is_squared_correlation(seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(12)
    y = x + rng.standard_normal(12)
    r = np.corrcoef(x, y)[0, 1]
    assert ma.rv(x, y).value == pytest.approx(r * r, abs=1e-12)
    assert ma.rls(x, y).value == pytest.approx(abs(r), abs=1e-12)


def test_rv_orthogonal_blocks_is_zero():
    basis = np.linalg.svd(np.eye(8) - 1 / 8)[0]
    x, y = basis[:, :2], basis[:, 2:5]
    assert ma.rv(x, y).value == pytest.approx(0.0, abs=1e-14)
    assert ma.rls(x, y).value == pytest.approx(0.0, abs=1e-14)


@given(table_pairs())
def test_rv_forms_agree(pair):
    x, y = pair
    assert ma.rv(x, y).value == pytest.approx(ma.rv(x, y, form="distance").value, abs=1e-10)


@given(table_pairs(min_n=4))
def test_rv_standardized_matches_correlation_form(pair):
    x, y = pair
    xs, ys = ma.preprocess(x, "standardize"), ma.preprocess(y, "standardize")
    assert ma.rv(xs, ys).value == pytest.approx(oracles.rv_sum_of_correlations(x, y), abs=1e-10)


def test_rv_refuses_raw_table():
    t = ma.DataTable(np.arange(8.0).reshape(4, 2) ** 2)
    with pytest.raises(NotPreprocessed):
        ma.rv(t, t)


def test_rv_dimension_mismatch(rng):
    with pytest.raises(DimensionMismatch):
        ma.rv(rng.standard_normal((5, 2)), rng.standard_normal((6, 2)))


def test_null_expectation_orthonormal_and_scalar():
    n = 9
    basis = np.linalg.svd(np.eye(n) - 1 / n)[0]
    x, y = basis[:, :2], basis[:, 2:5]
    assert ma.rv_null_expectation(x, y) == pytest.approx(math.sqrt(2 * 3) / (n - 1), rel=1e-12)
    rng = np.random.default_rng(3)
    a, b = rng.standard_normal(n), rng.standard_normal(n)
    assert ma.rv_null_expectation(a, b) == pytest.approx(1 / (n - 1), rel=1e-12)


def test_complexity_collinear_columns_is_one(rng):
    z = rng.standard_normal(10)
    x = np.column_stack([z, 2 * z, -z])
    assert ma.complexity(x) == pytest.approx(1.0, rel=1e-12)


@given(st.integers(0, 10_000), st.integers(4, 7))
def test_null_expectation_is_permutation_mean(seed, n):
    # enumeration oracle over all n! row orders
    import itertools

    rng = np.random.default_rng(seed)
    x, y = rng.standard_normal((n, 3)), rng.standard_normal((n, 2))
    vals = [ma.rv(x, y[list(s)]).value for s in itertools.permutations(range(n))]
    assert np.mean(vals) == pytest.approx(ma.rv_null_expectation(x, y), rel=1e-10)


def test_rv_debiased_identity(rng):
    x, y = rng.standard_normal((10, 3)), rng.standard_normal((10, 4))
    d = ma.rv_debiased(x, y)
    assert d.value + d.null_expectation == pytest.approx(ma.rv(x, y).value, abs=1e-14)
    assert ma.rv_debiased(x, x).value == pytest.approx(1 - ma.rv_null_expectation(x, x))
    assert ma.rv_debiased(x, x).value > 0


def test_rv_mod_self_and_sign(rng):
    x = rng.standard_normal((10, 3))
    assert ma.rv_mod(x, x).value == pytest.approx(1.0, abs=1e-14)
    # a 3-point design whose off-diagonal cross-products flip sign
    xa = np.array([[1.0], [-1.0], [0.0]])
    ya = np.array([[1.0], [1.0], [-2.0]])
    wa, wb = xa @ xa.T, ya @ ya.T
    np.fill_diagonal(wa, 0)
    np.fill_diagonal(wb, 0)
    assert np.sum(wa * wb) < 0
    assert ma.rv_mod(xa, ya).value < 0


def test_rv_mod_near_zero_under_null():
    # mean-zero data used as given, the setting of the high-dimensional claim
    rng = np.random.default_rng(11)
    vals = [ma.rv_mod(rng.standard_normal((20, 100)), rng.standard_normal((20, 100)),
                      center=False).value
            for _ in range(500)]
    assert abs(np.median(vals)) < 0.05


def test_rv_mod_column_centering_offset():
    # centering induces a shared offset -tr/(n(n-1)) off the diagonal;
    # with p = q = 100 and n = 20 it dominates: cosine near 25/(25+100)
    rng = np.random.default_rng(12)
    vals = [ma.rv_mod(rng.standard_normal((20, 100)), rng.standard_normal((20, 100))).value
            for _ in range(200)]
    assert 0.15 < np.median(vals) < 0.3


def test_rv_adj_properties(rng):
    x = rng.standard_normal(12)
    y = x + rng.standard_normal(12)
    n = 12
    r = np.corrcoef(x, y)[0, 1]
    assert ma.rv_adj(x, y).value == pytest.approx(1 - (n - 1) / (n - 2) * (1 - r * r), abs=1e-12)
    xx = rng.standard_normal((12, 3))
    assert ma.rv_adj(xx, xx).value == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(NotStandardized):
        ma.rv_adj(ma.preprocess(xx, "center"), ma.preprocess(xx, "center"))


def test_rv_adj_ranks_like_rv(rng):
    x, y = rng.standard_normal((15, 3)), rng.standard_normal((15, 2))
    xs, ys = ma.preprocess(x, "standardize"), ma.preprocess(y, "standardize")
    perms = [rng.permutation(15) for _ in range(40)]
    a = [ma.rv(xs, ys.take_rows(s)).value for s in perms]
    b = [ma.rv_adj(xs, ys.take_rows(s)).value for s in perms]
    assert np.array_equal(np.argsort(a), np.argsort(b))


def test_rls_orthogonal_transform_is_one(rng):
    x = rng.standard_normal((10, 4))
    assert ma.rls(x, x @ random_orthogonal(rng, 4)).value == pytest.approx(1.0, abs=1e-12)


def test_procrustes_rotation_recovered():
    rng = np.random.default_rng(4)
    x = rng.standard_normal((8, 2))
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    res = ma.procrustes_align(x, x @ rot)
    assert np.allclose(res.rotation, rot.T, atol=1e-12)
    assert res.residual < 1e-10


def test_procrustes_scale_recovered(rng):
    x = rng.standard_normal((8, 3))
    res = ma.procrustes_align(x, 3 * x + np.array([1.0, -2.0, 5.0]))
    assert res.scale == pytest.approx(1 / 3, rel=1e-12)
    assert res.residual < 1e-10


def test_procrustes_independent_keeps_rls(rng):
    x, y = rng.standard_normal((12, 3)), rng.standard_normal((12, 3))
    res = ma.procrustes_align(x, y)
    assert res.residual > 0
    assert ma.rls(x, res.aligned.values).value == pytest.approx(ma.rls(x, y).value, abs=1e-10)


def test_lg_rank_one_and_pc(rng):
    z = rng.standard_normal(20)
    x1 = np.column_stack([z, 3 * z])
    assert ma.lg(x1, x1).value == pytest.approx(1.0, rel=1e-12)
    x = rng.standard_normal((20, 4)) @ np.diag([3.0, 2.0, 1.0, 0.5])
    xc = x - x.mean(0)
    pc = np.linalg.svd(xc, full_matrices=False)[0][:, 0]
    assert ma.lg(pc[:, None], x).value == pytest.approx(1.0, rel=1e-10)


def test_lg_self_is_sum_of_squared_ratios(rng):
    x = rng.standard_normal((25, 4))
    lam = np.linalg.eigvalsh(np.cov(x.T))[::-1]
    assert ma.lg(x, x).value == pytest.approx(np.sum((lam / lam[0]) ** 2), rel=1e-10)
    assert first_eigenvalue(x) == pytest.approx(lam[0], rel=1e-12)


def test_lg_orthogonal_is_zero():
    basis = np.linalg.svd(np.eye(7) - 1 / 7)[0]
    assert ma.lg(basis[:, :1], basis[:, 1:4]).value == pytest.approx(0.0, abs=1e-14)


# ---------------------------------------------------------- distance family


@given(table_pairs(min_n=3, max_n=12), st.sampled_from([0.5, 1.0, 1.5, 2.0]))
def test_dcov_matches_loop_oracle(pair, alpha):
    x, y = pair
    v = ma.dcov(x, y, alpha).value
    assert v == pytest.approx(oracles.dcov2_loops(x, y, alpha), abs=1e-10)
    assert v == pytest.approx(ma.dcov_three_term(x, y, alpha), abs=1e-10)


def test_dcov_constant_table_is_zero(rng):
    assert ma.dcov(np.ones((6, 2)), rng.standard_normal((6, 2))).value == 0.0


@given(st.integers(0, 10_000))
def test_dcov_two_points_warns(seed):
    # centered 2x2 distance matrices are (d/2) [[-1, 1], [1, -1]], so the
    # value is d_x d_y / 4, not zero
    rng = np.random.default_rng(seed)
    x, y = rng.standard_normal((2, 3)), rng.standard_normal((2, 2))
    with pytest.warns(RuntimeWarning):
        v = ma.dcov(x, y)
    expected = oracles.dist(x)[0, 1] * oracles.dist(y)[0, 1] / 4
    assert v.value == pytest.approx(expected, rel=1e-12)
    assert v.value == pytest.approx(oracles.dcov2_loops(x, y), rel=1e-12)
    assert "warning" in v.meta


def test_dcor_properties(rng):
    x = rng.standard_normal((15, 3))
    assert ma.dcor(x, x).value == pytest.approx(1.0, abs=1e-12)
    y = -2.5 * x @ random_orthogonal(rng, 3) + 7.0
    assert ma.dcor(x, y).value == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(TooFewObservations):
        ma.dcor(x[:2], x[:2])


@given(table_pairs())
def test_dcor_alpha_two_squares_to_rv(pair):
    x, y = pair
    assert ma.dcor(x, y, 2.0).value ** 2 == pytest.approx(ma.rv(x, y).value, abs=1e-10)


@given(table_pairs(min_n=5, max_n=14), st.sampled_from([0.5, 1.0, 1.5]))
def test_dcor_star_matches_u_centered_oracle(pair, alpha):
    x, y = pair
    assert ma.dcor_star(x, y, alpha).value == pytest.approx(oracles.dcor_u(x, y, alpha), abs=1e-10)


def test_dcor_star_self_approaches_one():
    rng = np.random.default_rng(5)
    vals = []
    for n in (10, 40, 160):
        x = rng.standard_normal((n, 2))
        y = x + 0.3 * rng.standard_normal((n, 2))
        vals.append(ma.dcor_star(x, y).value)
    assert vals[-1] > 0.8


def test_dcor_gaussian_values():
    assert ma.dcor_gaussian(0.0) == pytest.approx(0.0, abs=1e-12)
    assert ma.dcor_gaussian(1.0) == pytest.approx(1.0, abs=1e-12)
    v = ma.dcor_gaussian(0.5)
    assert 0 < v < 0.25
    with pytest.raises(InvalidCorrelation):
        ma.dcor_gaussian(1.5)


@given(st.floats(-1, 1))
def test_dcor_gaussian_bounded_by_r_squared(r):
    assert -1e-12 <= ma.dcor_gaussian(r) <= r * r + 1e-12


# ----------------------------------------------------- dissimilarity inputs


def test_mantel_examples(rng):
    d = ma.pairwise_distance(rng.standard_normal((7, 2))).values
    assert ma.mantel(d, d).value == pytest.approx(1.0, abs=1e-14)
    off = 2 * d + 5
    np.fill_diagonal(off, 0)
    assert ma.mantel(d, off).value == pytest.approx(1.0, abs=1e-12)


def test_mantel_reversed_four_points():
    dx = ma.pairwise_distance(np.array([0.0, 1.0, 2.0, 3.0])).values
    iu = np.triu_indices(4, 1)
    dy = np.zeros((4, 4))
    dy[iu] = dx[iu].max() + 1 - dx[iu]
    dy = dy + dy.T
    expected = oracles.pearson_upper(dx, dy)
    assert expected < 0
    assert ma.mantel(dx, dy).value == pytest.approx(expected, abs=1e-14)


@given(table_pairs(min_n=3))
def test_grv_on_euclidean_distances_is_rv(pair):
    x, y = pair
    g = ma.grv(ma.pairwise_distance(x), ma.pairwise_distance(y)).value
    assert g == pytest.approx(ma.rv(x, y).value, abs=1e-10)


def test_grv_non_euclidean_bounded(rng):
    for _ in range(20):
        a = rng.uniform(0.1, 3, size=(6, 6))
        a = np.triu(a, 1) + np.triu(a, 1).T
        b = rng.uniform(0.1, 3, size=(6, 6))
        b = np.triu(b, 1) + np.triu(b, 1).T
        assert abs(ma.grv(a, b).value) <= 1 + 1e-10
    assert ma.grv(a, a).value == pytest.approx(1.0)


@given(table_pairs())
def test_hsic_linear_kernels_is_rv_numerator(pair):
    x, y = pair
    xc, yc = x - x.mean(0), y - y.mean(0)
    num = np.sum((xc.T @ yc) ** 2)
    assert ma.hsic(ma.linear_kernel(x), ma.linear_kernel(y)).value == pytest.approx(num, rel=1e-10, abs=1e-10)


def test_hsic_zero_and_normalized(rng):
    k = ma.gaussian_kernel(rng.standard_normal((9, 2)))
    assert ma.hsic(k, np.zeros((9, 9))).value == 0.0
    assert ma.hsic(k, k, normalized=True).value == pytest.approx(1.0, abs=1e-12)


def test_hsic_rejects_indefinite():
    with pytest.raises(NotPSD):
        ma.hsic(np.diag([1.0, -1.0]), np.eye(2))


def test_gaussian_kernel_bandwidth(rng):
    x = rng.standard_normal((10, 2))
    d = oracles.dist(x)
    sigma = np.median(d[np.triu_indices(10, 1)])
    assert ma.median_bandwidth(x) == pytest.approx(sigma, rel=1e-12)
    k = ma.gaussian_kernel(x, center=False).values
    assert np.allclose(k, np.exp(-d**2 / (2 * sigma**2)), atol=1e-14)


def test_coefficient_dispatch(rng):
    x, y = rng.standard_normal((10, 2)), rng.standard_normal((10, 3))
    assert ma.coefficient("dcor", x, y, alpha=0.5).value == ma.dcor(x, y, 0.5).value
    assert float(ma.coefficient("rv", x, y)) == ma.rv(x, y).value
