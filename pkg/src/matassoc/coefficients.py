"""Scalar association coefficients between two tables or two dissimilarity
matrices.

Functions taking tables accept a :class:`~matassoc.geometry.DataTable` or a
bare array.  Cross-product coefficients (``rv``, ``rls``, ``lg``...) center
bare arrays themselves and refuse tables marked ``raw``.  Distance-based
coefficients (``dcov``, ``dcor``...) are translation invariant and take
tables in any state.

Every coefficient returns a :class:`CoefficientValue`, which converts to
``float``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    AssocError,
    DegenerateTable,
    DimensionMismatch,
    InternalConsistencyError,
    InvalidCorrelation,
    NotPSD,
    NotStandardized,
    TooFewObservations,
)
from .geometry import (
    DataTable,
    SquareMatrix,
    _check_alpha,
    _double_center_array,
    _symmetrized,
    as_square,
    as_table,
    centered,
    pairwise_distance,
    preprocess,
)

KINDS = (
    "rv", "rv_debiased", "rv_mod", "rv_adj", "rls", "lg", "dcov", "dcor",
    "dcor_star", "mantel", "grv", "hsic",
)

NEGATIVE_TOL = 1e-12


@dataclass(frozen=True)
class CoefficientValue:
    kind: str
    value: float
    null_expectation: float | None = None
    alpha: float | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __float__(self) -> float:
        return self.value


def _clamp_nonnegative(value: float, what: str) -> float:
    if value < 0:
        if value < -NEGATIVE_TOL:
            raise InternalConsistencyError(f"{what} is negative ({value:.3g})")
        return 0.0
    return value


def _clamp_unit(value: float) -> float:
    # cosines can overshoot 1 by a few ulps
    return float(min(max(value, -1.0), 1.0))


def _same_n(a, b):
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(
            f"inputs have different numbers of observations ({a.shape[0]} vs {b.shape[0]})"
        )


def _pair(x, y):
    x, y = centered(x), centered(y)
    _same_n(x.values, y.values)
    return x.values, y.values


def _small_gram(x: np.ndarray) -> np.ndarray:
    """``X'X`` or ``XX'``, whichever is smaller; both share nonzero spectra."""
    return x.T @ x if x.shape[1] <= x.shape[0] else x @ x.T


def _norm_or_raise(m: np.ndarray, which: str) -> float:
    norm = float(np.sqrt(np.sum(m * m)))
    if norm == 0.0:
        raise DegenerateTable(f"{which} has a zero cross-product matrix")
    return norm


# ---------------------------------------------------------------- RV family


def rv(x, y, *, form: str = "covariance") -> CoefficientValue:
    """RV coefficient: cosine between the cross-product matrices.

    ``form="covariance"`` evaluates ``||X'Y||^2 / (||X'X|| ||Y'Y||)``, which
    costs ``O(n p q)``.  ``form="distance"`` goes through double-centered
    squared distance matrices instead; both give the same number.
    """
    if form == "distance":
        xt, yt = centered(x), centered(y)
        _same_n(xt.values, yt.values)
        a = _double_center_array(pairwise_distance(xt, 2).values)
        b = _double_center_array(pairwise_distance(yt, 2).values)
        value = _cosine(a, b, "X", "Y")
    elif form == "covariance":
        xv, yv = _pair(x, y)
        num = float(np.sum((xv.T @ yv) ** 2))
        value = num / (
            _norm_or_raise(_small_gram(xv), "X") * _norm_or_raise(_small_gram(yv), "Y")
        )
    else:
        raise AssocError(f"unknown form {form!r}")
    return CoefficientValue("rv", _clamp_unit(_clamp_nonnegative(value, "RV")))


def _cosine(a: np.ndarray, b: np.ndarray, na: str, nb: str) -> float:
    return float(np.sum(a * b)) / (_norm_or_raise(a, na) * _norm_or_raise(b, nb))


def complexity(x) -> float:
    """``(tr X'X)^2 / tr((X'X)^2)``: 1 for rank one, ``p`` for isotropic."""
    xv = centered(x).values
    s = _small_gram(xv)
    denom = float(np.sum(s * s))
    if denom == 0.0:
        raise DegenerateTable("table has zero variance")
    return float(np.trace(s)) ** 2 / denom


def rv_null_expectation(x, y) -> float:
    """Mean of the RV coefficient over all row permutations of ``y``."""
    xv, yv = _pair(x, y)
    n = xv.shape[0]
    return math.sqrt(complexity(xv) * complexity(yv)) / (n - 1)


def rv_debiased(x, y) -> CoefficientValue:
    """RV minus its permutation-null expectation."""
    r = rv(x, y).value
    e = rv_null_expectation(x, y)
    return CoefficientValue("rv_debiased", r - e, null_expectation=e)


def _offdiag(w: np.ndarray) -> np.ndarray:
    w = w.copy()
    np.fill_diagonal(w, 0.0)
    return w


def rv_mod(x, y, *, center: bool = True) -> CoefficientValue:
    """Modified RV: cosine between cross-product matrices with their
    diagonals removed.  Can be negative.

    Parameters
    ----------
    x, y : DataTable or array_like
    center : bool
        With ``center=False`` the values are used as given, for data whose
        population mean is known to be zero.  Column centering makes the
        off-diagonal cross-products share a negative offset of about
        ``-tr(XX')/(n(n-1))``, so under independence the centered
        coefficient sits above zero when ``p`` and ``q`` are large
        compared with ``n``.
    """
    if center:
        xv, yv = _pair(x, y)
    else:
        xv, yv = as_table(x).values, as_table(y).values
        _same_n(xv, yv)
    _require_n(xv, 3, "rv_mod")
    a, b = _offdiag(xv @ xv.T), _offdiag(yv @ yv.T)
    return CoefficientValue("rv_mod", _clamp_unit(_cosine(a, b, "X", "Y")))


def _standardized(x) -> np.ndarray:
    if isinstance(x, DataTable):
        if x.preprocessing != "standardized":
            raise NotStandardized("rv_adj requires standardized columns")
        return x.values
    return preprocess(x, "standardize").values


def _adjusted_r2(r: np.ndarray, n: int) -> np.ndarray:
    return 1.0 - (n - 1) / (n - 2) * (1.0 - r * r)


def rv_adj(x, y) -> CoefficientValue:
    """Adjusted RV on standardized tables.

    Each squared correlation in the sum-of-correlations form of RV is
    replaced by its adjusted version ``1 - (n-1)/(n-2) (1 - r^2)``.
    """
    xv, yv = _standardized(x), _standardized(y)
    _same_n(xv, yv)
    n = xv.shape[0]
    if n < 3:
        raise TooFewObservations("rv_adj needs n >= 3")
    rxy = xv.T @ yv / (n - 1)
    rxx = xv.T @ xv / (n - 1)
    ryy = yv.T @ yv / (n - 1)
    num = float(np.sum(_adjusted_r2(rxy, n)))
    dx = float(np.sum(_adjusted_r2(rxx, n)))
    dy = float(np.sum(_adjusted_r2(ryy, n)))
    if dx <= 0 or dy <= 0:
        raise DegenerateTable("adjusted self-association is not positive")
    return CoefficientValue("rv_adj", num / math.sqrt(dx * dy))


def rls(x, y) -> CoefficientValue:
    """Procrustes (Lingoes-Schonemann) coefficient.

    Nuclear norm of ``X'Y`` over ``sqrt(tr X'X tr Y'Y)``.
    """
    xv, yv = _pair(x, y)
    nuclear = float(np.linalg.svd(xv.T @ yv, compute_uv=False).sum())
    tx, ty = float(np.sum(xv * xv)), float(np.sum(yv * yv))
    if tx == 0 or ty == 0:
        raise DegenerateTable("a table has zero total variance")
    return CoefficientValue("rls", _clamp_unit(nuclear / math.sqrt(tx * ty)))


@dataclass(frozen=True)
class ProcrustesResult:
    rotation: np.ndarray
    scale: float
    translation: np.ndarray
    aligned: DataTable
    residual: float


def procrustes_align(x, y) -> ProcrustesResult:
    """Superimpose ``y`` onto ``x`` by translation, orthogonal map and scaling.

    The returned ``aligned`` table is ``scale * (y - mean(y)) @ rotation +
    translation`` and minimizes the Frobenius distance to ``x``.  The
    orthogonal map may include a reflection.
    """
    xt, yt = as_table(x), as_table(y)
    if xt.shape != yt.shape:
        raise DimensionMismatch(f"procrustes needs equal shapes, got {xt.shape} and {yt.shape}")
    xm = xt.values.mean(axis=0)
    xc = xt.values - xm
    yc = yt.values - yt.values.mean(axis=0)
    ss = float(np.sum(yc * yc))
    if ss == 0:
        raise DegenerateTable("y is a single point")
    u, s, vt = np.linalg.svd(yc.T @ xc)
    rotation = u @ vt
    scale = float(s.sum()) / ss
    aligned = scale * (yc @ rotation) + xm
    residual = float(np.sum((xt.values - aligned) ** 2))
    return ProcrustesResult(
        rotation=rotation,
        scale=scale,
        translation=xm,
        aligned=DataTable(aligned, yt.row_labels, yt.col_labels),
        residual=residual,
    )


def first_eigenvalue(x) -> float:
    """Largest eigenvalue of the sample covariance matrix."""
    xv = centered(x).values
    lam = np.linalg.eigvalsh(_small_gram(xv))[-1] / (xv.shape[0] - 1)
    if lam <= 0:
        raise DegenerateTable("table has zero variance")
    return float(lam)


def lg(x, y) -> CoefficientValue:
    """Lg coefficient of multiple factor analysis.

    Inner product of the covariance-scaled cross-product matrices
    ``X X' / (n-1)``, each divided by its table's first covariance
    eigenvalue.  ``lg(z, X)`` for one standardized variable ``z`` is
    ``sum_l cov(X_l, z)^2 / lambda_1``; ``lg(X, X)`` is
    ``sum_l (lambda_l / lambda_1)^2``.
    """
    xv, yv = _pair(x, y)
    n = xv.shape[0]
    lx, ly = first_eigenvalue(xv), first_eigenvalue(yv)
    num = float(np.sum((xv.T @ yv) ** 2)) / (n - 1) ** 2
    return CoefficientValue("lg", _clamp_nonnegative(num / (lx * ly), "Lg"))


# ---------------------------------------------------------- distance family


def _require_n(v: np.ndarray, minimum: int, what: str):
    if v.shape[0] < minimum:
        raise TooFewObservations(f"{what} needs n >= {minimum}, got n={v.shape[0]}")


def centered_distances(x, alpha: float = 1.0) -> np.ndarray:
    """Double-centered ``alpha``-power distance matrix of a table."""
    return _double_center_array(pairwise_distance(x, alpha).values)


def dcov_three_term(x, y, alpha: float = 1.0) -> float:
    """Squared distance covariance from row, column and grand means of the
    raw distance matrices (no double centering)."""
    xt, yt = as_table(x), as_table(y)
    _same_n(xt.values, yt.values)
    a = pairwise_distance(xt, alpha).values
    b = pairwise_distance(yt, alpha).values
    n = a.shape[0]
    return float(
        np.sum(a * b) / n**2
        + a.mean() * b.mean()
        - 2.0 / n * np.sum(a.mean(axis=1) * b.mean(axis=1))
    )


def dcov(x, y, alpha: float = 1.0) -> CoefficientValue:
    """Squared sample distance covariance ``dCov_n^2``.

    Mean elementwise product of the double-centered ``alpha``-power distance
    matrices.  With ``n = 2`` the value is ``d_x d_y / 4`` for the two
    pairwise distances and says nothing about dependence; a warning is
    issued.
    """
    _check_alpha(alpha)
    xt, yt = as_table(x), as_table(y)
    _same_n(xt.values, yt.values)
    n = xt.n
    meta = {}
    if n == 2:
        msg = "dcov with n=2 only reflects the two pairwise distances"
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        meta["warning"] = msg
    a, b = centered_distances(xt, alpha), centered_distances(yt, alpha)
    value = _clamp_nonnegative(float(np.sum(a * b)) / n**2, "dCov")
    return CoefficientValue("dcov", value, alpha=alpha, meta=meta)


def dcor(x, y, alpha: float = 1.0) -> CoefficientValue:
    """Sample distance correlation ``dCor_n`` (the square root of the cosine
    between double-centered ``alpha``-power distance matrices).

    With ``alpha=2`` its square equals the RV coefficient.
    """
    _check_alpha(alpha)
    xt, yt = as_table(x), as_table(y)
    _same_n(xt.values, yt.values)
    _require_n(xt.values, 3, "dcor")
    a, b = centered_distances(xt, alpha), centered_distances(yt, alpha)
    r2 = _clamp_nonnegative(_cosine(a, b, "X", "Y"), "dCor^2")
    return CoefficientValue("dcor", math.sqrt(min(r2, 1.0)), alpha=alpha)


def _ustar(d: np.ndarray) -> np.ndarray:
    """Modified double-centered distance matrix of the bias-corrected
    distance correlation."""
    n = d.shape[0]
    a = _double_center_array(d)
    out = n / (n - 1) * (a - d / n)
    np.fill_diagonal(out, n / (n - 1) * (d.mean(axis=1) - d.mean()))
    return out


def _ustar_inner(a: np.ndarray, b: np.ndarray) -> float:
    n = a.shape[0]
    return (float(np.sum(a * b)) - n / (n - 2) * float(np.sum(np.diag(a) * np.diag(b)))) / (
        n * (n - 3)
    )


def dcor_star(x, y, alpha: float = 1.0) -> CoefficientValue:
    """Bias-corrected distance correlation.

    Approximately unbiased for zero under independence, including when the
    dimensions are large compared with ``n``; it can be negative.
    """
    _check_alpha(alpha)
    xt, yt = as_table(x), as_table(y)
    _same_n(xt.values, yt.values)
    _require_n(xt.values, 4, "dcor_star")
    a = _ustar(pairwise_distance(xt, alpha).values)
    b = _ustar(pairwise_distance(yt, alpha).values)
    vx, vy = _ustar_inner(a, a), _ustar_inner(b, b)
    if vx <= 0 or vy <= 0:
        raise DegenerateTable("bias-corrected distance variance is not positive")
    return CoefficientValue(
        "dcor_star", _clamp_unit(_ustar_inner(a, b) / math.sqrt(vx * vy)), alpha=alpha
    )


_DCOR_GAUSS_DENOM = 1.0 + math.pi / 3.0 - math.sqrt(3.0)


def dcor_gaussian(r: float) -> float:
    """Population squared distance correlation of a bivariate normal with
    correlation ``r``."""
    if not (-1.0 <= r <= 1.0):
        raise InvalidCorrelation(f"|r| must not exceed 1, got {r}")
    num = (
        r * math.asin(r)
        + math.sqrt(1.0 - r * r)
        - r * math.asin(r / 2.0)
        - math.sqrt(4.0 - r * r)
        + 1.0
    )
    return num / _DCOR_GAUSS_DENOM


# ----------------------------------------------------- dissimilarity inputs


def _dissimilarity_pair(dx, dy, minimum: int = 3):
    a = as_square(dx, "distance").values
    b = as_square(dy, "distance").values
    _same_n(a, b)
    _require_n(a, minimum, "this coefficient")
    return a, b


def mantel(dx, dy) -> CoefficientValue:
    """Pearson correlation between the upper triangles of two dissimilarity
    matrices."""
    a, b = _dissimilarity_pair(dx, dy)
    iu = np.triu_indices(a.shape[0], 1)
    u, v = a[iu] - a[iu].mean(), b[iu] - b[iu].mean()
    su, sv = float(np.sum(u * u)), float(np.sum(v * v))
    if su == 0 or sv == 0:
        raise DegenerateTable("an upper triangle is constant")
    return CoefficientValue("mantel", _clamp_unit(float(np.sum(u * v)) / math.sqrt(su * sv)))


def grv(dx, dy) -> CoefficientValue:
    """Generalized RV between two arbitrary dissimilarity matrices.

    Cosine between the double-centered squared dissimilarities.  Lies in
    ``[0, 1]`` when both are Euclidean; otherwise it may be negative.
    """
    a, b = _dissimilarity_pair(dx, dy)
    ca, cb = _double_center_array(a * a), _double_center_array(b * b)
    return CoefficientValue("grv", _clamp_unit(_cosine(ca, cb, "dx", "dy")))


# ------------------------------------------------------------------ kernels


def _check_psd(k: np.ndarray, which: str):
    w = np.linalg.eigvalsh(k)
    top = np.abs(w).max() if w.size else 0.0
    if w.size and w[0] < -1e-8 * top:
        raise NotPSD(f"{which} has a negative eigenvalue ({w[0]:.3g})")


def linear_kernel(x) -> SquareMatrix:
    """Centered cross-product ``X X'``."""
    xv = centered(x).values
    return SquareMatrix(xv @ xv.T, "gram")


def median_bandwidth(x) -> float:
    """Median of the nonzero pairwise Euclidean distances."""
    d = pairwise_distance(x, 1).values
    nz = d[np.triu_indices(d.shape[0], 1)]
    nz = nz[nz > 0]
    if nz.size == 0:
        raise DegenerateTable("all observations coincide")
    return float(np.median(nz))


def gaussian_kernel(x, sigma: float | None = None, *, center: bool = True) -> SquareMatrix:
    """Gaussian kernel ``exp(-d_ij^2 / (2 sigma^2))``.

    ``sigma`` defaults to :func:`median_bandwidth`.  The kernel is
    double-centered unless ``center=False``.
    """
    if sigma is None:
        sigma = median_bandwidth(x)
    if sigma <= 0:
        raise AssocError("sigma must be positive")
    k = np.exp(-pairwise_distance(x, 2).values / (2.0 * sigma * sigma))
    if center:
        k = _double_center_array(k)
    return SquareMatrix(k, "gram")


def hsic(kx, ky, *, normalized: bool = False) -> CoefficientValue:
    """Trace of the product of two kernel matrices.

    ``normalized=True`` divides by both Frobenius norms (the kernel RV).
    """
    a, b = _symmetrized(kx), _symmetrized(ky)
    _same_n(a, b)
    _check_psd(a, "kx")
    _check_psd(b, "ky")
    num = float(np.sum(a * b))
    if normalized:
        return CoefficientValue("hsic", _clamp_unit(num / (_norm_or_raise(a, "kx") * _norm_or_raise(b, "ky"))),
                                meta={"normalized": True})
    return CoefficientValue("hsic", num, meta={"normalized": False})


# -------------------------------------------------------- dispatch by name

COEFFICIENTS: dict[str, Callable[..., CoefficientValue]] = {
    "rv": rv,
    "rv_debiased": rv_debiased,
    "rv_mod": rv_mod,
    "rv_adj": rv_adj,
    "rls": rls,
    "lg": lg,
    "dcov": dcov,
    "dcor": dcor,
    "dcor_star": dcor_star,
    "mantel": mantel,
    "grv": grv,
    "hsic": hsic,
}

ALPHA_KINDS = ("dcov", "dcor", "dcor_star")
MATRIX_KINDS = ("mantel", "grv")


def coefficient(kind: str, x, y, *, alpha: float | None = None) -> CoefficientValue:
    """Evaluate the coefficient named ``kind``.

    ``hsic`` is evaluated on linear kernels of the two tables here; call
    :func:`hsic` directly for other kernels.
    """
    if kind not in COEFFICIENTS:
        raise AssocError(f"unknown coefficient {kind!r}; choose from {', '.join(KINDS)}")
    if kind in ALPHA_KINDS:
        return COEFFICIENTS[kind](x, y, alpha=1.0 if alpha is None else alpha)
    if kind == "hsic":
        return hsic(linear_kernel(x), linear_kernel(y))
    return COEFFICIENTS[kind](x, y)


# -------------------------------------------- forms for permutation testing


@dataclass(frozen=True)
class MatrixStatistic:
    """A coefficient written as a nondecreasing function of
    ``sum_ij left[i, j] * right[s(i), s(j)]`` for a row permutation ``s``.

    ``finish`` maps inner products to coefficient values.  Everything else
    in the coefficient (norms, means) is invariant under permutation.
    """

    kind: str
    left: np.ndarray
    right: np.ndarray
    finish: Callable[[np.ndarray], np.ndarray]
    alpha: float | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.left.shape[0]


def _scaled(c: float):
    return lambda t: np.asarray(t, dtype=float) * c


def matrix_statistic(kind: str, x, y, *, alpha: float | None = None) -> MatrixStatistic | None:
    """Permutation form of ``kind`` or ``None`` when the coefficient is not
    a function of a single permuted inner product (``rls``, ``rv_adj``)."""
    alpha = 1.0 if alpha is None else alpha
    if kind in ("rv", "rv_debiased", "hsic", "lg", "rv_mod"):
        xv, yv = _pair(x, y)
        a, b = xv @ xv.T, yv @ yv.T
        if kind == "rv":
            c = 1.0 / (_norm_or_raise(a, "X") * _norm_or_raise(b, "Y"))
            return MatrixStatistic(kind, a, b, _scaled(c))
        if kind == "rv_debiased":
            c = 1.0 / (_norm_or_raise(a, "X") * _norm_or_raise(b, "Y"))
            e = rv_null_expectation(xv, yv)
            return MatrixStatistic(kind, a, b, lambda t: np.asarray(t) * c - e)
        if kind == "hsic":
            return MatrixStatistic(kind, a, b, _scaled(1.0))
        if kind == "lg":
            n = xv.shape[0]
            c = 1.0 / ((n - 1) ** 2 * first_eigenvalue(xv) * first_eigenvalue(yv))
            return MatrixStatistic(kind, a, b, _scaled(c))
        a, b = _offdiag(a), _offdiag(b)
        c = 1.0 / (_norm_or_raise(a, "X") * _norm_or_raise(b, "Y"))
        return MatrixStatistic(kind, a, b, _scaled(c))
    if kind in ("dcov", "dcor", "dcor_star"):
        _check_alpha(alpha)
        xt, yt = as_table(x), as_table(y)
        _same_n(xt.values, yt.values)
        n = xt.n
        if kind == "dcov":
            a, b = centered_distances(xt, alpha), centered_distances(yt, alpha)
            return MatrixStatistic(kind, a, b, _scaled(1.0 / n**2), alpha)
        if kind == "dcor":
            _require_n(xt.values, 3, "dcor")
            a, b = centered_distances(xt, alpha), centered_distances(yt, alpha)
            c = 1.0 / (_norm_or_raise(a, "X") * _norm_or_raise(b, "Y"))
            return MatrixStatistic(
                kind, a, b, lambda t: np.sqrt(np.clip(np.asarray(t) * c, 0.0, 1.0)), alpha
            )
        _require_n(xt.values, 4, "dcor_star")
        a = _ustar(pairwise_distance(xt, alpha).values)
        b = _ustar(pairwise_distance(yt, alpha).values)
        vx, vy = _ustar_inner(a, a), _ustar_inner(b, b)
        if vx <= 0 or vy <= 0:
            raise DegenerateTable("bias-corrected distance variance is not positive")
        # fold the diagonal correction into the left matrix
        left = a.copy()
        np.fill_diagonal(left, np.diag(a) * (1.0 - n / (n - 2)))
        c = 1.0 / (n * (n - 3) * math.sqrt(vx * vy))
        return MatrixStatistic(kind, left, b, lambda t: np.clip(np.asarray(t) * c, -1.0, 1.0), alpha)
    if kind == "mantel":
        a, b = _dissimilarity_pair(x, y)
        iu = np.triu_indices(a.shape[0], 1)
        left = a - a[iu].mean()
        np.fill_diagonal(left, 0.0)
        u, v = a[iu] - a[iu].mean(), b[iu] - b[iu].mean()
        su, sv = float(np.sum(u * u)), float(np.sum(v * v))
        if su == 0 or sv == 0:
            raise DegenerateTable("an upper triangle is constant")
        # sum over i != j of left * raw right is twice the upper-triangle
        # covariance sum, since left's triangle sums to zero
        c = 0.5 / math.sqrt(su * sv)
        return MatrixStatistic(kind, left, b, lambda t: np.clip(np.asarray(t) * c, -1.0, 1.0))
    if kind == "grv":
        a, b = _dissimilarity_pair(x, y)
        ca, cb = _double_center_array(a * a), _double_center_array(b * b)
        c = 1.0 / (_norm_or_raise(ca, "dx") * _norm_or_raise(cb, "dy"))
        return MatrixStatistic(kind, ca, cb, lambda t: np.clip(np.asarray(t) * c, -1.0, 1.0))
    if kind in ("rls", "rv_adj"):
        return None
    raise AssocError(f"unknown coefficient {kind!r}")
