"""Matrix kernels shared by every coefficient.

Tables are ``n x p`` arrays of observations by variables wrapped in
:class:`DataTable`, which remembers the preprocessing that produced it.
Square ``n x n`` matrices (distances, Gram matrices, double-centered
matrices) are wrapped in :class:`SquareMatrix`, which checks the invariants
of its role on construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import (
    AssocError,
    DimensionMismatch,
    InvalidAlpha,
    NotPreprocessed,
    NotSymmetric,
    ZeroVarianceColumn,
)

SYMMETRY_RTOL = 1e-10
EIGEN_RTOL = 1e-10

PREPROCESSING = ("raw", "centered", "standardized")
ROLES = ("distance", "gram", "centered")


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DataTable:
    """Observations (rows) by variables (columns) with labels.

    Parameters
    ----------
    values : array_like, shape (n, p)
        Finite real entries; ``n >= 2`` and ``p >= 1``.  One-dimensional
        input is read as a single column.
    row_labels, col_labels : sequence of str, optional
        Default to ``"0", "1", ...`` and ``"V1", "V2", ...``.
    preprocessing : {"raw", "centered", "standardized"}
        Checked against the column moments on construction.
    """

    values: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()
    preprocessing: str = "raw"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2:
            raise AssocError(f"a table must be two-dimensional, got ndim={v.ndim}")
        n, p = v.shape
        if n < 2 or p < 1:
            raise AssocError(f"a table needs n >= 2 rows and p >= 1 columns, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise AssocError("table entries must be finite")
        if self.preprocessing not in PREPROCESSING:
            raise AssocError(f"unknown preprocessing {self.preprocessing!r}")
        rows = tuple(str(r) for r in self.row_labels) or tuple(str(i) for i in range(n))
        cols = tuple(str(c) for c in self.col_labels) or tuple(f"V{j + 1}" for j in range(p))
        if len(rows) != n or len(cols) != p:
            raise DimensionMismatch("label counts do not match the table shape")
        if self.preprocessing != "raw":
            scale = np.maximum(np.abs(v).max(axis=0), np.finfo(float).tiny)
            if np.any(np.abs(v.mean(axis=0)) > 1e-10 * scale):
                raise AssocError("columns are not centered")
        if self.preprocessing == "standardized":
            if np.any(np.abs(v.var(axis=0, ddof=1) - 1.0) > 1e-10):
                raise AssocError("columns do not have unit sample variance")
        object.__setattr__(self, "values", _readonly(v))
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self):
        return self.values.shape

    def take_rows(self, index) -> "DataTable":
        """Rows reordered by ``index``; preprocessing state is kept."""
        index = np.asarray(index)
        return DataTable(
            self.values[index],
            tuple(np.asarray(self.row_labels, dtype=object)[index]),
            self.col_labels,
            self.preprocessing,
        )


def as_table(x) -> DataTable:
    """Wrap an array as a raw table; tables pass through."""
    if isinstance(x, DataTable):
        return x
    return DataTable(x)


def preprocess(t, mode: str = "center") -> DataTable:
    """Center or standardize the columns of a table.

    Parameters
    ----------
    t : DataTable or array_like
    mode : {"center", "standardize"}
        Standardizing divides by the sample standard deviation (``n - 1``
        denominator).

    Raises
    ------
    ZeroVarianceColumn
        When standardizing a constant column.
    """
    t = as_table(t)
    v = t.values - t.values.mean(axis=0)
    if mode == "center":
        state = "centered"
    elif mode == "standardize":
        sd = t.values.std(axis=0, ddof=1)
        scale = np.maximum(np.abs(t.values).max(axis=0), np.finfo(float).tiny)
        zero = sd <= 1e-13 * scale
        if np.any(zero):
            raise ZeroVarianceColumn(t.col_labels[int(np.argmax(zero))])
        v = v / sd
        # second pass removes rounding left by the first
        v = v - v.mean(axis=0)
        v = v / v.std(axis=0, ddof=1)
        state = "standardized"
    else:
        raise AssocError(f"unknown preprocessing mode {mode!r}")
    return DataTable(v, t.row_labels, t.col_labels, state)


def centered(x) -> DataTable:
    """Table ready for cross-product coefficients.

    Bare arrays are centered here.  A :class:`DataTable` must already be
    centered or standardized, since silently centering a table the caller
    has declared raw would hide a preprocessing choice.
    """
    if isinstance(x, DataTable):
        if x.preprocessing == "raw":
            raise NotPreprocessed(
                "table is raw; center or standardize it first (preprocess)"
            )
        return x
    return preprocess(x, "center")


@dataclass(frozen=True)
class SquareMatrix:
    """Symmetric ``n x n`` matrix with a role.

    ``role="distance"`` requires a zero diagonal and nonnegative entries,
    ``role="centered"`` zero row and column sums.  Inputs asymmetric by less
    than ``1e-10`` relative to the largest entry are symmetrized; larger
    asymmetry raises :class:`NotSymmetric`.
    """

    values: np.ndarray
    role: str = "gram"
    labels: tuple = field(default=())

    def __post_init__(self):
        if self.role not in ROLES:
            raise AssocError(f"unknown role {self.role!r}")
        v = _symmetrized(self.values)
        n = v.shape[0]
        if self.role == "distance":
            scale = max(np.abs(v).max(), 1.0)
            if np.any(np.abs(np.diag(v)) > SYMMETRY_RTOL * scale):
                raise AssocError("a distance matrix must have a zero diagonal")
            if np.any(v < -SYMMETRY_RTOL * scale):
                raise AssocError("a distance matrix must be nonnegative")
            v = np.clip(v, 0.0, None)
            np.fill_diagonal(v, 0.0)
        elif self.role == "centered":
            tol = 1e-8 * n * max(np.abs(v).max(), np.finfo(float).tiny)
            if np.any(np.abs(v.sum(axis=0)) > tol):
                raise AssocError("row and column sums of a centered matrix must vanish")
        labels = tuple(str(s) for s in self.labels) or tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise DimensionMismatch("label count does not match matrix size")
        object.__setattr__(self, "values", _readonly(v))
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _symmetrized(m) -> np.ndarray:
    v = np.array(getattr(m, "values", m), dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise AssocError("matrix entries must be finite")
    scale = np.abs(v).max() if v.size else 0.0
    if np.any(np.abs(v - v.T) > SYMMETRY_RTOL * scale):
        raise NotSymmetric("matrix is not symmetric")
    return (v + v.T) / 2


def as_square(m, role: str) -> SquareMatrix:
    if isinstance(m, SquareMatrix):
        if m.role != role:
            return SquareMatrix(m.values, role, m.labels)
        return m
    return SquareMatrix(m, role)


def cross_product(t) -> SquareMatrix:
    """Gram matrix ``X X'`` of a centered or standardized table."""
    t = centered(t)
    x = t.values
    return SquareMatrix(x @ x.T, "gram", t.row_labels)


def _check_alpha(alpha: float):
    if not (0 < alpha <= 2):
        raise InvalidAlpha(f"alpha must lie in (0, 2], got {alpha}")


def pairwise_distance(t, alpha: float = 1.0) -> SquareMatrix:
    """Euclidean distances between rows raised to ``alpha``.

    ``alpha`` is restricted to ``(0, 2]``; ``alpha=2`` gives squared
    distances.
    """
    _check_alpha(alpha)
    t = as_table(t)
    d = pdist(t.values)
    if alpha == 2:
        d = d * d
    elif alpha != 1:
        d = d ** alpha
    return SquareMatrix(squareform(d), "distance", t.row_labels)


def _double_center_array(v: np.ndarray) -> np.ndarray:
    row = v.mean(axis=1)
    col = v.mean(axis=0)
    out = v - row[:, None] - col[None, :] + v.mean()
    # C M C is symmetric when M is; remove the rounding asymmetry
    return (out + out.T) / 2


def double_center(m) -> SquareMatrix:
    """Return ``C M C`` with ``C = I - 11'/n``."""
    v = _symmetrized(m)
    return SquareMatrix(_double_center_array(v), "centered", getattr(m, "labels", ()))


def gram_from_distance(d) -> SquareMatrix:
    """Gram matrix of the centered configuration behind squared distances.

    ``d`` must hold *squared* Euclidean distances, e.g.
    ``pairwise_distance(t, alpha=2)``.  Computes ``-1/2 C D C``.
    """
    v = _symmetrized(d)
    return SquareMatrix(-0.5 * _double_center_array(v), "gram", getattr(d, "labels", ()))


def frobenius_inner(a, b) -> float:
    """Sum of elementwise products of two equally shaped matrices."""
    a = np.asarray(getattr(a, "values", a), dtype=float)
    b = np.asarray(getattr(b, "values", b), dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    # np.sum reduces with pairwise summation
    return float(np.sum(a * b))


@dataclass(frozen=True)
class Embedding:
    """Euclidean coordinates recovered from an inner-product matrix."""

    coordinates: np.ndarray
    eigenvalues: np.ndarray
    labels: tuple = ()
    dropped_negative: int = 0

    @property
    def dims(self) -> int:
        return self.coordinates.shape[1]


def _orient(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so that the entry of largest magnitude is positive."""
    if vectors.size == 0:
        return vectors
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eigh_desc(m: np.ndarray):
    """Eigenpairs of a symmetric matrix sorted by decreasing eigenvalue,
    with the sign convention applied and tiny eigenvalues set to zero."""
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    top = np.abs(w).max() if w.size else 0.0
    w = np.where(np.abs(w) < EIGEN_RTOL * top, 0.0, w)
    return w, _orient(v)


def embed_gram(g: np.ndarray, dims: int | None = None, labels: Sequence = ()) -> Embedding:
    """Coordinates whose Gram matrix is the positive part of ``g``."""
    w, v = eigh_desc(_symmetrized(g))
    positive = w > 0
    keep = int(positive.sum())
    if dims is not None:
        keep = min(keep, dims)
    coords = v[:, :keep] * np.sqrt(w[:keep])
    return Embedding(
        coordinates=_readonly(coords),
        eigenvalues=_readonly(w[:keep]),
        labels=tuple(labels),
        dropped_negative=int((w < 0).sum()),
    )


def mds(d, dims: int = 2, *, squared: bool = False) -> Embedding:
    """Classical scaling (principal coordinates) of a distance matrix.

    Parameters
    ----------
    d : SquareMatrix or array_like
        Distances.  A :class:`SquareMatrix` with role ``"gram"`` or
        ``"centered"`` is taken as an inner-product matrix and embedded
        directly.
    dims : int
        Upper bound on the returned dimension; fewer are returned when the
        matrix has fewer positive eigenvalues.
    squared : bool
        Set when ``d`` already holds squared distances.
    """
    if dims < 1:
        raise AssocError("dims must be at least 1")
    labels = getattr(d, "labels", ())
    if isinstance(d, SquareMatrix) and d.role != "distance":
        return embed_gram(d.values, dims, labels)
    v = _symmetrized(d)
    g = -0.5 * _double_center_array(v if squared else v * v)
    return embed_gram(g, dims, labels)
