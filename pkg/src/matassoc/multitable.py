"""Analyses of ``K`` tables observed on the same individuals.

The workflow is: compute a ``K x K`` matrix of coefficients, map the tables
from it (between-structure), build the STATIS compromise of the
cross-product matrices, and read MFA-style group coordinates off the
compromise dimensions with the Lg coefficient.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coefficients import coefficient, lg
from .errors import AssocError, DegenerateTable, DimensionMismatch
from .geometry import (
    DataTable,
    Embedding,
    SquareMatrix,
    centered,
    eigh_desc,
    embed_gram,
)

NORMALIZED_KINDS = ("rv", "dcor", "rls")


@dataclass(frozen=True)
class AssociationMatrix:
    values: np.ndarray
    kind: str
    labels: tuple

    @property
    def k(self) -> int:
        return self.values.shape[0]


def _labels(tables, labels):
    if labels is None:
        return tuple(f"T{i + 1}" for i in range(len(tables)))
    labels = tuple(str(s) for s in labels)
    if len(labels) != len(tables):
        raise DimensionMismatch("one label per table is required")
    return labels


def _check_tables(tables: Sequence, minimum: int):
    if len(tables) < minimum:
        raise AssocError(f"at least {minimum} tables are required")
    ns = {np.shape(getattr(t, "values", t))[0] for t in tables}
    if len(ns) != 1:
        raise DimensionMismatch(f"tables disagree on the number of observations: {sorted(ns)}")


def association_matrix(tables: Sequence, kind: str = "rv", *, alpha: float | None = None,
                       labels: Sequence[str] | None = None) -> AssociationMatrix:
    """Coefficient ``kind`` between every pair of tables.

    The diagonal holds self-coefficients, which are 1 for the normalized
    kinds but not, for instance, for ``lg``.
    """
    _check_tables(tables, 2)
    k = len(tables)
    m = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            m[i, j] = m[j, i] = coefficient(kind, tables[i], tables[j], alpha=alpha).value
    return AssociationMatrix(m, kind, _labels(tables, labels))


def between_structure(am: AssociationMatrix | np.ndarray, dims: int = 2) -> Embedding:
    """Euclidean map of the tables, reading the coefficient matrix as inner
    products between them.  Negative eigenvalues are dropped with a
    warning."""
    values = getattr(am, "values", am)
    labels = getattr(am, "labels", ())
    emb = embed_gram(np.asarray(values, dtype=float), dims, labels)
    if emb.dropped_negative:
        warnings.warn(
            f"{emb.dropped_negative} negative eigenvalue(s) dropped from the association matrix",
            RuntimeWarning,
            stacklevel=2,
        )
    return emb


@dataclass(frozen=True)
class StatisModel:
    weights: np.ndarray
    rv_matrix: AssociationMatrix
    compromise: SquareMatrix
    compromise_eigenvalues: np.ndarray
    compromise_coordinates: np.ndarray
    normalized_grams: tuple

    def objective(self, weights=None) -> float:
        """``sum_k <W, W_k>^2`` for ``W = sum_k weights_k W_k`` (normalized
        cross-products); the model's own weights by default."""
        g = np.asarray(self.weights if weights is None else weights, dtype=float)
        s = self.rv_matrix.values
        return float(g @ s @ s @ g)


def statis_compromise(tables: Sequence, *, labels: Sequence[str] | None = None) -> StatisModel:
    """STATIS compromise of the tables' cross-product matrices.

    Each ``X_k X_k'`` is scaled to unit Frobenius norm, so the matrix of
    their inner products is the RV matrix.  The weights are its leading
    eigenvector, oriented positive; the compromise is the weighted sum.
    """
    _check_tables(tables, 1)
    labels = _labels(tables, labels)
    grams = []
    for t in tables:
        x = centered(t).values
        w = x @ x.T
        norm = float(np.sqrt(np.sum(w * w)))
        if norm == 0:
            raise DegenerateTable("a table has a zero cross-product matrix")
        grams.append(w / norm)
    k = len(grams)
    s = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            s[i, j] = s[j, i] = float(np.sum(grams[i] * grams[j]))
    np.fill_diagonal(s, 1.0)
    _, vecs = eigh_desc(s)
    gamma = vecs[:, 0]
    if gamma.sum() < 0:
        gamma = -gamma
    gamma = gamma / np.linalg.norm(gamma)
    comp = sum(g * w for g, w in zip(gamma, grams))
    first = tables[0]
    row_labels = first.row_labels if isinstance(first, DataTable) else ()
    emb = embed_gram(comp, None, row_labels)
    return StatisModel(
        weights=gamma,
        rv_matrix=AssociationMatrix(s, "rv", labels),
        compromise=SquareMatrix(comp, "gram", row_labels),
        compromise_eigenvalues=emb.eigenvalues,
        compromise_coordinates=emb.coordinates,
        normalized_grams=tuple(grams),
    )


def mfa_group_coordinates(tables: Sequence, model: StatisModel, dims: int = 2) -> np.ndarray:
    """Lg between each compromise dimension and each table.

    Returns a ``K x dims`` array (fewer columns if the compromise has fewer
    dimensions).  A value of 1 means the dimension is the table's first
    principal component; 0 that it is uncorrelated with every variable.
    """
    coords = model.compromise_coordinates
    if coords.shape[0] != np.shape(getattr(tables[0], "values", tables[0]))[0]:
        raise DimensionMismatch("model and tables disagree on the number of observations")
    if len(tables) != len(model.weights):
        raise DimensionMismatch("model was computed on a different number of tables")
    dims = min(dims, coords.shape[1])
    out = np.empty((len(tables), dims))
    for d in range(dims):
        z = coords[:, d] - coords[:, d].mean()
        for k, t in enumerate(tables):
            out[k, d] = lg(z[:, None], t).value
    return out
