"""Graph-based association between two dissimilarity structures.

Each dissimilarity matrix is reduced to a proximity graph over the same
``n`` observations (k nearest neighbors or minimum spanning tree) and the
association is the number of edges the two graphs share.  Only the rank
order of the dissimilarities matters.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficients import MatrixStatistic
from .errors import AssocError, DimensionMismatch, InvalidK
from .geometry import as_square
from .inference import TestPlan, TestResult, exact_permutation_test, permutation_test


@dataclass(frozen=True)
class NeighborGraph:
    """Undirected graph on nodes ``0..n-1``; edges are ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset
    kind: str
    param: int = 1

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        if self.edges:
            i, j = np.array(sorted(self.edges)).T
            a[i, j] = a[j, i] = 1.0
        return a

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1).astype(int)

    def relabel(self, perm) -> "NeighborGraph":
        """Graph with node ``i`` renamed ``perm[i]``."""
        perm = np.asarray(perm)
        edges = frozenset(tuple(sorted((int(perm[i]), int(perm[j])))) for i, j in self.edges)
        return NeighborGraph(self.n, edges, self.kind, self.param)


def _distances(d) -> np.ndarray:
    return as_square(d, "distance").values


def knn_graph(d, k: int) -> NeighborGraph:
    """Union of every node's ``k`` nearest neighbors.

    Equal distances are resolved in favor of the smaller node index.
    """
    v = _distances(d)
    n = v.shape[0]
    if not (1 <= k <= n - 1):
        raise InvalidK(f"k must lie in [1, {n - 1}], got {k}")
    v = v.copy()
    np.fill_diagonal(v, np.inf)
    # stable sort keeps index order among ties
    nearest = np.argsort(v, axis=1, kind="stable")[:, :k]
    edges = set()
    for i in range(n):
        for j in nearest[i]:
            j = int(j)
            edges.add((i, j) if i < j else (j, i))
    return NeighborGraph(n, frozenset(edges), "knn", k)


class _DisjointSets:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        self.parent[max(ri, rj)] = min(ri, rj)
        return True


def _kruskal(v: np.ndarray, banned: set) -> set:
    n = v.shape[0]
    iu, ju = np.triu_indices(n, 1)
    w = v[iu, ju]
    # lexsort: last key is primary -> weight, then i, then j
    order = np.lexsort((ju, iu, w))
    sets = _DisjointSets(n)
    tree = set()
    for e in order:
        edge = (int(iu[e]), int(ju[e]))
        if edge in banned:
            continue
        if sets.union(*edge):
            tree.add(edge)
            if len(tree) == n - 1:
                break
    return tree


def mst(d, count: int = 1) -> NeighborGraph:
    """Minimum spanning tree, or the union of ``count`` successive
    edge-disjoint minimum spanning trees.

    Ties are broken by lexicographic order of ``(weight, i, j)``.
    ``count > 1`` is experimental: later trees may fail to span when the
    earlier ones have used up too many edges.
    """
    v = _distances(d)
    n = v.shape[0]
    if n < 2:
        raise AssocError("a spanning tree needs n >= 2")
    if count < 1:
        raise InvalidK("count must be at least 1")
    edges: set = set()
    for _ in range(count):
        edges |= _kruskal(v, edges)
    return NeighborGraph(n, frozenset(edges), "mst", count)


def build_graph(d, kind: str = "knn", k: int = 5) -> NeighborGraph:
    if kind == "knn":
        return knn_graph(d, k)
    if kind == "mst":
        return mst(d, k)
    raise AssocError(f"unknown graph kind {kind!r}; use 'knn' or 'mst'")


def common_edges(g1: NeighborGraph, g2: NeighborGraph) -> int:
    """Number of edges present in both graphs."""
    if g1.n != g2.n:
        raise DimensionMismatch(f"graphs have {g1.n} and {g2.n} nodes")
    return len(g1.edges & g2.edges)


def graph_statistic(dx, dy, *, kind: str = "knn", k: int = 5) -> MatrixStatistic:
    """Common-edge count in the inner-product form used by the permutation
    engine: half the sum of the elementwise product of adjacency matrices."""
    gx, gy = build_graph(dx, kind, k), build_graph(dy, kind, k)
    if gx.n != gy.n:
        raise DimensionMismatch(f"graphs have {gx.n} and {gy.n} nodes")
    return MatrixStatistic(
        "graph",
        gx.adjacency(),
        gy.adjacency(),
        lambda t: np.rint(np.asarray(t, dtype=float) / 2.0),
        meta={"graph": kind, "k": k, "edges_x": len(gx.edges), "edges_y": len(gy.edges)},
    )


def graph_test(dx, dy, kind: str = "knn", plan: TestPlan | None = None, *, k: int = 5) -> TestResult:
    """Permutation test on the number of common edges.

    Node labels of the second graph are permuted; the graphs themselves are
    built once.
    """
    plan = plan or TestPlan()
    stat = graph_statistic(dx, dy, kind=kind, k=k)
    if plan.method == "permutation_exact":
        res = exact_permutation_test(stat, None, None, plan)
    elif plan.method == "permutation_mc":
        res = permutation_test(stat, None, None, plan)
    else:
        raise AssocError("graph tests support permutation methods only")
    meta = dict(stat.meta)
    meta.update(res.meta)
    return TestResult(
        kind="graph",
        observed=res.observed,
        p_value=res.p_value,
        method=res.method,
        replicates_used=res.replicates_used,
        seed=res.seed,
        null_moments=res.null_moments,
        null_distribution=res.null_distribution,
        meta=meta,
    )
