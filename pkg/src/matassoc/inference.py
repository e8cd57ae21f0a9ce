"""Permutation inference for association coefficients.

Three methods are provided:

* ``permutation_mc``: Monte Carlo permutations of the rows of the second
  argument (simultaneous rows and columns for dissimilarity matrices);
* ``permutation_exact``: enumeration of all ``n!`` permutations, ``n <= 8``;
* ``pearson3``: RV only; a Pearson type III curve matched to the exact null
  mean and to the variance and skewness of permutation draws.

Permutation ``b`` is drawn from its own stream seeded by ``(seed, b)``, so a
result never depends on how replicates are split across threads.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy import stats

from .coefficients import (
    COEFFICIENTS,
    MatrixStatistic,
    coefficient,
    matrix_statistic,
    rv,
    rv_null_expectation,
)
from .errors import AssocError, DimensionMismatch, InvalidPlan, TooManyObservations
from .geometry import DataTable, as_table

METHODS = ("permutation_mc", "permutation_exact", "pearson3")
MIN_REPLICATES = 99
EXACT_MAX_N = 8
# relative tolerance under which a permuted statistic ties the observed one
TIE_RTOL = 1e-12
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class TestPlan:
    """How to assess significance.

    ``replicates`` is the number of Monte Carlo permutations, or for
    ``pearson3`` the number of draws used to estimate the variance and
    skewness of the null.
    """

    __test__ = False  # not a pytest class

    method: str = "permutation_mc"
    replicates: int = 999
    seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidPlan(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        if self.method != "permutation_exact" and self.replicates < MIN_REPLICATES:
            raise InvalidPlan(f"at least {MIN_REPLICATES} replicates are required")
        if not (0 <= self.seed < 2**64):
            raise InvalidPlan("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class TestResult:
    __test__ = False

    kind: str
    observed: float
    p_value: float
    method: str
    replicates_used: int
    seed: int
    null_moments: tuple | None = None
    null_distribution: np.ndarray | None = field(default=None, repr=False, compare=False)
    meta: dict = field(default_factory=dict, compare=False)

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "observed": self.observed,
            "p_value": self.p_value,
            "method": self.method,
            "replicates": self.replicates_used,
            "seed": self.seed,
        }
        if self.null_moments is not None:
            out["null_moments"] = dict(zip(("mean", "variance", "skewness"), self.null_moments))
        out.update(self.meta)
        return out


def thread_count() -> int:
    """Worker threads: ``ASSOC_THREADS`` if set, else all cores."""
    env = os.environ.get("ASSOC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise AssocError(f"ASSOC_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def permutation(seed: int, index: int, n: int) -> np.ndarray:
    """The permutation used by replicate ``index`` of a plan seeded ``seed``."""
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss)).permutation(n)


def permutations(seed: int, start: int, stop: int, n: int) -> np.ndarray:
    return np.array([permutation(seed, b, n) for b in range(start, stop)], dtype=np.intp).reshape(
        stop - start, n
    )


# -------------------------------------------------------------- statistics


class RowStatistic:
    """Coefficient evaluated afresh on each row permutation of ``y``."""

    def __init__(self, kind: str, func: Callable, x, y):
        self.kind = kind
        self.func = func
        self.x = x
        self.y = y if isinstance(y, DataTable) else np.asarray(y, dtype=float)
        if as_table(x).n != self.y.shape[0]:
            raise DimensionMismatch("inputs have different numbers of observations")

    @property
    def n(self) -> int:
        return self.y.shape[0]

    def _permuted(self, s):
        if isinstance(self.y, DataTable):
            return self.y.take_rows(s)
        return self.y[s]

    def observed(self) -> float:
        return float(self.func(self.x, self.y))

    def evaluate(self, perms: np.ndarray) -> np.ndarray:
        return np.array([float(self.func(self.x, self._permuted(s))) for s in perms])

    def values(self, raw: np.ndarray) -> np.ndarray:
        return raw


class _MatrixEvaluator:
    def __init__(self, ms: MatrixStatistic):
        self.ms = ms
        self.kind = ms.kind
        n = ms.n
        self._left = np.ascontiguousarray(ms.left).reshape(1, n * n)
        self._right = np.ascontiguousarray(ms.right)

    @property
    def n(self) -> int:
        return self.ms.n

    def evaluate(self, perms: np.ndarray) -> np.ndarray:
        n = self.n
        out = np.empty(len(perms))
        step = max(1, _CHUNK_ELEMENTS // (n * n))
        for lo in range(0, len(perms), step):
            p = perms[lo:lo + step]
            g = self._right[p[:, :, None], p[:, None, :]].reshape(len(p), n * n)
            # row-wise reductions along the contiguous axis sum pairwise,
            # independently of how many rows are in the block
            out[lo:lo + step] = np.sum(g * self._left, axis=1)
        return out

    def observed(self) -> float:
        return float(self.evaluate(np.arange(self.n)[None, :])[0])

    def values(self, raw: np.ndarray) -> np.ndarray:
        return np.asarray(self.ms.finish(raw), dtype=float)


Statistic = Union[str, Callable, MatrixStatistic, RowStatistic]


def make_statistic(coef: Statistic, x=None, y=None, *, alpha: float | None = None, k: int = 5,
                   graph: str = "knn"):
    """Resolve ``coef`` into an evaluator over row permutations.

    ``coef`` may be a coefficient name, ``"graph"`` (common edges of two
    neighbor graphs built on dissimilarity inputs), a prepared
    :class:`~matassoc.coefficients.MatrixStatistic`, or any callable
    ``f(x, y) -> float``.
    """
    if isinstance(coef, MatrixStatistic):
        return _MatrixEvaluator(coef)
    if isinstance(coef, (RowStatistic, _MatrixEvaluator)):
        return coef
    if isinstance(coef, str):
        if coef == "graph":
            from .graphassoc import graph_statistic

            return _MatrixEvaluator(graph_statistic(x, y, kind=graph, k=k))
        ms = matrix_statistic(coef, x, y, alpha=alpha)
        if ms is not None:
            return _MatrixEvaluator(ms)
        if coef not in COEFFICIENTS:
            raise AssocError(f"unknown coefficient {coef!r}")
        return RowStatistic(coef, lambda a, b: coefficient(coef, a, b, alpha=alpha), x, y)
    if callable(coef):
        return RowStatistic(getattr(coef, "__name__", "custom"), coef, x, y)
    raise AssocError(f"cannot build a statistic from {coef!r}")


# ------------------------------------------------------------------ engine


def _null_raw(evaluators, plan: TestPlan, n: int) -> list[np.ndarray]:
    """Permutation statistics of every evaluator on replicates
    ``0..plan.replicates-1``, shared across evaluators."""
    total = plan.replicates
    per_chunk = 256
    bounds = [(lo, min(lo + per_chunk, total)) for lo in range(0, total, per_chunk)]

    def work(bound):
        perms = permutations(plan.seed, bound[0], bound[1], n)
        return [ev.evaluate(perms) for ev in evaluators]

    workers = min(thread_count(), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    return [np.concatenate([part[i] for part in parts]) for i in range(len(evaluators))]


def _exceed(null: np.ndarray, obs: float) -> np.ndarray:
    return null >= obs - TIE_RTOL * max(abs(obs), np.finfo(float).tiny)


def _moments(v: np.ndarray, mean: float | None = None) -> tuple:
    mu = float(v.mean()) if mean is None else mean
    dev = v - mu
    var = float(np.mean(dev * dev))
    skew = float(np.mean(dev**3)) / var**1.5 if var > 0 else 0.0
    return mu, var, skew


def permutation_tests(stats_: dict, plan: TestPlan) -> dict[str, TestResult]:
    """Run several Monte Carlo permutation tests on the same permutations.

    ``stats_`` maps names to evaluators from :func:`make_statistic`.
    """
    if plan.method != "permutation_mc":
        raise InvalidPlan("permutation_tests requires method='permutation_mc'")
    evs = [make_statistic(s) for s in stats_.values()]
    ns = {ev.n for ev in evs}
    if len(ns) != 1:
        raise DimensionMismatch("statistics disagree on n")
    nulls = _null_raw(evs, plan, ns.pop())
    out = {}
    for name, ev, null in zip(stats_, evs, nulls):
        obs = ev.observed()
        count = int(np.count_nonzero(_exceed(null, obs)))
        values = ev.values(null)
        out[name] = TestResult(
            kind=ev.kind,
            observed=float(ev.values(np.array([obs]))[0]),
            p_value=(count + 1) / (plan.replicates + 1),
            method=plan.method,
            replicates_used=plan.replicates,
            seed=plan.seed,
            null_moments=_moments(values),
            null_distribution=values,
        )
    return out


def permutation_test(coef: Statistic, x, y, plan: TestPlan | None = None, *,
                     alpha: float | None = None, k: int = 5, graph: str = "knn") -> TestResult:
    """Monte Carlo permutation test of association between ``x`` and ``y``.

    The p-value is ``(1 + #{b : T_b >= T_obs}) / (B + 1)``.

    Examples
    --------
    >>> import numpy as np
    >>> x = np.random.default_rng(0).normal(size=(20, 3))
    >>> permutation_test("rv", x, x, TestPlan(replicates=99)).p_value
    0.01
    """
    plan = plan or TestPlan()
    if plan.method != "permutation_mc":
        raise InvalidPlan("permutation_test requires method='permutation_mc'")
    ev = make_statistic(coef, x, y, alpha=alpha, k=k, graph=graph)
    return permutation_tests({"stat": ev}, plan)["stat"]


def exact_permutation_test(coef: Statistic, x, y, plan: TestPlan | None = None, *,
                           alpha: float | None = None, k: int = 5, graph: str = "knn") -> TestResult:
    """Permutation test enumerating all ``n!`` row orders (``n <= 8``).

    The p-value is the fraction of permutations, identity included, whose
    statistic is at least the observed one.
    """
    plan = plan or TestPlan(method="permutation_exact")
    ev = make_statistic(coef, x, y, alpha=alpha, k=k, graph=graph)
    n = ev.n
    if n > EXACT_MAX_N:
        raise TooManyObservations(f"exact enumeration is limited to n <= {EXACT_MAX_N}, got {n}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    null = ev.evaluate(perms)
    obs = ev.observed()
    count = int(np.count_nonzero(_exceed(null, obs)))
    values = ev.values(null)
    return TestResult(
        kind=ev.kind,
        observed=float(ev.values(np.array([obs]))[0]),
        p_value=count / len(perms),
        method="permutation_exact",
        replicates_used=len(perms),
        seed=plan.seed,
        null_moments=_moments(values),
        null_distribution=values,
    )


def pearson3_p_value(observed: float, mean: float, variance: float, skewness: float) -> float:
    """Upper tail of a Pearson type III law with the given moments.

    Zero skewness gives the normal tail.
    """
    if variance <= 0:
        return 1.0 if observed <= mean else 0.0
    z = (observed - mean) / math.sqrt(variance)
    return float(stats.pearson3.sf(z, skewness))


def pearson3_test(x, y, plan: TestPlan | None = None, *, kind: str = "rv") -> TestResult:
    """RV test with a moment-matched Pearson type III null.

    The null mean is the exact permutation mean of RV; variance and
    skewness are estimated from ``plan.replicates`` permutation draws.
    """
    plan = plan or TestPlan(method="pearson3")
    if kind != "rv":
        raise InvalidPlan("the Pearson type III approximation is implemented for RV only")
    ev = make_statistic("rv", x, y)
    observed = rv(x, y).value
    mean = rv_null_expectation(x, y)
    draws = ev.values(_null_raw([ev], TestPlan("permutation_mc", plan.replicates, plan.seed), ev.n)[0])
    moments = _moments(draws, mean)
    return TestResult(
        kind="rv",
        observed=observed,
        p_value=pearson3_p_value(observed, *moments),
        method="pearson3",
        replicates_used=plan.replicates,
        seed=plan.seed,
        null_moments=moments,
        null_distribution=draws,
    )


def run_test(kind: str, x, y, plan: TestPlan, *, alpha: float | None = None, k: int = 5,
             graph: str = "knn") -> TestResult:
    """Dispatch on ``plan.method``; ``kind="graph"`` takes dissimilarities."""
    if kind == "graph":
        from .graphassoc import graph_test

        return graph_test(x, y, graph, plan, k=k)
    if plan.method == "pearson3":
        return pearson3_test(x, y, plan, kind=kind)
    if plan.method == "permutation_exact":
        return exact_permutation_test(kind, x, y, plan, alpha=alpha, k=k, graph=graph)
    return permutation_test(kind, x, y, plan, alpha=alpha, k=k, graph=graph)
