"""Simulation designs for null calibration and power studies.

Three designs, all with standard Gaussian margins:

``null_gaussian``
    ``X`` (``n x p``) and ``Y`` (``n x q``) jointly Gaussian with identity
    within-table covariance and covariance ``cross_cov`` between every
    variable of ``X`` and every variable of ``Y``.  ``cross_cov=0`` is
    independence.
``linear_block``
    ``X_j = 2 Y_j + e_j`` for the first three columns, the rest of ``X``
    independent noise.  ``e`` has variance ``noise_var``.
``log_square``
    ``X_j = log(Y_j^2) + e_j`` for every column of ``X`` (``p <= q``).

:func:`table_study` reports, per replicate, the coefficients and p-values
of the multi-test table; :func:`power_study` reports rejection rates of the
RV test and distance covariance tests over a grid of sample sizes.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .coefficients import dcor, dcor_star, matrix_statistic, rv, rv_null_expectation
from .errors import AssocError, NotPositiveDefinite
from .inference import TestPlan, _moments, pearson3_p_value, permutation_tests

DESIGNS = ("null_gaussian", "linear_block", "log_square")
LEVEL = 0.05
DCOV_ALPHAS = (0.1, 0.5, 1.5)
POWER_ALPHAS = (0.1, 0.5, 1.0, 1.5)


@dataclass(frozen=True)
class SimulationSpec:
    design: str = "null_gaussian"
    n: int = 43
    p: int = 68
    q: int = 356
    cross_cov: float = 0.0
    noise_var: float = 0.02
    replicates: int = 200
    B: int = 999
    seed: int = 0

    def __post_init__(self):
        if self.design not in DESIGNS:
            raise AssocError(f"unknown design {self.design!r}; choose from {', '.join(DESIGNS)}")
        if not (0.0 <= self.cross_cov < 1.0):
            raise AssocError("cross_cov must lie in [0, 1)")
        if self.n < 4 or self.p < 1 or self.q < 1:
            raise AssocError("need n >= 4 and p, q >= 1")
        if self.noise_var < 0:
            raise AssocError("noise_var must be nonnegative")
        if self.design == "linear_block" and min(self.p, self.q) < 3:
            raise AssocError("linear_block needs p, q >= 3")
        if self.design == "log_square" and self.p > self.q:
            raise AssocError("log_square needs p <= q")
        if self.cross_cov > 0:
            if self.design != "null_gaussian":
                raise AssocError("cross_cov applies to the null_gaussian design only")
            # eigenvalues of [[I, cJ], [cJ', I]] are 1 +- c sqrt(pq) and 1
            if self.cross_cov * math.sqrt(self.p * self.q) >= 1.0:
                raise NotPositiveDefinite(
                    f"cross_cov={self.cross_cov} with p={self.p}, q={self.q} "
                    "gives a covariance that is not positive definite"
                )

    def as_dict(self) -> dict:
        return asdict(self)


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _derived_seed(seed: int, *key: int) -> int:
    return int(np.random.SeedSequence(seed, spawn_key=key).generate_state(1, np.uint64)[0])


def draw(spec: SimulationSpec, replicate: int, n: int | None = None):
    """Data of one replicate; identical for identical ``(spec, replicate, n)``."""
    n = spec.n if n is None else n
    rng = _stream(spec.seed, replicate, 0)
    p, q = spec.p, spec.q
    if spec.design == "null_gaussian":
        if spec.cross_cov == 0:
            return rng.standard_normal((n, p)), rng.standard_normal((n, q))
        cov = np.eye(p + q)
        cov[:p, p:] = spec.cross_cov
        cov[p:, :p] = spec.cross_cov
        z = rng.multivariate_normal(np.zeros(p + q), cov, size=n, method="cholesky")
        return z[:, :p], z[:, p:]
    y = rng.standard_normal((n, q))
    x = rng.standard_normal((n, p))
    sd = math.sqrt(spec.noise_var)
    if spec.design == "linear_block":
        x[:, :3] = 2.0 * y[:, :3] + sd * rng.standard_normal((n, 3))
    else:
        x = np.log(y[:, :p] ** 2) + sd * rng.standard_normal((n, p))
    return x, y


@dataclass
class StudyResult:
    spec: dict
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)


def _summarize(rows: list) -> dict:
    summary = {}
    for key in rows[0]:
        if key == "replicate":
            continue
        vals = np.array([r[key] for r in rows], dtype=float)
        summary[f"median_{key}"] = float(np.median(vals))
        if key.endswith("_p"):
            summary[f"reject_{key}"] = float(np.mean(vals <= LEVEL))
    return summary


TABLE_COLUMNS = (
    "rv", "rv_debiased", "rv_p", "dcor", "dcor_p", "dcor_star", "dcor_star_p",
    "dcov1_p", "dcov0.1_p", "dcov0.5_p", "dcov1.5_p",
)


def table_replicate(x, y, B: int, seed: int, columns=TABLE_COLUMNS) -> dict:
    """Coefficients and p-values of one replicate.

    ``rv_p`` uses the Pearson type III approximation with ``B`` draws; all
    other p-values are Monte Carlo permutation tests on ``B`` shared
    permutations.  ``dcor_p`` and ``dcov1_p`` are the same test (the
    normalization of dCor does not change under permutation) and are both
    reported for completeness.
    """
    xc = x - x.mean(axis=0)
    yc = y - y.mean(axis=0)
    want = set(columns)
    row = {}
    stats = {}
    if want & {"rv", "rv_debiased", "rv_p"}:
        r = rv(xc, yc).value
        e = rv_null_expectation(xc, yc)
        row["rv"] = r
        row["rv_debiased"] = r - e
        if "rv_p" in want:
            stats["rv"] = matrix_statistic("rv", xc, yc)
    if "dcor" in want:
        row["dcor"] = dcor(x, y).value
    if "dcor_star" in want:
        row["dcor_star"] = dcor_star(x, y).value
    if want & {"dcor_p", "dcov1_p"}:
        stats["dcor"] = matrix_statistic("dcor", x, y, alpha=1.0)
    if "dcor_star_p" in want:
        stats["dcor_star"] = matrix_statistic("dcor_star", x, y)
    for a in DCOV_ALPHAS:
        if f"dcov{a}_p" in want:
            stats[f"dcov{a}"] = matrix_statistic("dcov", x, y, alpha=a)
    if stats:
        res = permutation_tests(stats, TestPlan("permutation_mc", B, seed))
        if "rv" in res:
            moments = _moments(res["rv"].null_distribution, rv_null_expectation(xc, yc))
            row["rv_p"] = pearson3_p_value(res["rv"].observed, *moments)
        if "dcor" in res:
            if "dcor_p" in want:
                row["dcor_p"] = res["dcor"].p_value
            if "dcov1_p" in want:
                row["dcov1_p"] = res["dcor"].p_value
        if "dcor_star" in res:
            row["dcor_star_p"] = res["dcor_star"].p_value
        for a in DCOV_ALPHAS:
            if f"dcov{a}" in res:
                row[f"dcov{a}_p"] = res[f"dcov{a}"].p_value
    return {c: row[c] for c in columns if c in row}


def table_study(spec: SimulationSpec, columns=TABLE_COLUMNS, progress=None) -> StudyResult:
    """Per-replicate coefficients and p-values with medians and rejection
    rates at level 0.05."""
    rows = []
    for r in range(spec.replicates):
        x, y = draw(spec, r)
        row = {"replicate": r}
        row.update(table_replicate(x, y, spec.B, _derived_seed(spec.seed, r, 1), columns))
        rows.append(row)
        if progress:
            progress(r)
    return StudyResult(spec.as_dict(), rows, _summarize(rows))


def power_study(spec: SimulationSpec, ns=(25, 50, 100), alphas=POWER_ALPHAS) -> StudyResult:
    """Rejection rates at level 0.05 of the RV test (Pearson type III) and
    of distance covariance permutation tests with exponents ``alphas``.

    ``rows`` is long format: one row per ``(n, method, alpha)``.
    """
    rows = []
    for n in ns:
        rejections: dict = {}
        for r in range(spec.replicates):
            x, y = draw(spec, r, n)
            xc, yc = x - x.mean(axis=0), y - y.mean(axis=0)
            stats = {"rv": matrix_statistic("rv", xc, yc)}
            for a in alphas:
                stats[a] = matrix_statistic("dcov", x, y, alpha=a)
            res = permutation_tests(
                stats, TestPlan("permutation_mc", spec.B, _derived_seed(spec.seed, r, n, 2))
            )
            moments = _moments(res["rv"].null_distribution, rv_null_expectation(xc, yc))
            p_rv = pearson3_p_value(res["rv"].observed, *moments)
            rejections.setdefault(("rv", None), []).append(p_rv <= LEVEL)
            for a in alphas:
                rejections.setdefault(("dcov", a), []).append(res[a].p_value <= LEVEL)
        for (method, a), hits in rejections.items():
            rows.append({
                "design": spec.design,
                "n": n,
                "alpha": "" if a is None else a,
                "method": method,
                "power": float(np.mean(hits)),
            })
    summary = {
        f"power_{r['method']}{r['alpha']}_n{r['n']}": r["power"] for r in rows
    }
    return StudyResult(spec.as_dict(), rows, summary)
