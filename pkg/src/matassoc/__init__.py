"""Association coefficients between data tables and their significance.

>>> import numpy as np
>>> import matassoc as ma
>>> rng = np.random.default_rng(0)
>>> x = rng.normal(size=(30, 4))
>>> round(ma.rv(x, 2 * x + 1).value, 12)
1.0
"""
from .coefficients import (
    CoefficientValue,
    ProcrustesResult,
    coefficient,
    complexity,
    dcor,
    dcor_gaussian,
    dcor_star,
    dcov,
    dcov_three_term,
    gaussian_kernel,
    grv,
    hsic,
    lg,
    linear_kernel,
    mantel,
    median_bandwidth,
    procrustes_align,
    rls,
    rv,
    rv_adj,
    rv_debiased,
    rv_mod,
    rv_null_expectation,
)
from .errors import AssocError, NumericalDegeneracy
from .geometry import (
    DataTable,
    Embedding,
    SquareMatrix,
    cross_product,
    double_center,
    frobenius_inner,
    gram_from_distance,
    mds,
    pairwise_distance,
    preprocess,
)
from .graphassoc import NeighborGraph, common_edges, graph_test, knn_graph, mst
from .inference import (
    TestPlan,
    TestResult,
    exact_permutation_test,
    pearson3_test,
    permutation_test,
    run_test,
)
from .multitable import (
    AssociationMatrix,
    StatisModel,
    association_matrix,
    between_structure,
    mfa_group_coordinates,
    statis_compromise,
)

__version__ = "0.1.0"
