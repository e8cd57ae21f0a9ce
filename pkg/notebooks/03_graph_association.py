# %% [markdown]
# # Common edges of proximity graphs
#
# Each table is reduced to a k-nearest-neighbor graph or a minimum
# spanning tree, and the association is the number of shared edges.

# %%
import numpy as np

import matassoc as ma
from matassoc.graphassoc import build_graph

rng = np.random.default_rng(3)
n = 60
x = rng.standard_normal((n, 2))
y = np.column_stack([np.log(x[:, 0] ** 2), np.log(x[:, 1] ** 2)])
dx, dy = ma.pairwise_distance(x), ma.pairwise_distance(y)

# %%
for kind, k in (("knn", 5), ("mst", 1)):
    gx, gy = build_graph(dx, kind, k), build_graph(dy, kind, k)
    res = ma.graph_test(dx, dy, kind, ma.TestPlan(replicates=999, seed=1), k=k)
    print(f"{kind}: {len(gx.edges)} and {len(gy.edges)} edges, {ma.common_edges(gx, gy)} shared, p={res.p_value:.3f}")

# %% [markdown]
# Only the rank order of the dissimilarities matters.

# %%
print(build_graph(dx, "knn", 5) == build_graph(ma.SquareMatrix(dx.values ** 3, "distance"), "knn", 5))

# %% [markdown]
# RV on the same data.

# %%
print("RV p:", ma.permutation_test("rv", x, y, ma.TestPlan(replicates=999, seed=1)).p_value)
