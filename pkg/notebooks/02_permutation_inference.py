# %% [markdown]
# # Permutation tests
#
# Monte Carlo permutations, exact enumeration for tiny samples, and the
# Pearson type III approximation for RV.

# %%
import numpy as np

import matassoc as ma

rng = np.random.default_rng(2)
x = rng.standard_normal((15, 4))
y = 0.4 * x + rng.standard_normal((15, 4))

# %%
mc = ma.permutation_test("rv", x, y, ma.TestPlan(replicates=9999, seed=1))
p3 = ma.pearson3_test(x, y, ma.TestPlan("pearson3", replicates=999, seed=1))
print(f"RV={mc.observed:.3f}  permutation p={mc.p_value:.4f}  Pearson III p={p3.p_value:.4f}")
print("null mean, variance, skewness:", [round(v, 5) for v in p3.null_moments])

# %% [markdown]
# For ``n <= 8`` all ``n!`` orders can be listed.

# %%
small_x, small_y = x[:7], y[:7]
exact = ma.exact_permutation_test("dcor", small_x, small_y)
approx = ma.permutation_test("dcor", small_x, small_y, ma.TestPlan(replicates=9999, seed=3))
print(f"exact p={exact.p_value:.4f} over {exact.replicates_used} orders; Monte Carlo p={approx.p_value:.4f}")

# %% [markdown]
# Dissimilarity inputs are permuted on rows and columns together (Mantel).

# %%
dx = ma.pairwise_distance(x)
dy = ma.pairwise_distance(y)
print(ma.permutation_test("mantel", dx, dy, ma.TestPlan(replicates=999, seed=4)).as_dict())

# %% [markdown]
# Under independence the p-values are uniform.

# %%
ps = [ma.permutation_test("dcor", rng.standard_normal((20, 2)), rng.standard_normal((20, 2)),
                          ma.TestPlan(replicates=199, seed=s)).p_value for s in range(200)]
print("rejection rate at 0.05:", np.mean(np.array(ps) <= 0.05))
