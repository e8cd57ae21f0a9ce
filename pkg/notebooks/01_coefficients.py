# %% [markdown]
# # Association coefficients between two tables
#
# Two tables measured on the same 40 observations.  We compare the RV
# coefficient, its debiased and modified versions, the Procrustes
# coefficient and distance correlation on a linear and a nonlinear link.

# %%
import numpy as np

import matassoc as ma

rng = np.random.default_rng(1)
n = 40
x = rng.standard_normal((n, 3))
linear = x @ rng.standard_normal((3, 4)) + 0.5 * rng.standard_normal((n, 4))
nonlinear = np.column_stack([x[:, 0] ** 2, np.abs(x[:, 1]), rng.standard_normal(n)])

# %%
for name, y in [("linear", linear), ("nonlinear", nonlinear)]:
    print(f"{name:>10}: RV={ma.rv(x, y).value:.3f}  RV*={ma.rv_debiased(x, y).value:.3f}  "
          f"RLS={ma.rls(x, y).value:.3f}  dCor={ma.dcor(x, y).value:.3f}  "
          f"dCor*={ma.dcor_star(x, y).value:.3f}")

# %% [markdown]
# RV under independence is not close to zero when the tables are wide
# compared with ``n``.  Its permutation mean depends only on ``n`` and on
# the spread of each table's eigenvalues.

# %%
wide_x, wide_y = rng.standard_normal((20, 60)), rng.standard_normal((20, 80))
print("RV", round(ma.rv(wide_x, wide_y).value, 3),
      "null mean", round(ma.rv_null_expectation(wide_x, wide_y), 3),
      "complexities", round(ma.complexity(wide_x), 1), round(ma.complexity(wide_y), 1))

# %% [markdown]
# With squared distances (``alpha=2``) distance correlation collapses to
# RV; with ``alpha < 2`` it also picks up nonlinear dependence.

# %%
for alpha in (0.5, 1.0, 1.5, 2.0):
    print(alpha, round(ma.dcor(x, nonlinear, alpha).value ** 2, 4), round(ma.rv(x, nonlinear).value, 4))

# %% [markdown]
# Procrustes superimposition of a rotated, scaled and shifted copy.

# %%
theta = 0.7
rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
shape = rng.standard_normal((10, 2))
copy = 2.5 * shape @ rot + [3.0, -1.0]
fit = ma.procrustes_align(shape, copy)
print("scale", round(fit.scale, 4), "residual", f"{fit.residual:.1e}")

# %% [markdown]
# The Lg coefficient measures how many strong dimensions a table has:
# about 1 for a table dominated by one direction.

# %%
z = rng.standard_normal(n)
one_dim = np.column_stack([z, 2 * z, -z]) + 0.05 * rng.standard_normal((n, 3))
print("Lg(one_dim)", round(ma.lg(one_dim, one_dim).value, 3), "Lg(x)", round(ma.lg(x, x).value, 3))
