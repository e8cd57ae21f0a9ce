# %% [markdown]
# # Several tables on the same individuals
#
# Five "panels" score the same 12 products.  Three agree closely and two
# follow a different pattern.

# %%
import numpy as np

import matassoc as ma

rng = np.random.default_rng(4)
n = 12
consensus = rng.standard_normal((n, 3))
other = rng.standard_normal((n, 3))
tables = [consensus + 0.3 * rng.standard_normal((n, 3)) for _ in range(3)]
tables += [other + 0.3 * rng.standard_normal((n, 3)) for _ in range(2)]
labels = ["P1", "P2", "P3", "Q1", "Q2"]

# %%
am = ma.association_matrix(tables, "rv", labels=labels)
print(np.round(am.values, 2))

# %% [markdown]
# Between-structure: tables close together in this map have similar
# configurations of the products.

# %%
emb = ma.between_structure(am, dims=2)
for lab, row in zip(labels, emb.coordinates):
    print(lab, np.round(row, 3))

# %% [markdown]
# STATIS compromise and the Lg-based group coordinates.

# %%
model = ma.statis_compromise(tables, labels=labels)
print("weights", np.round(model.weights, 3))
print("compromise eigenvalues", np.round(model.compromise_eigenvalues[:4], 3))
print("group coordinates\n", np.round(ma.mfa_group_coordinates(tables, model, dims=2), 3))
