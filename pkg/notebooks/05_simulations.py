# %% [markdown]
# # Simulated calibration and power
#
# Reduced-size versions of the null and linear-link simulations with
# ``X`` of 43 x 68 and ``Y`` of 43 x 356, followed by a small power
# curve.  The acceptance tests run the full sizes.

# %%
from matassoc.simulation import SimulationSpec, power_study, table_study

for design in ("null_gaussian", "linear_block"):
    study = table_study(SimulationSpec(design, replicates=20, B=199, seed=1))
    s = study.summary
    print(f"{design}: median RV={s['median_rv']:.3f} RV*={s['median_rv_debiased']:.3f} "
          f"RV p={s['median_rv_p']:.3f} dCor={s['median_dcor']:.3f} dCor p={s['median_dcor_p']:.3f}")

# %% [markdown]
# Power of the RV test and of dCov with ``alpha = 1`` when every ``X``
# variable has covariance 0.1 with every ``Y`` variable.

# %%
power = power_study(SimulationSpec("null_gaussian", p=5, q=5, cross_cov=0.1, replicates=50, B=199, seed=2),
                    ns=(25, 50, 100), alphas=(1.0,))
for row in power.rows:
    print(row)
