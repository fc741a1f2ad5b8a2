# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Laplacian embeddings and sparse graphs
#
# The two-step alternative embeds each graph with the normalized Laplacian
# D^-1/2 A D^-1/2 and then runs distance covariance on the rows. When the
# kernel matrices are known we can embed them the same way and watch the two
# values meet as n grows.

# %%
from gcorr import Setting
from gcorr.testing import convergence_study, laplacian_study

# %%
table = laplacian_study(Setting.LINEAR, [200, 600], d=2, replicates=5, seed=0)
print(table.groupby("n")["gap"].median())

# %% [markdown]
# ## Shrinking edge density
#
# Scaling every edge probability by rho_n = n^(-1/3) thins the graphs. The
# signal is weak at small n and comes back once there are enough edges.

# %%
sparse = convergence_study(Setting.LINEAR, [200, 800], 0.0, replicates=5, seed=2,
                           rho=lambda n: n ** (-1 / 3), per_replicate=True)
print(sparse.groupby("n")[["rho", "gcorr"]].median())
