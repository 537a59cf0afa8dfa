# The rank test on resonant transitions
#
# Each transition t spans a small su(2): F_t, G_t and D_t. Together with a
# central direction for the drift, n_t disjoint transitions give a space of
# dimension 3*n_t + 1. A resonant set is decoupled when the drift and the
# drive patterns generate all of it.

# %%
import numpy as np

from controlgraph.decouple import gfd_vector, subalgebra_rank

# one driven transition: F, G, D and the drift
print(subalgebra_rank([0.7], [gfd_vector([0.3 + 0.4j])]))

# %% [markdown]
# Two transitions with a common gap, driven by the two local controls of the
# XX pair. The patterns are independent, so the rank is full.

# %%
print(subalgebra_rank([4.96, 4.96], [gfd_vector([-0.2807, 0.2807]), gfd_vector([0.9674, 0.9674])]))

# %% [markdown]
# Proportional patterns on a common gap with equal magnitudes move the two
# transitions in lockstep: rank 4. Unequal magnitudes already break the tie.

# %%
print(subalgebra_rank([1.0, 1.0], [gfd_vector([0.5, 0.5]), gfd_vector([1.0, 1.0])]))
print(subalgebra_rank([1.0, 1.0], [gfd_vector([0.3, 0.7]), gfd_vector([0.6, 1.4])]))

# %% [markdown]
# Re-phasing an eigenvector multiplies a transition's coefficient in every
# pattern by the same unit number. The rank does not notice.

# %%
rng = np.random.default_rng(0)
rows = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
phase = np.exp(1j * rng.uniform(0, 2 * np.pi, 3))
gaps = [1.0, 1.4, 2.1]
print(subalgebra_rank(gaps, [gfd_vector(r) for r in rows]), subalgebra_rank(gaps, [gfd_vector(r * phase) for r in rows]))
