# Checking the graph test against the full Lie algebra
#
# For two qubits the dynamical Lie algebra lives in u(4), small enough to
# close by brute force. A Controllable verdict must come with dimension 15 or
# 16, and NotControllable with less.

# %%
from collections import Counter

from controlgraph import lie_dimension, two_qubit_spec
from controlgraph.model import build_controls, build_drift, embed_single_qubit
from controlgraph.oracle import cross_validate, spec_dimension

# %%
print("Z drift, X drive on one qubit:", lie_dimension(embed_single_qubit("Z", 0, 1), [embed_single_qubit("X", 0, 1)]))
print("XX pair, both drives:", spec_dimension(two_qubit_spec("XX", controls=(1, 0))))
print("XX pair, one drive:", spec_dimension(two_qubit_spec("XX", controls=(1,))))

# %% [markdown]
# Random systems: frequencies, coupling form and strength, and drive subsets.

# %%
checks = cross_validate(200, seed=2024)
print(Counter((c.graph_verdict, c.dimension) for c in checks))
print("violations:", sum(c.violation for c in checks))
