# Where should two drives go?
#
# Try every pair of X drives on the five-qubit array and group the verdicts
# by how many couplings separate the two driven qubits.

# %%
from controlgraph import quito_spec, sweep_controls
from controlgraph.engine import summarize_by_distance, sweep_table

template = quito_spec("XX+YY", controls=())
rows = sweep_controls(template, k=2, delta_E=0.01, workers=2)
print(sweep_table(rows))

# %% [markdown]
# Neighbours and the far ends work; qubits two couplings apart do not.

# %%
for distance, counts in summarize_by_distance(rows).items():
    print(distance, counts)
