# A five-qubit array with the quito layout
#
# Couplings 0-1, 1-2, 1-3 and 3-4 (100, 250, 170 and 300 MHz), XX+YY form.
# 32 eigenstates, so a brute-force Lie algebra is out of reach (dimension up
# to 1024), but the graph test runs in a fraction of a second.

# %%
import time

from controlgraph import analyze, quito_spec

# %% [markdown]
# One X drive on every qubit. The drive alone decouples only 7 transitions;
# the rest sit in resonant sets.

# %%
t0 = time.perf_counter()
report = analyze(quito_spec("XX+YY"), delta_E=0.01)
print(report.summary())
print(f"{time.perf_counter() - t0:.2f} s")

# %% [markdown]
# Two drives, on qubits 1 and 3, give the same edge counts.

# %%
print(analyze(quito_spec("XX+YY", controls=(1, 3)), delta_E=0.01).summary())

# %% [markdown]
# A single drive never settles the question with XX+YY couplings; every
# resonant set is driven by just one control.

# %%
for q in range(5):
    print(q, analyze(quito_spec("XX+YY", controls=(q,))).verdict)

# %% [markdown]
# Adding ZZ to the couplings (and widening the resonance tolerance to 0.1 GHz)
# lets graphical commutators connect the graph from one drive.

# %%
for q in range(5):
    r = analyze(quito_spec("XX+YY+ZZ", controls=(q,)), delta_E=0.1)
    print(q, r.verdict, r.initial_decoupled_edges, "->", r.final_decoupled_edges, "edges", r.warnings)
