# # Search mode, checked against brute force
#
# In search mode nothing guarantees the pattern sits where the ansatz can
# reach it.  Each run relabels the source at random first, which shuffles
# which embeddings are reachable.  Every reported match is compared with the
# exhaustive census.

# %%
import numpy as np

from qsubiso.ansatz import circular_topology
from qsubiso.graph import VertexPermutation, erdos_renyi, pad_to_power_of_two, permute, select_block
from qsubiso.oracle import backtracking_match, enumerate_matches, qubit_requirements
from qsubiso.solver import SolverConfig, run_batch

# %%
rng = np.random.default_rng(16)
source = pad_to_power_of_two(erdos_renyi(16, 0.5, rng))
pattern = select_block(permute(source, VertexPermutation.random(16, rng)), 4)
census = enumerate_matches(source, pattern)
print("census:", census.to_json_dict(), "over", census.space_size, "injective maps")
print("backtracking agrees:", set(backtracking_match(source, pattern)) == set(census.matches))

# %%
stats = run_batch(source, pattern, circular_topology(4), SolverConfig(seed=3, shots=0), runs=15, mode="search")
print(f"{stats.convergent_pct:.0f}% of runs found a match")
print("all found matches are genuine:", set(stats.solutions) <= set(census.matches))
print(f"distinct vertex sets found: {stats.unique_solutions_found} of {census.unique_solutions}")

# %% [markdown]
# Qubit budgets.  The log-Hadamard encoding needs 2*ceil(log2 N) + 1 qubits,
# against N**2 for a one-hot QUBO encoding.

# %%
print(" N  this  qubo  compressed(min..max)")
for n in (4, 8, 12, 16, 17, 32, 64):
    r = qubit_requirements(n)
    print(f"{n:3d} {r.this_method:5d} {r.qubo_full:5d}  {r.compressed_min}..{r.compressed_max}")
