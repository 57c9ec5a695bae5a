# # Encoding graphs as sign diagonals
#
# A graph on N = 2**k vertices becomes a diagonal of +1/-1 entries on 2k
# qubits.  Comparing two graphs then costs one controlled diagonal each, and
# the probability of reading all zeros tells us how far apart they are.

# %%
import numpy as np

from qsubiso.ansatz import circular_topology, classical_permutation
from qsubiso.encoding import compose, phase_diagonal
from qsubiso.graph import AdjacencyMatrix, Graph, disparity, pad_to_power_of_two, permute, select_block
from qsubiso.solver import LossCircuitSpec, SolverConfig, exact_probability, utility

# %% [markdown]
# A four-vertex graph.  Padding is a no-op here since 4 is already a power of two.

# %%
g = Graph.from_edges(4, [(0, 1), (0, 3), (1, 3), (1, 2)])
a = pad_to_power_of_two(g)
print(a.bits)

# %% [markdown]
# Row-major flattening gives one sign per pair ``(i, j)``.

# %%
d = phase_diagonal(a)
print(d.signs.reshape(4, 4))

# %% [markdown]
# Adding graphs over Z2 (XOR of adjacency bits) multiplies their diagonals.
# Every diagonal is its own inverse.

# %%
one_edge = AdjacencyMatrix(np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0] * 4, [0] * 4], dtype=np.uint8))
lhs = compose(d, phase_diagonal(one_edge))
rhs = phase_diagonal(AdjacencyMatrix(a.bits ^ one_edge.bits))
print("homomorphism holds:", lhs == rhs)
print("self-inverse:", not compose(d, d).bits.any())

# %% [markdown]
# The loss circuit.  With the ansatz parked at zero (the identity
# permutation) the all-zeros probability against the empty graph is 1/4,
# so the utility is 1/2 and the quantum loss equals the classical
# disparity of 8 mismatches out of 16 entries.

# %%
t = circular_topology(2)
spec = LossCircuitSpec(a, AdjacencyMatrix.zeros(4), t, "GI")
exact = SolverConfig(shots=0)
print("P0 =", exact_probability(spec, np.zeros(t.n)))
print("quantum loss =", 1 - utility(spec, np.zeros(t.n), exact))
print("disparity    =", disparity(a, AdjacencyMatrix.zeros(4)))

# %% [markdown]
# The same agreement holds at any integer multiple of pi, for sub-graph
# patterns too.  Here an 8-vertex source is compared with a 4-vertex pattern.

# %%
rng = np.random.default_rng(0)
t3 = circular_topology(3)
for _ in range(5):
    src = pad_to_power_of_two(Graph.from_edges(8, [tuple(rng.choice(8, 2, replace=False)) for _ in range(10)]))
    pat = select_block(src, 4) if rng.random() < 0.5 else AdjacencyMatrix.zeros(4)
    bits = rng.integers(0, 2, t3.n)
    p = classical_permutation(t3, bits)
    quantum = 1 - utility(LossCircuitSpec.for_graphs(src, pat, t3), np.pi * bits, exact)
    classical = disparity(select_block(permute(src, p), 4), pat)
    print(f"quantum {quantum:.12f}  classical {classical:.12f}")
