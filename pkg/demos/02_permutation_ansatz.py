# # The permutation ansatz
#
# Each parameter rotates about a self-inverse permutation of the vertex
# index: a bit flip or a controlled bit flip.  At integer multiples of pi the
# whole circuit is a single permutation (times a global phase), which can be
# read off classically without any simulation.

# %%
import numpy as np

from qsubiso.ansatz import circular_topology, classical_permutation, emit_gates, reachable_permutations
from qsubiso.simulator import run, unitary

# %%
t = circular_topology(3)
print("parameters:", t.n)
for e in t.elements[:5]:
    print(" ", e)

# %% [markdown]
# Pick a random binary vector and compare the simulated unitary with the
# permutation predicted from index bits alone.

# %%
rng = np.random.default_rng(3)
bits = rng.integers(0, 2, t.n)
u = unitary(emit_gates(t, np.pi * bits), t.k)
perm = classical_permutation(t, bits)
print("predicted mapping:", perm.mapping.tolist())
print("simulated mapping:", np.argmax(np.abs(u), axis=0).tolist())
phases = u[perm.mapping, np.arange(8)]
print("one shared phase:", np.allclose(phases, phases[0]))

# %% [markdown]
# Not every permutation is reachable.  The circular ansatz on three qubits
# covers a small slice of the 40320 permutations of eight indices.

# %%
reach = reachable_permutations(t)
print(f"reachable: {len(reach)} of 40320")

# %% [markdown]
# Away from integer points the circuit mixes permutations.  The uniform
# superposition |+...+> is left alone (up to phase) for every parameter
# choice, which is why the loss circuit prepares it.

# %%
plus = np.full(8, 8 ** -0.5, dtype=complex)
theta = rng.uniform(0, 2 * np.pi, t.n)
out = run(emit_gates(t, theta), 3, initial=plus).amplitudes
print("|<+|P(theta)|+>| =", abs(np.vdot(plus, out)))
print("|P(theta)|0>| magnitudes:", np.round(np.abs(run(emit_gates(t, theta), 3).amplitudes), 3))
