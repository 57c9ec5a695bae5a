"""Variational quantum (sub)graph isomorphism on a statevector simulator.

Submodules: ``graph`` (graphs and permutations), ``encoding`` (log-Hadamard
phase diagonals), ``simulator`` (statevector engine), ``ansatz``
(permutation circuits), ``solver`` (variational loop), ``oracle``
(classical ground truth), ``io`` and ``cli``.
"""
from .ansatz import AnsatzTopology, Entangling, NonEntangling, circular_topology, classical_permutation
from .graph import (
    AdjacencyMatrix,
    Graph,
    PartialPermutation,
    VertexPermutation,
    classical_loss,
    erdos_renyi,
    pad_to_power_of_two,
    partial_loss,
    search_space_size,
)
from .oracle import enumerate_matches, qubit_requirements
from .solver import SolverConfig, run_batch, run_single

__all__ = [
    "AdjacencyMatrix",
    "AnsatzTopology",
    "Entangling",
    "Graph",
    "NonEntangling",
    "PartialPermutation",
    "SolverConfig",
    "VertexPermutation",
    "circular_topology",
    "classical_loss",
    "classical_permutation",
    "enumerate_matches",
    "erdos_renyi",
    "pad_to_power_of_two",
    "partial_loss",
    "qubit_requirements",
    "run_batch",
    "run_single",
    "search_space_size",
]
__version__ = "0.1.0"
