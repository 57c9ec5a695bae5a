import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsubiso.ansatz import circular_topology, classical_permutation
from qsubiso.graph import (
    AdjacencyMatrix,
    Graph,
    PartialPermutation,
    VertexPermutation,
    disparity,
    pad_to_power_of_two,
    partial_loss,
    permute,
    select_block,
)
from qsubiso.oracle import (
    backtracking_match,
    closed_form_amplitude,
    enumerate_matches,
    qubit_requirements,
)
from qsubiso.solver import LossCircuitSpec, SolverConfig, plant_instance, utility

from conftest import random_adjacency


class TestEnumerate:
    def test_self_matches_are_automorphisms(self, sample_matrix):
        census = enumerate_matches(sample_matrix, sample_matrix)
        # swapping vertices 0 and 3 is the only non-trivial symmetry of the sample graph
        assert census.total_matches == 2
        assert PartialPermutation(4, (0, 1, 2, 3)) in census.matches
        assert PartialPermutation(4, (3, 1, 2, 0)) in census.matches
        assert census.unique_solutions == 1

    def test_single_vertex_pattern(self):
        a = random_adjacency(8, np.random.default_rng(0))
        census = enumerate_matches(a, AdjacencyMatrix.zeros(1))
        assert census.total_matches == 8 and census.unique_solutions == 8

    def test_refusal(self):
        a = random_adjacency(16, np.random.default_rng(0))
        census = enumerate_matches(a, select_block(a, 8))
        assert census.refused and census.total_matches is None
        assert census.space_size == 518918400

    def test_cap_is_configurable(self, sample_matrix):
        assert enumerate_matches(sample_matrix, sample_matrix, cap=10).refused

    def test_list_cap(self):
        a = AdjacencyMatrix.zeros(8)
        census = enumerate_matches(a, AdjacencyMatrix.zeros(4), list_cap=10)
        assert census.total_matches == 1680 and census.matches is None

    def test_json(self, sample_matrix):
        assert enumerate_matches(sample_matrix, sample_matrix).to_json_dict() == {"unique": 1, "total": 2}

    def test_unique_bounded_by_total(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            a = random_adjacency(8, rng, 0.4)
            b = select_block(permute(a, VertexPermutation.random(8, rng)), 4)
            c = enumerate_matches(a, b)
            assert 1 <= c.unique_solutions <= c.total_matches

    def test_matches_reproduce_pattern(self):
        rng = np.random.default_rng(4)
        a = random_adjacency(8, rng)
        b = select_block(permute(a, VertexPermutation.random(8, rng)), 4)
        for w in enumerate_matches(a, b).matches:
            assert select_block(permute(a, w.completion()), 4) == b


class TestBacktracking:
    def test_clique_into_tree(self):
        tree = pad_to_power_of_two(Graph.from_edges(8, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 7)]))
        k4 = AdjacencyMatrix(np.ones((4, 4), dtype=np.uint8) - np.eye(4, dtype=np.uint8))
        assert backtracking_match(tree, k4) == []
        assert enumerate_matches(tree, k4).total_matches == 0

    def test_contains_plant(self):
        t = circular_topology(3)
        a, b, g, perm = plant_instance(8, 4, t, 0.5, 2)
        assert PartialPermutation.from_permutation(perm, 4) in backtracking_match(a, b)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000))
    def test_agrees_with_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        a = random_adjacency(16, rng, rng.uniform(0.2, 0.8))
        b = select_block(permute(a, VertexPermutation.random(16, rng)), 4)
        assert set(backtracking_match(a, b)) == set(enumerate_matches(a, b).matches)

    def test_every_result_is_a_match(self):
        rng = np.random.default_rng(6)
        a, b = random_adjacency(8, rng), random_adjacency(4, rng)
        for w in backtracking_match(a, b):
            assert partial_loss(a, b, w) == 0


class TestClosedForm:
    def test_perfect_match(self, sample_matrix):
        assert closed_form_amplitude(sample_matrix, sample_matrix, VertexPermutation.identity(4)) == 1.0

    def test_half(self, sample_matrix):
        amp = closed_form_amplitude(sample_matrix, AdjacencyMatrix.zeros(4), VertexPermutation.identity(4))
        assert amp == 0.5

    def test_one_minus_disparity(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a, b = random_adjacency(8, rng), random_adjacency(4, rng)
            p = VertexPermutation.random(8, rng)
            block = select_block(permute(a, p), 4)
            assert abs(closed_form_amplitude(a, b, p) - (1 - disparity(block, b))) < 1e-12

    def test_matches_circuit(self):
        rng = np.random.default_rng(8)
        t = circular_topology(3)
        cfg = SolverConfig(shots=0)
        for _ in range(20):
            a, b = random_adjacency(8, rng), random_adjacency(4, rng)
            g = rng.integers(0, 2, t.n)
            p = classical_permutation(t, g)
            spec = LossCircuitSpec.for_graphs(a, b, t)
            assert abs(closed_form_amplitude(a, b, p) - utility(spec, np.pi * g, cfg)) < 1e-10


class TestQubitRequirements:
    @pytest.mark.parametrize("n,expected", [(16, 9), (8, 7), (4, 5), (17, 11), (2, 3), (1, 1)])
    def test_this_method(self, n, expected):
        assert qubit_requirements(n).this_method == expected

    def test_baselines(self):
        r = qubit_requirements(4)
        assert (r.qubo_full, r.compressed_min, r.compressed_max) == (16, 6, 16)

    def test_staircase(self):
        values = [qubit_requirements(n).this_method for n in range(9, 17)]
        assert values == [9] * 8

    def test_invalid(self):
        with pytest.raises(ValueError):
            qubit_requirements(0)
