import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from qsubiso.encoding import (
    PhaseDiagonal,
    compose,
    distinguishable,
    doubled,
    extend_pattern,
    log_hadamard_operator,
    phase_diagonal,
)
from qsubiso.graph import AdjacencyMatrix, select_block

from conftest import adjacency_matrices, random_adjacency


def all_order2():
    return [AdjacencyMatrix.zeros(2), AdjacencyMatrix(np.array([[0, 1], [1, 0]]))]


def xor(a, b):
    return AdjacencyMatrix(a.bits ^ b.bits)


class TestPhaseDiagonal:
    def test_sample_graph_first_row(self, sample_matrix):
        assert phase_diagonal(sample_matrix).to_list()[:4] == [1, -1, 1, -1]

    def test_zero_is_identity(self):
        assert phase_diagonal(AdjacencyMatrix.zeros(4)) == PhaseDiagonal.identity(4)

    def test_single_edge(self):
        edge = AdjacencyMatrix(np.array([[0, 1], [1, 0]]))
        assert phase_diagonal(edge).to_list() == [1, -1, -1, 1]

    def test_signs_symmetric(self):
        d = phase_diagonal(random_adjacency(8, np.random.default_rng(0)))
        s = d.signs.reshape(8, 8)
        assert np.array_equal(s, s.T)

    def test_from_signs_round_trip(self, sample_matrix):
        d = phase_diagonal(sample_matrix)
        assert PhaseDiagonal.from_signs(d.to_list()) == d

    def test_rejects_non_signs(self):
        with pytest.raises(ValueError):
            PhaseDiagonal.from_signs([1, 0, 1, 1])

    def test_length_check(self):
        with pytest.raises(ValueError):
            PhaseDiagonal(2, np.zeros(3))

    def test_injective_order4_exhaustive(self):
        iu = np.triu_indices(4, 1)
        seen = set()
        for flags in itertools.product((0, 1), repeat=6):
            bits = np.zeros((4, 4), dtype=np.uint8)
            bits[iu] = flags
            seen.add(phase_diagonal(AdjacencyMatrix(bits | bits.T)))
        assert len(seen) == 64


class TestCompose:
    def test_identity_is_neutral(self, sample_matrix):
        d = phase_diagonal(sample_matrix)
        assert compose(d, PhaseDiagonal.identity(4)) == d

    def test_self_inverse(self, sample_matrix):
        d = phase_diagonal(sample_matrix)
        assert compose(d, d) == PhaseDiagonal.identity(4)

    @settings(max_examples=80, deadline=None)
    @given(adjacency_matrices(orders=(8,)), adjacency_matrices(orders=(8,)))
    def test_homomorphism(self, a, b):
        assert compose(phase_diagonal(a), phase_diagonal(b)) == phase_diagonal(xor(a, b))

    def test_sign_product(self):
        rng = np.random.default_rng(4)
        a, b = random_adjacency(4, rng), random_adjacency(4, rng)
        prod = phase_diagonal(a).signs * phase_diagonal(b).signs
        assert np.array_equal(compose(phase_diagonal(a), phase_diagonal(b)).signs, prod)

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            compose(PhaseDiagonal.identity(2), PhaseDiagonal.identity(4))


class TestExtendPattern:
    def test_zero_border(self, sample_matrix):
        e = extend_pattern(sample_matrix, 8)
        assert e.order == 8
        assert not e.bits[4:].any() and not e.bits[:, 4:].any()

    def test_same_order_unchanged(self, sample_matrix):
        assert extend_pattern(sample_matrix, 4) == sample_matrix

    def test_round_trip(self, sample_matrix):
        assert select_block(extend_pattern(sample_matrix, 16), 4) == sample_matrix

    def test_too_small(self, sample_matrix):
        with pytest.raises(ValueError):
            extend_pattern(sample_matrix, 2)


class TestLogHadamard:
    def test_unitary_and_self_inverse(self, sample_matrix):
        u = log_hadamard_operator(sample_matrix.bits)
        assert u.shape == (32, 32)
        assert np.allclose(u @ u.conj().T, np.eye(32))
        assert np.allclose(u @ u, np.eye(32))

    def test_zero_graph_is_identity(self):
        assert np.allclose(log_hadamard_operator(np.zeros((2, 2))), np.eye(8))

    def test_doubled_erases_global_phase(self, sample_matrix):
        u = log_hadamard_operator(sample_matrix.bits)
        assert np.allclose(doubled(u), doubled(np.exp(0.7j) * u))


class TestDistinguishable:
    def test_same(self, sample_matrix):
        assert not distinguishable(sample_matrix, sample_matrix)

    def test_zero_versus_edge(self):
        zero, edge = all_order2()
        assert distinguishable(zero, edge)

    def test_exhaustive_order2(self):
        for a, b in itertools.product(all_order2(), repeat=2):
            assert distinguishable(a, b) == (a != b)

    def test_random_order4_and_8(self):
        rng = np.random.default_rng(9)
        for n, count in ((4, 300), (8, 700)):
            for _ in range(count):
                a, b = random_adjacency(n, rng), random_adjacency(n, rng)
                assert distinguishable(a, b) == (a != b)

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            distinguishable(AdjacencyMatrix.zeros(2), AdjacencyMatrix.zeros(4))

    def test_control_shrinks_kernel(self):
        # a global sign flip is invisible without the control qubit, visible with it
        flip = np.ones((2, 2), dtype=np.uint8)
        zero = np.zeros((2, 2), dtype=np.uint8)
        plain = [doubled(log_hadamard_operator(m, controlled=False)) for m in (flip, zero)]
        ctrl = [doubled(log_hadamard_operator(m, controlled=True)) for m in (flip, zero)]
        assert np.allclose(plain[0], plain[1])
        assert not np.allclose(ctrl[0], ctrl[1])
