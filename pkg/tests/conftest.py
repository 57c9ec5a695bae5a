import numpy as np
import pytest
from hypothesis import strategies as st

from qsubiso.graph import AdjacencyMatrix, Graph, VertexPermutation

# 4-vertex sample graph used throughout: edges {0,1},{0,3},{1,3},{1,2}
SAMPLE_EDGES = [(0, 1), (0, 3), (1, 3), (1, 2)]
SAMPLE_BITS = np.array(
    [
        [0, 1, 0, 1],
        [1, 0, 1, 1],
        [0, 1, 0, 0],
        [1, 1, 0, 0],
    ],
    dtype=np.uint8,
)


@pytest.fixture
def sample_graph():
    return Graph.from_edges(4, SAMPLE_EDGES)


@pytest.fixture
def sample_matrix():
    return AdjacencyMatrix(SAMPLE_BITS)


def random_adjacency(order, rng, prob=0.5):
    upper = np.triu(rng.random((order, order)) < prob, 1)
    return AdjacencyMatrix((upper | upper.T).astype(np.uint8))


@st.composite
def adjacency_matrices(draw, orders=(1, 2, 4, 8)):
    n = draw(st.sampled_from(orders))
    m = n * (n - 1) // 2
    flags = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    bits = np.zeros((n, n), dtype=np.uint8)
    iu = np.triu_indices(n, 1)
    bits[iu] = flags
    return AdjacencyMatrix(bits | bits.T)


@st.composite
def permutations_of(draw, n):
    return VertexPermutation(np.array(draw(st.permutations(range(n)))))
