"""Graphs, adjacency matrices over Z2 and classical permutation algebra.

Vertex permutations are stored as index arrays ``mapping`` with
``mapping[i] = p(i)``.  Permuting an adjacency matrix relabels vertex ``i``
as ``p(i)``, so ``permute(a, p)[p(i), p(j)] == a[i, j]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 2**10


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0 .. num_vertices - 1``."""

    num_vertices: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.num_vertices < 1:
            raise ValueError("a graph needs at least one vertex")
        canon = set()
        for e in self.edges:
            u, v = tuple(e) if len(e) == 2 else (None, None)
            if u is None or u == v:
                raise ValueError(f"invalid edge {e!r}: self-loops are not allowed")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge {e!r} out of range for {self.num_vertices} vertices")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(canon))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(tuple(int(x) for x in e) for e in edges))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True, eq=False)
class AdjacencyMatrix:
    """Symmetric binary matrix with zero diagonal and power-of-two order."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits)
        if bits.ndim != 2 or bits.shape[0] != bits.shape[1]:
            raise ValueError("adjacency matrix must be square")
        n = bits.shape[0]
        if not _is_power_of_two(n):
            raise ValueError(f"order {n} is not a power of two")
        if n > MAX_ORDER:
            raise ValueError(f"order {n} exceeds the cap {MAX_ORDER}")
        if not np.isin(bits, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        bits = bits.astype(np.uint8)
        if not np.array_equal(bits, bits.T):
            raise ValueError("adjacency matrix must be symmetric")
        if bits.diagonal().any():
            raise ValueError("adjacency matrix must have a zero diagonal")
        object.__setattr__(self, "bits", _frozen(bits))

    @property
    def order(self) -> int:
        return self.bits.shape[0]

    @property
    def k(self) -> int:
        """Number of qubits indexing one vertex register."""
        return self.order.bit_length() - 1

    @classmethod
    def zeros(cls, order: int) -> "AdjacencyMatrix":
        return cls(np.zeros((order, order), dtype=np.uint8))

    @classmethod
    def from_graph(cls, g: Graph) -> "AdjacencyMatrix":
        return pad_to_power_of_two(g)

    def to_graph(self) -> Graph:
        iu, ju = np.nonzero(np.triu(self.bits, 1))
        return Graph.from_edges(self.order, zip(iu.tolist(), ju.tolist()))

    def num_edges(self) -> int:
        return int(self.bits.sum()) // 2

    def __eq__(self, other):
        if not isinstance(other, AdjacencyMatrix):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.order, self.bits.tobytes()))

    def __repr__(self):
        return f"AdjacencyMatrix(order={self.order}, edges={self.num_edges()})"


@dataclass(frozen=True, eq=False)
class VertexPermutation:
    """A bijection on ``range(N)`` with ``mapping[i] = p(i)``."""

    mapping: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mapping, dtype=np.int64)
        if m.ndim != 1 or not np.array_equal(np.sort(m), np.arange(m.size)):
            raise ValueError("mapping is not a permutation of range(N)")
        object.__setattr__(self, "mapping", _frozen(m))

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(np.arange(n))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "VertexPermutation":
        return cls(rng.permutation(n))

    def __len__(self):
        return self.mapping.size

    def __call__(self, i: int) -> int:
        return int(self.mapping[i])

    def inverse(self) -> "VertexPermutation":
        inv = np.empty_like(self.mapping)
        inv[self.mapping] = np.arange(self.mapping.size)
        return VertexPermutation(inv)

    def then(self, other: "VertexPermutation") -> "VertexPermutation":
        """Apply ``self`` first, then ``other``: ``i -> other(self(i))``."""
        if len(other) != len(self):
            raise ValueError("permutation sizes differ")
        return VertexPermutation(other.mapping[self.mapping])

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``sum_i |p(i)><i|``."""
        n = len(self)
        out = np.zeros((n, n), dtype=np.uint8)
        out[self.mapping, np.arange(n)] = 1
        return out

    def __eq__(self, other):
        if not isinstance(other, VertexPermutation):
            return NotImplemented
        return np.array_equal(self.mapping, other.mapping)

    def __hash__(self):
        return hash(self.mapping.tobytes())

    def __repr__(self):
        return f"VertexPermutation({self.mapping.tolist()})"


@dataclass(frozen=True, eq=False)
class PartialPermutation:
    """Injective map of pattern vertices into source vertices.

    ``image[t]`` is the source vertex matched to pattern vertex ``t``.  As a
    matrix this is ``W = S P`` with row ``t`` equal to the basis vector
    ``e_{image[t]}``.
    """

    source_order: int
    image: tuple

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if len(set(image)) != len(image):
            raise ValueError("image entries must be distinct")
        if any(not 0 <= x < self.source_order for x in image):
            raise ValueError("image entry out of range")
        object.__setattr__(self, "image", image)

    @property
    def target_order(self) -> int:
        return len(self.image)

    @classmethod
    def from_permutation(cls, p: VertexPermutation, n_b: int) -> "PartialPermutation":
        """First ``n_b`` rows of ``P``: pattern vertex ``t`` sits at ``p^-1(t)``."""
        inv = p.inverse().mapping
        return cls(len(p), tuple(inv[:n_b].tolist()))

    def completion(self) -> VertexPermutation:
        """Some full permutation ``p`` with ``p^-1(t) = image[t]`` for ``t < N_B``."""
        rest = [v for v in range(self.source_order) if v not in set(self.image)]
        inv = np.array(list(self.image) + rest)
        return VertexPermutation(inv).inverse()

    def matrix(self) -> np.ndarray:
        w = np.zeros((self.target_order, self.source_order), dtype=np.uint8)
        w[np.arange(self.target_order), list(self.image)] = 1
        return w

    def vertex_set(self) -> frozenset:
        return frozenset(self.image)

    def __eq__(self, other):
        if not isinstance(other, PartialPermutation):
            return NotImplemented
        return self.source_order == other.source_order and self.image == other.image

    def __hash__(self):
        return hash((self.source_order, self.image))

    def __repr__(self):
        return f"PartialPermutation({self.source_order}, {list(self.image)})"


def pad_to_power_of_two(g: Graph) -> AdjacencyMatrix:
    """Adjacency matrix of ``g`` with isolated vertices appended at the high indices."""
    n = 1 << (g.num_vertices - 1).bit_length()
    bits = np.zeros((n, n), dtype=np.uint8)
    for u, v in g.edges:
        bits[u, v] = bits[v, u] = 1
    return AdjacencyMatrix(bits)


def erdos_renyi(n: int, prob: float, seed) -> Graph:
    """G(n, prob) random graph; ``seed`` is an int or a ``numpy`` Generator."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError("prob must lie in [0, 1]")
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < prob
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def permute(a: AdjacencyMatrix, p: VertexPermutation) -> AdjacencyMatrix:
    """``P A P^T``: entry ``[i, j]`` equals ``a[p^-1(i), p^-1(j)]``."""
    if len(p) != a.order:
        raise ValueError(f"permutation of size {len(p)} does not match order {a.order}")
    inv = p.inverse().mapping
    return AdjacencyMatrix(a.bits[np.ix_(inv, inv)])


def select_block(a: AdjacencyMatrix, n_b: int) -> AdjacencyMatrix:
    """Upper-left ``n_b x n_b`` block, ``S A S^T``."""
    if n_b > a.order:
        raise ValueError("block larger than matrix")
    return AdjacencyMatrix(a.bits[:n_b, :n_b])


def classical_loss(a: AdjacencyMatrix, b: AdjacencyMatrix, p: VertexPermutation) -> int:
    """Squared Frobenius distance between the selected block of ``P A P^T`` and ``b``."""
    if b.order > a.order:
        raise ValueError("pattern larger than source")
    if len(p) != a.order:
        raise ValueError("permutation size does not match the source order")
    inv = p.inverse().mapping[: b.order]
    block = a.bits[np.ix_(inv, inv)]
    return int(np.count_nonzero(block != b.bits))


def partial_loss(a: AdjacencyMatrix, b: AdjacencyMatrix, w: PartialPermutation) -> int:
    """Mismatch count of a partial permutation, equal to ``classical_loss`` of any completion."""
    if w.source_order != a.order or w.target_order != b.order:
        raise ValueError("partial permutation shape does not match the graphs")
    idx = list(w.image)
    return int(np.count_nonzero(a.bits[np.ix_(idx, idx)] != b.bits))


def disparity(a: AdjacencyMatrix, b: AdjacencyMatrix) -> float:
    """Fraction of mismatched entries, ``||A - B||_F^2 / N^2``."""
    if a.order != b.order:
        raise ValueError("disparity needs matrices of equal order")
    return np.count_nonzero(a.bits != b.bits) / a.order**2


def search_space_size(n_a: int, n_b: int) -> int:
    """Number of injective maps of ``n_b`` pattern vertices into ``n_a`` source vertices."""
    if not 0 <= n_b <= n_a:
        raise ValueError("need 0 <= n_b <= n_a")
    return math.perm(n_a, n_b)
