"""Classical ground truth for induced subgraph matching.

Two independent matchers (vectorised exhaustive enumeration and a
depth-first backtracking search), the closed-form loss-circuit amplitude at a
fixed permutation, and qubit-count formulas for comparison with QUBO
encodings.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import AdjacencyMatrix, PartialPermutation, VertexPermutation, search_space_size

ENUMERATION_CAP = 10**7
MATCH_LIST_CAP = 100_000
_CHUNK = 50_000


@dataclass
class MatchCensus:
    """Outcome of exhaustive enumeration.

    ``refused`` is set (and the counts left as ``None``) when the search
    space exceeds the cap.  ``unique_solutions`` counts distinct image vertex
    sets; ``total_matches`` counts zero-loss partial permutations.
    """

    total_matches: Optional[int]
    unique_solutions: Optional[int]
    matches: Optional[list] = field(default=None, repr=False)
    refused: bool = False
    space_size: int = 0

    def to_json_dict(self) -> dict:
        return {"unique": self.unique_solutions, "total": self.total_matches}


def enumerate_matches(
    source: AdjacencyMatrix,
    pattern: AdjacencyMatrix,
    cap: int = ENUMERATION_CAP,
    list_cap: int = MATCH_LIST_CAP,
) -> MatchCensus:
    """Test every injective map of pattern vertices into source vertices."""
    n_a, n_b = source.order, pattern.order
    size = search_space_size(n_a, n_b)
    if size > cap:
        return MatchCensus(None, None, None, refused=True, space_size=size)
    hits = []
    candidates = itertools.permutations(range(n_a), n_b)
    while True:
        chunk = np.array(list(itertools.islice(candidates, _CHUNK)), dtype=np.int64).reshape(-1, n_b)
        if chunk.size == 0:
            break
        blocks = source.bits[chunk[:, :, None], chunk[:, None, :]]
        ok = (blocks == pattern.bits).all(axis=(1, 2))
        hits.extend(map(tuple, chunk[ok].tolist()))
    matches = [PartialPermutation(n_a, h) for h in hits]
    return MatchCensus(
        total_matches=len(matches),
        unique_solutions=len({frozenset(h) for h in hits}),
        matches=matches if len(matches) <= list_cap else None,
        space_size=size,
    )


def backtracking_match(source: AdjacencyMatrix, pattern: AdjacencyMatrix) -> list:
    """All induced embeddings, found by extending partial maps one pattern vertex at a time."""
    a, b = source.bits, pattern.bits
    n_a, n_b = source.order, pattern.order
    out: list = []
    image: list = []
    used = [False] * n_a

    def consistent(v: int) -> bool:
        t = len(image)
        for s, u in enumerate(image):
            if a[u, v] != b[s, t]:
                return False
        return True

    def extend():
        if len(image) == n_b:
            out.append(PartialPermutation(n_a, tuple(image)))
            return
        for v in range(n_a):
            if not used[v] and consistent(v):
                used[v] = True
                image.append(v)
                extend()
                image.pop()
                used[v] = False

    extend()
    return out


def closed_form_amplitude(source: AdjacencyMatrix, pattern: AdjacencyMatrix, p: VertexPermutation) -> float:
    """``1/2 + 1/(2 N_B^2) * sum_{i,j < N_B} (-1)**(A[p^-1 i, p^-1 j] + B[i, j])``."""
    n_b = pattern.order
    inv = p.inverse()
    total = 0
    for i in range(n_b):
        for j in range(n_b):
            total += (-1) ** (int(source.bits[inv(i), inv(j)]) + int(pattern.bits[i, j]))
    return 0.5 + total / (2 * n_b**2)


@dataclass(frozen=True)
class QubitRequirements:
    n_vertices: int
    this_method: int
    qubo_full: int
    compressed_min: int
    compressed_max: int


def qubit_requirements(n_vertices: int) -> QubitRequirements:
    if n_vertices < 1:
        raise ValueError("need at least one vertex")
    k = (n_vertices - 1).bit_length()
    return QubitRequirements(
        n_vertices=n_vertices,
        this_method=2 * k + 1,
        qubo_full=n_vertices**2,
        compressed_min=n_vertices + 2,
        compressed_max=n_vertices**2,
    )
