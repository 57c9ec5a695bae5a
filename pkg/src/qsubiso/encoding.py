"""Sign-diagonal encoding of adjacency matrices.

An order-``N`` adjacency matrix ``A`` becomes the length ``N**2`` diagonal
``(-1)**A[i, j]`` on the basis ``|i, j>`` of ``2k`` qubits.  The diagonal is
kept as a bit vector (bit set where the sign is ``-1``) so that group
operations are exact XORs.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .graph import AdjacencyMatrix

DISTINGUISH_CAP = 4

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class PhaseDiagonal:
    """The diagonal of ``exp(h(A))`` stored as sign bits."""

    order_n: int
    bits: np.ndarray

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8).ravel()
        if bits.size != self.order_n**2:
            raise ValueError("diagonal length must be order_n**2")
        bits = bits.copy()
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def identity(cls, order_n: int) -> "PhaseDiagonal":
        return cls(order_n, np.zeros(order_n**2, dtype=np.uint8))

    @classmethod
    def from_signs(cls, signs) -> "PhaseDiagonal":
        signs = np.asarray(signs)
        if not np.isin(signs, (1, -1)).all():
            raise ValueError("signs must be +1 or -1")
        n = int(round(np.sqrt(signs.size)))
        return cls(n, (signs < 0).astype(np.uint8))

    @property
    def signs(self) -> np.ndarray:
        return 1 - 2 * self.bits.astype(np.int8)

    def to_list(self) -> list[int]:
        return self.signs.astype(int).tolist()

    def __eq__(self, other):
        if not isinstance(other, PhaseDiagonal):
            return NotImplemented
        return self.order_n == other.order_n and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.order_n, self.bits.tobytes()))


def phase_diagonal(a: AdjacencyMatrix) -> PhaseDiagonal:
    """Row-major flattening, ``signs[i*N + j] = (-1)**A[i, j]``."""
    return PhaseDiagonal(a.order, a.bits.ravel())


def compose(d1: PhaseDiagonal, d2: PhaseDiagonal) -> PhaseDiagonal:
    if d1.order_n != d2.order_n:
        raise ValueError("diagonals of different order")
    return PhaseDiagonal(d1.order_n, d1.bits ^ d2.bits)


def extend_pattern(b: AdjacencyMatrix, target_order: int) -> AdjacencyMatrix:
    """Embed ``b`` in the upper-left corner of a zero matrix of ``target_order``."""
    if target_order < b.order:
        raise ValueError("target order smaller than pattern order")
    out = np.zeros((target_order, target_order), dtype=np.uint8)
    out[: b.order, : b.order] = b.bits
    return AdjacencyMatrix(out)


def _hadamard_power(m: int) -> np.ndarray:
    return reduce(np.kron, [_H] * m, np.ones((1, 1)))


def log_hadamard_operator(bits: np.ndarray, controlled: bool = True) -> np.ndarray:
    """Dense ``H^m . cexp(h(A)) . H^m`` for a symmetric binary matrix.

    ``bits`` may carry a nonzero diagonal so the uncontrolled variant can be
    probed outside the adjacency-matrix domain.  Only for tiny orders.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    diag = 1.0 - 2.0 * bits.ravel()
    if controlled:
        diag = np.concatenate([np.ones_like(diag), diag])
    m = int(np.log2(diag.size))
    h = _hadamard_power(m)
    return (h * diag) @ h


def doubled(u: np.ndarray) -> np.ndarray:
    """``conj(U) (x) U``, blind to global phase."""
    return np.kron(np.conj(u), u)


def distinguishable(a: AdjacencyMatrix, b: AdjacencyMatrix, atol: float = 1e-10) -> bool:
    """Whether the doubled log-Hadamard operators of ``a`` and ``b`` differ.

    Builds the dense doubled operators for orders up to ``DISTINGUISH_CAP``;
    larger orders compare sign diagonals instead, which is equivalent because
    the doubled map has a trivial kernel.
    """
    if a.order != b.order:
        raise ValueError("order mismatch")
    if a.order > DISTINGUISH_CAP:
        return phase_diagonal(a) != phase_diagonal(b)
    da = doubled(log_hadamard_operator(a.bits))
    db = doubled(log_hadamard_operator(b.bits))
    return not np.allclose(da, db, rtol=0.0, atol=atol)
