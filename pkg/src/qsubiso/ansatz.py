"""Parametric permutation-superposition circuits.

A topology is an ordered list of elements acting on a ``k``-qubit vertex
register.  Parametrised elements are rotations ``exp(-i theta/2 P)`` about a
self-inverse permutation ``P``:

* ``NonEntangling(q)`` -- ``P`` flips bit ``q`` (``H U1(theta) H``);
* ``Entangling(qa, qb, a)`` -- ``P`` is a CNOT; ``a = 0`` means control
  ``qa``/target ``qb``, ``a = 1`` swaps the roles (Hadamard-conjugated
  controlled phase);

and ``FixedSwap`` elements carry no parameter (used to wire the wrap-around
block of the circular topology).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .graph import VertexPermutation
from .simulator import ControlledPhaseGate, HadamardLayer, PhaseGate, Swap

DEFAULT_BLOCK_PATTERN = (0, 1, 0)


@dataclass(frozen=True)
class NonEntangling:
    qubit: int


@dataclass(frozen=True)
class Entangling:
    qa: int
    qb: int
    a: int = 0

    def __post_init__(self):
        if self.qa == self.qb:
            raise ValueError("entangling primitive needs two distinct qubits")
        if self.a not in (0, 1):
            raise ValueError("direction a must be 0 or 1")

    @property
    def control(self) -> int:
        return self.qa if self.a == 0 else self.qb

    @property
    def target(self) -> int:
        return self.qb if self.a == 0 else self.qa


@dataclass(frozen=True)
class FixedSwap:
    q1: int
    q2: int


Primitive = Union[NonEntangling, Entangling]
Element = Union[NonEntangling, Entangling, FixedSwap]


def _element_qubits(e) -> tuple:
    if isinstance(e, NonEntangling):
        return (e.qubit,)
    if isinstance(e, Entangling):
        return (e.qa, e.qb)
    return (e.q1, e.q2)


@dataclass(frozen=True)
class AnsatzTopology:
    k: int
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for e in self.elements:
            if any(not 0 <= q < self.k for q in _element_qubits(e)):
                raise ValueError(f"{e!r} touches a qubit outside range({self.k})")

    @property
    def primitives(self) -> tuple:
        return tuple(e for e in self.elements if not isinstance(e, FixedSwap))

    @property
    def n(self) -> int:
        return len(self.primitives)

    def to_json(self) -> str:
        out = []
        for e in self.elements:
            if isinstance(e, NonEntangling):
                out.append({"kind": "nonentangling", "qubits": [e.qubit]})
            elif isinstance(e, Entangling):
                out.append({"kind": "entangling", "qubits": [e.qa, e.qb], "a": e.a})
            else:
                out.append({"kind": "swap", "qubits": [e.q1, e.q2]})
        return json.dumps({"k": self.k, "elements": out})

    @classmethod
    def from_json(cls, text: str) -> "AnsatzTopology":
        data = json.loads(text)
        elems = []
        for d in data["elements"]:
            qs = d["qubits"]
            if d["kind"] == "nonentangling":
                elems.append(NonEntangling(qs[0]))
            elif d["kind"] == "entangling":
                elems.append(Entangling(qs[0], qs[1], d.get("a", 0)))
            elif d["kind"] == "swap":
                elems.append(FixedSwap(qs[0], qs[1]))
            else:
                raise ValueError(f"unknown element kind {d['kind']!r}")
        return cls(data["k"], tuple(elems))


def block(qa: int, qb: int, pattern: Sequence[int] = DEFAULT_BLOCK_PATTERN) -> list:
    """Two non-entangling primitives followed by entangling ones with directions ``pattern``."""
    return [NonEntangling(qa), NonEntangling(qb)] + [Entangling(qa, qb, a) for a in pattern]


def circular_topology(k: int, pattern: Sequence[int] = DEFAULT_BLOCK_PATTERN) -> AnsatzTopology:
    """Ring of blocks on ``(0,1), (1,2), ..., (k-2,k-1)`` plus a wrap-around block.

    For ``k >= 3`` the wrap block is ``block(0, 1)`` conjugated by a swap of
    qubits 1 and ``k-1``, so it acts on qubits 0 and ``k-1``.  For ``k == 2``
    it is ``block(1, 0)``.
    """
    if k < 2:
        raise ValueError("circular topology needs k >= 2")
    elems: list = []
    for q in range(k - 1):
        elems += block(q, q + 1, pattern)
    if k == 2:
        elems += block(1, 0, pattern)
    else:
        elems += [FixedSwap(1, k - 1)] + block(0, 1, pattern) + [FixedSwap(1, k - 1)]
    return AnsatzTopology(k, tuple(elems))


def single_qubit_topology(k: int = 1) -> AnsatzTopology:
    """One non-entangling rotation per qubit; handy for tiny registers."""
    return AnsatzTopology(k, tuple(NonEntangling(q) for q in range(k)))


def _element_gates(e, lam: float, off: int) -> list:
    if isinstance(e, NonEntangling):
        q = e.qubit + off
        return [HadamardLayer((q,)), PhaseGate(q, lam), HadamardLayer((q,))]
    if isinstance(e, Entangling):
        t = e.target + off
        return [HadamardLayer((t,)), ControlledPhaseGate(e.control + off, t, lam), HadamardLayer((t,))]
    return [Swap(e.q1 + off, e.q2 + off)]


def emit_gates(t: AnsatzTopology, theta, adjoint: bool = False, register_offset: int = 0) -> list:
    """Gate list for the ansatz (or its adjoint) on qubits ``register_offset + [0, k)``."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (t.n,):
        raise ValueError(f"expected {t.n} parameters, got {theta.shape}")
    pairs = []
    it = iter(theta)
    for e in t.elements:
        pairs.append((e, 0.0 if isinstance(e, FixedSwap) else float(next(it))))
    if adjoint:
        pairs = [(e, -lam) for e, lam in reversed(pairs)]
    gates = []
    for e, lam in pairs:
        gates += _element_gates(e, lam, register_offset)
    return gates


def generator_permutation(e, k: int) -> VertexPermutation:
    """Index permutation of a single element acting on ``range(2**k)``."""
    idx = np.arange(1 << k)
    if isinstance(e, NonEntangling):
        return VertexPermutation(idx ^ (1 << e.qubit))
    if isinstance(e, Entangling):
        c = (idx >> e.control) & 1
        return VertexPermutation(idx ^ (c << e.target))
    b1 = (idx >> e.q1) & 1
    b2 = (idx >> e.q2) & 1
    diff = b1 ^ b2
    return VertexPermutation(idx ^ (diff << e.q1) ^ (diff << e.q2))


def classical_permutation(t: AnsatzTopology, g) -> VertexPermutation:
    """Permutation realised (up to global phase) by the ansatz at ``theta = pi * g``.

    Works on index bits directly: elements are applied in circuit order, and
    each primitive with ``g_i = 1`` contributes its generator.
    """
    g = np.asarray(g).astype(int)
    if g.shape != (t.n,) or not np.isin(g, (0, 1)).all():
        raise ValueError(f"g must be a 0/1 vector of length {t.n}")
    idx = np.arange(1 << t.k)
    cur = idx.copy()
    it = iter(g)
    for e in t.elements:
        if isinstance(e, FixedSwap):
            b1 = (cur >> e.q1) & 1
            b2 = (cur >> e.q2) & 1
            diff = b1 ^ b2
            cur = cur ^ (diff << e.q1) ^ (diff << e.q2)
            continue
        if not next(it):
            continue
        if isinstance(e, NonEntangling):
            cur = cur ^ (1 << e.qubit)
        else:
            cur = cur ^ (((cur >> e.control) & 1) << e.target)
    return VertexPermutation(cur)


def reachable_permutations(t: AnsatzTopology) -> dict:
    """Map every permutation the ansatz realises at integer-pi points to one ``g`` producing it.

    Enumerates all ``2**n`` binary vectors at once, so keep ``n`` near 20 or below.
    """
    codes = np.arange(1 << t.n, dtype=np.int64)
    gs = ((codes[:, None] >> np.arange(t.n)) & 1).astype(np.int8)
    perms = classical_permutations_batch(t, gs)
    _, first = np.unique(perms, axis=0, return_index=True)
    return {VertexPermutation(perms[r]): tuple(gs[r].tolist()) for r in np.sort(first)}


def classical_permutations_batch(t: AnsatzTopology, gs) -> np.ndarray:
    """Row ``r`` is ``classical_permutation(t, gs[r]).mapping``."""
    gs = np.asarray(gs).astype(np.int32)
    if gs.ndim != 2 or gs.shape[1] != t.n or not np.isin(gs, (0, 1)).all():
        raise ValueError(f"gs must be a 0/1 array of shape (m, {t.n})")
    cur = np.broadcast_to(np.arange(1 << t.k, dtype=np.int32), (gs.shape[0], 1 << t.k)).copy()
    i = 0
    for e in t.elements:
        if isinstance(e, FixedSwap):
            diff = ((cur >> e.q1) ^ (cur >> e.q2)) & 1
            cur ^= (diff << e.q1) | (diff << e.q2)
            continue
        on = gs[:, i : i + 1]
        i += 1
        if isinstance(e, NonEntangling):
            cur ^= on << e.qubit
        else:
            cur ^= (on & (cur >> e.control) & 1) << e.target
    return cur
