"""Exact statevector simulation for the loss circuits.

Qubit ``q`` is bit ``q`` of the basis index (qubit 0 least significant).
Every gate mutates a flat complex amplitude array in place; ``run`` starts
from a fresh ``|0...0>`` each call.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .encoding import PhaseDiagonal

EXACT_TOL = 1e-10
_SQRT1_2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class HadamardLayer:
    qubits: tuple


@dataclass(frozen=True)
class PhaseGate:
    qubit: int
    lam: float


@dataclass(frozen=True)
class ControlledPhaseGate:
    control: int
    target: int
    lam: float


@dataclass(frozen=True)
class Swap:
    q1: int
    q2: int


@dataclass(frozen=True)
class ControlledSignDiagonal:
    """Multiply by ``diagonal`` on qubits ``[low, low + 2k)`` when ``control`` is set."""

    control: int
    low: int
    diagonal: PhaseDiagonal

    @property
    def width(self) -> int:
        return 2 * (self.diagonal.order_n.bit_length() - 1)


Gate = Union[HadamardLayer, PhaseGate, ControlledPhaseGate, Swap, ControlledSignDiagonal]
GateProgram = list


@dataclass(frozen=True, eq=False)
class Statevector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.num_qubits,):
            raise ValueError("amplitude count must be 2**num_qubits")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def zero_probability(self) -> float:
        return float(abs(self.amplitudes[0]) ** 2)

    def to_json(self) -> str:
        return json.dumps([[float(z.real), float(z.imag)] for z in self.amplitudes])

    @classmethod
    def from_json(cls, text: str) -> "Statevector":
        pairs = json.loads(text)
        amps = np.array([complex(re, im) for re, im in pairs])
        return cls(int(np.log2(amps.size)), amps)


def _gate_qubits(gate) -> tuple:
    if isinstance(gate, HadamardLayer):
        return tuple(gate.qubits)
    if isinstance(gate, PhaseGate):
        return (gate.qubit,)
    if isinstance(gate, ControlledPhaseGate):
        return (gate.control, gate.target)
    if isinstance(gate, Swap):
        return (gate.q1, gate.q2)
    if isinstance(gate, ControlledSignDiagonal):
        return (gate.control,) + tuple(range(gate.low, gate.low + gate.width))
    raise TypeError(f"unknown gate {gate!r}")


def validate(program: Iterable, num_qubits: int) -> None:
    for gate in program:
        qs = _gate_qubits(gate)
        if any(not 0 <= q < num_qubits for q in qs):
            raise IndexError(f"{gate!r} touches a qubit outside range({num_qubits})")
        if isinstance(gate, (ControlledPhaseGate, Swap)) and qs[0] == qs[1]:
            raise ValueError(f"{gate!r} needs two distinct qubits")
        if isinstance(gate, ControlledSignDiagonal) and gate.low <= gate.control < gate.low + gate.width:
            raise ValueError(f"{gate!r}: control inside the target range")


def _split(state: np.ndarray, q: int) -> np.ndarray:
    return state.reshape(-1, 2, 1 << q)


def _pair_view(state: np.ndarray, qa: int, qb: int) -> tuple[np.ndarray, int, int]:
    hi, lo = max(qa, qb), min(qa, qb)
    view = state.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    # axis 1 holds the higher qubit, axis 3 the lower one
    return view, (1 if qa == hi else 3), (1 if qb == hi else 3)


@lru_cache(maxsize=64)
def _diag_index(num_qubits: int, control: int, low: int, width: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(1 << num_qubits)
    ctrl = ((idx >> control) & 1).astype(bool)
    sub = (idx >> low) & ((1 << width) - 1)
    return np.flatnonzero(ctrl), sub[ctrl]


def apply_gate(state: np.ndarray, gate, num_qubits: int) -> None:
    """Apply one gate to the flat amplitude array ``state`` in place."""
    if isinstance(gate, HadamardLayer):
        for q in gate.qubits:
            v = _split(state, q)
            a = v[:, 0, :].copy()
            b = v[:, 1, :]
            v[:, 0, :] = (a + b) * _SQRT1_2
            v[:, 1, :] = (a - b) * _SQRT1_2
    elif isinstance(gate, PhaseGate):
        _split(state, gate.qubit)[:, 1, :] *= np.exp(1j * gate.lam)
    elif isinstance(gate, ControlledPhaseGate):
        view, _, _ = _pair_view(state, gate.control, gate.target)
        view[:, 1, :, 1, :] *= np.exp(1j * gate.lam)
    elif isinstance(gate, Swap):
        view, _, _ = _pair_view(state, gate.q1, gate.q2)
        tmp = view[:, 0, :, 1, :].copy()
        view[:, 0, :, 1, :] = view[:, 1, :, 0, :]
        view[:, 1, :, 0, :] = tmp
    elif isinstance(gate, ControlledSignDiagonal):
        where, sub = _diag_index(num_qubits, gate.control, gate.low, gate.width)
        flip = where[gate.diagonal.bits[sub].astype(bool)]
        state[flip] *= -1
    else:
        raise TypeError(f"unknown gate {gate!r}")


def run(program: Sequence, num_qubits: int, initial: np.ndarray | None = None) -> Statevector:
    """Apply ``program`` to ``|0...0>`` (or to ``initial``) and return the state."""
    validate(program, num_qubits)
    if initial is None:
        state = np.zeros(1 << num_qubits, dtype=complex)
        state[0] = 1.0
    else:
        state = np.array(initial, dtype=complex, copy=True)
        if state.shape != (1 << num_qubits,):
            raise ValueError("initial state has the wrong length")
    for gate in program:
        apply_gate(state, gate, num_qubits)
    return Statevector(num_qubits, state)


def zero_probability(program: Sequence, num_qubits: int) -> float:
    """Probability of measuring all zeros after ``program``."""
    return run(program, num_qubits).zero_probability()


def estimate_probability(p: float, shots: int, seed) -> float:
    """Success fraction of ``shots`` Bernoulli(p) draws; ``shots == 0`` returns ``p``."""
    if not 0.0 <= p <= 1.0:
        # round-off from the statevector can push p a hair outside [0, 1]
        if -EXACT_TOL <= p <= 1.0 + EXACT_TOL:
            p = min(max(p, 0.0), 1.0)
        else:
            raise ValueError(f"probability {p} outside [0, 1]")
    if shots < 0:
        raise ValueError("shots must be non-negative")
    if shots == 0:
        return p
    rng = np.random.default_rng(seed)
    return rng.binomial(shots, p) / shots


def unitary(program: Sequence, num_qubits: int) -> np.ndarray:
    """Dense matrix of ``program``, column ``i`` being the image of ``|i>``."""
    dim = 1 << num_qubits
    cols = [run(program, num_qubits, initial=np.eye(dim, dtype=complex)[i]).amplitudes for i in range(dim)]
    return np.stack(cols, axis=1)
