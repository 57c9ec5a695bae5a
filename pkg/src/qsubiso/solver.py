"""Variational (sub)graph-isomorphism solver.

Register layout of the loss circuit on ``2k + 1`` qubits: the column index
``j`` of the adjacency matrix lives on qubits ``[0, k)``, the row index ``i``
on ``[k, 2k)`` and the control of both sign diagonals on qubit ``2k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .ansatz import (
    AnsatzTopology,
    classical_permutation,
    classical_permutations_batch,
    emit_gates,
)
from .encoding import extend_pattern, phase_diagonal
from .graph import (
    AdjacencyMatrix,
    PartialPermutation,
    VertexPermutation,
    erdos_renyi,
    pad_to_power_of_two,
    partial_loss,
    permute,
    search_space_size,
    select_block,
)
from .simulator import ControlledSignDiagonal, HadamardLayer, estimate_probability, zero_probability


@dataclass(frozen=True)
class SolverConfig:
    learning_rate: float = 0.1
    momentum: float = 0.9
    fd_epsilon: float = 0.1
    max_steps: int = 128
    samples_per_step: int = 64
    shots: int = 1024
    seed: int = 0
    central_difference: bool = True

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.fd_epsilon <= 0:
            raise ValueError("fd_epsilon must be positive")
        if not 0 <= self.momentum < 1:
            raise ValueError("momentum must lie in [0, 1)")
        if self.max_steps < 1 or self.samples_per_step < 1:
            raise ValueError("max_steps and samples_per_step must be at least 1")
        if self.shots < 0:
            raise ValueError("shots must be non-negative")


@dataclass(frozen=True)
class LossCircuitSpec:
    source: AdjacencyMatrix
    pattern: AdjacencyMatrix
    topology: AnsatzTopology
    mode: str = "SGI"

    def __post_init__(self):
        if self.mode not in ("GI", "SGI"):
            raise ValueError("mode must be 'GI' or 'SGI'")
        if self.pattern.order > self.source.order:
            raise ValueError("pattern larger than source")
        if self.mode == "GI" and self.pattern.order != self.source.order:
            raise ValueError("GI mode needs source and pattern of equal order")
        if self.topology.k != self.source.k:
            raise ValueError(f"topology acts on {self.topology.k} qubits, source needs {self.source.k}")

    @property
    def num_qubits(self) -> int:
        return 2 * self.source.k + 1

    @classmethod
    def for_graphs(cls, source, pattern, topology) -> "LossCircuitSpec":
        mode = "GI" if source.order == pattern.order else "SGI"
        return cls(source, pattern, topology, mode)


def build_circuit(spec: LossCircuitSpec, theta) -> list:
    """Gate program whose all-zeros amplitude is the utility of ``theta``."""
    k, kp = spec.source.k, spec.pattern.k
    prep = HadamardLayer(tuple(range(kp)) + tuple(range(k, k + kp)) + (2 * k,))
    prog = [prep]
    if spec.mode == "SGI":
        for off in (0, k):
            prog += emit_gates(spec.topology, theta, adjoint=True, register_offset=off)
    prog.append(ControlledSignDiagonal(2 * k, 0, phase_diagonal(spec.source)))
    for off in (0, k):
        prog += emit_gates(spec.topology, theta, register_offset=off)
    b_ext = extend_pattern(spec.pattern, spec.source.order)
    prog.append(ControlledSignDiagonal(2 * k, 0, phase_diagonal(b_ext)))
    prog.append(prep)
    return prog


def exact_probability(spec: LossCircuitSpec, theta) -> float:
    return zero_probability(build_circuit(spec, theta), spec.num_qubits)


def utility(spec: LossCircuitSpec, theta, config: SolverConfig, rng=None) -> float:
    """Square root of the (possibly shot-estimated) all-zeros probability."""
    p = exact_probability(spec, theta)
    if config.shots:
        rng = np.random.default_rng(config.seed) if rng is None else rng
    p = estimate_probability(min(max(p, 0.0), 1.0), config.shots, rng)
    return math.sqrt(p)


def numerical_gradient(spec: LossCircuitSpec, theta, config: SolverConfig, rng=None) -> np.ndarray:
    """Finite-difference gradient of the utility; central unless the config says otherwise."""
    theta = np.asarray(theta, dtype=float)
    eps = config.fd_epsilon
    if config.shots:
        rng = np.random.default_rng(config.seed) if rng is None else rng
    grad = np.empty_like(theta)
    base = None if config.central_difference else utility(spec, theta, config, rng)
    for i in range(theta.size):
        step = np.zeros_like(theta)
        step[i] = eps
        up = utility(spec, theta + step, config, rng)
        if config.central_difference:
            grad[i] = (up - utility(spec, theta - step, config, rng)) / (2 * eps)
        else:
            grad[i] = (up - base) / eps
    return grad


def sgd_step(theta, velocity, gradient, config: SolverConfig):
    """Heavy-ball update; ``gradient`` is that of the quantity being minimised."""
    velocity = config.momentum * np.asarray(velocity, dtype=float) + np.asarray(gradient, dtype=float)
    return np.asarray(theta, dtype=float) - config.learning_rate * velocity, velocity


def triangle_wave(x):
    """Distance from ``x`` to the nearest even integer."""
    x = np.asarray(x, dtype=float)
    return np.abs(np.mod(np.floor(x), 2) - np.mod(x, 1))


def probabilistic_round(theta, rng) -> np.ndarray:
    """Draw ``g`` with ``g_i = 1`` iff ``u_i <= triangle_wave(theta_i / pi)``."""
    rng = np.random.default_rng(rng)
    p = triangle_wave(np.asarray(theta, dtype=float) / np.pi)
    return (rng.random(p.shape) <= p).astype(np.int8)


@dataclass
class RunResult:
    solutions: list = field(default_factory=list)
    steps_used: int = 0
    quantum_loss_trace: list = field(default_factory=list)
    best_classical_loss_trace: list = field(default_factory=list)
    converged: bool = False
    final_theta: Optional[np.ndarray] = None

    def add_solution(self, w: PartialPermutation, source, pattern) -> bool:
        if partial_loss(source, pattern, w) != 0:
            raise AssertionError(f"refusing to record non-solution {w!r}")
        if w in self.solutions:
            return False
        self.solutions.append(w)
        return True


def _batch_losses(source: AdjacencyMatrix, pattern: AdjacencyMatrix, perms: np.ndarray) -> np.ndarray:
    inv = np.argsort(perms, axis=1)[:, : pattern.order]
    blocks = source.bits[inv[:, :, None], inv[:, None, :]]
    return np.count_nonzero(blocks != pattern.bits, axis=(1, 2))


def run_single(
    source: AdjacencyMatrix,
    pattern: AdjacencyMatrix,
    topology: AnsatzTopology,
    config: SolverConfig,
    seed=None,
) -> RunResult:
    """One run of the variational loop: descend on the utility, sample, verify classically."""
    spec = LossCircuitSpec.for_graphs(source, pattern, topology)
    rng = np.random.default_rng(config.seed if seed is None else seed)
    theta = rng.uniform(0.0, np.pi, topology.n)
    velocity = np.zeros_like(theta)
    result = RunResult()
    for step in range(1, config.max_steps + 1):
        grad = numerical_gradient(spec, theta, config, rng)
        theta, velocity = sgd_step(theta, velocity, -grad, config)
        result.quantum_loss_trace.append(1.0 - utility(spec, theta, config, rng))
        p = triangle_wave(theta / np.pi)
        gs = (rng.random((config.samples_per_step, topology.n)) <= p).astype(np.int8)
        perms = classical_permutations_batch(topology, gs)
        losses = _batch_losses(source, pattern, perms)
        result.best_classical_loss_trace.append(int(losses.min()))
        for r in np.flatnonzero(losses == 0):
            w = PartialPermutation.from_permutation(VertexPermutation(perms[r]), pattern.order)
            result.add_solution(w, source, pattern)
        result.steps_used = step
        if result.solutions:
            break
    result.converged = bool(result.solutions)
    result.final_theta = theta
    return result


@dataclass
class BatchStats:
    n_a: int
    n_b: int
    runs: int
    mode: str
    n_params: int
    qubits: int
    space_size: int
    convergent_runs: int
    unique_solutions_found: int
    distinct_matches_found: int
    avg_steps: Optional[float]
    max_steps: Optional[int]
    results: list = field(default_factory=list, repr=False)
    solutions: list = field(default_factory=list, repr=False)

    @property
    def convergent_pct(self) -> float:
        return 100.0 * self.convergent_runs / self.runs


def _run_seeds(seed, runs: int) -> list:
    return np.random.SeedSequence(seed).spawn(runs)


def run_batch(
    source: AdjacencyMatrix,
    pattern: AdjacencyMatrix,
    topology: AnsatzTopology,
    config: SolverConfig,
    runs: int,
    mode: str = "convergence",
) -> BatchStats:
    """Repeat ``run_single`` with independent seeds and summarise them.

    In ``search`` mode every run sees the source under a fresh random
    relabelling; reported solutions are mapped back to the original labels.
    Step statistics are taken over convergent runs only.
    """
    if mode not in ("search", "convergence"):
        raise ValueError("mode must be 'search' or 'convergence'")
    if runs < 1:
        raise ValueError("runs must be at least 1")
    results, found = [], []
    for child in _run_seeds(config.seed, runs):
        rng = np.random.default_rng(child)
        if mode == "search":
            pre = VertexPermutation.random(source.order, rng)
            res = run_single(permute(source, pre), pattern, topology, config, seed=rng)
            back = pre.inverse().mapping
            res.solutions = [PartialPermutation(source.order, back[list(w.image)].tolist()) for w in res.solutions]
        else:
            res = run_single(source, pattern, topology, config, seed=rng)
        for w in res.solutions:
            if partial_loss(source, pattern, w) != 0:
                raise AssertionError(f"mapped solution {w!r} is not a match")
            if w not in found:
                found.append(w)
        results.append(res)
    steps = [r.steps_used for r in results if r.converged]
    return BatchStats(
        n_a=source.order,
        n_b=pattern.order,
        runs=runs,
        mode=mode,
        n_params=topology.n,
        qubits=2 * source.k + 1,
        space_size=search_space_size(source.order, pattern.order),
        convergent_runs=len(steps),
        unique_solutions_found=len({w.vertex_set() for w in found}),
        distinct_matches_found=len(found),
        avg_steps=float(np.mean(steps)) if steps else None,
        max_steps=max(steps) if steps else None,
        results=results,
        solutions=found,
    )


def plant_instance(n_a: int, n_b: int, topology: AnsatzTopology, prob: float, seed):
    """Random source plus a pattern that the ansatz can reach.

    Returns ``(source, pattern, g, perm)`` where ``classical_permutation(topology, g)
    == perm`` and ``perm`` has zero classical loss.
    """
    if n_b < 1 or n_b & (n_b - 1):
        raise ValueError("planted pattern order must be a power of two")
    rng = np.random.default_rng(seed)
    source = pad_to_power_of_two(erdos_renyi(n_a, prob, rng))
    if topology.k != source.k:
        raise ValueError("topology width does not match the source order")
    g = rng.integers(0, 2, topology.n).astype(np.int8)
    perm = classical_permutation(topology, g)
    pattern = select_block(permute(source, perm), n_b)
    return source, pattern, g, perm


def with_seed(config: SolverConfig, seed: int) -> SolverConfig:
    return replace(config, seed=seed)
