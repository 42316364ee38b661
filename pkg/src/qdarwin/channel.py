"""The random unitary quantum operation: interaction digraph, one
deterministic averaged step, and iteration to (near-)stationarity.

A step maps rho to sum_e p_e U_e rho U_e^dag over the digraph edges.  The
sum is evaluated in fixed edge order (no sampling anywhere), so repeated runs
are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import LayoutMismatch, ParamOutOfRange, SizeOverflow
from .gates import GateSpec, total_unitary
from .registers import DensityMatrix, RegisterLayout, trace_distance

PROB_ATOL = 1e-12


@dataclass(frozen=True)
class InteractionDigraph:
    """Directed system-to-environment interaction edges with probabilities.

    Edges are (system position, environment position) pairs, both 0-based
    within their registers; system-system and environment-environment pairs
    cannot be expressed.  Probabilities are positive and sum to one.  A
    single-edge digraph necessarily has p = 1 (degenerate mixture).
    """

    layout: RegisterLayout
    edges: tuple[tuple[int, int], ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        if self.layout.k < 1 or self.layout.n < 1:
            raise SizeOverflow("digraph needs at least one system and one environment qubit")
        if not self.edges:
            raise ParamOutOfRange("digraph needs at least one edge")
        if len(self.edges) != len(self.probabilities):
            raise ParamOutOfRange("one probability per edge required")
        seen = set()
        for si, ej in self.edges:
            if not 0 <= si < self.layout.k:
                raise ParamOutOfRange(f"system index {si} not in 0..{self.layout.k - 1}")
            if not 0 <= ej < self.layout.n:
                raise ParamOutOfRange(f"environment index {ej} not in 0..{self.layout.n - 1}")
            if (si, ej) in seen:
                raise ParamOutOfRange(f"duplicate edge ({si}, {ej})")
            seen.add((si, ej))
        for p in self.probabilities:
            if not 0.0 < p <= 1.0:
                raise ParamOutOfRange(f"edge probability {p} not in (0, 1]")
        if abs(math.fsum(self.probabilities) - 1.0) > PROB_ATOL:
            raise ParamOutOfRange("edge probabilities must sum to 1 within 1e-12")

    def qubit_pairs(self) -> tuple[tuple[int, int], ...]:
        """Edges as global (system qubit, environment qubit) positions."""
        k = self.layout.k
        return tuple((si, k + ej) for si, ej in self.edges)


def uniform_digraph(layout: RegisterLayout) -> InteractionDigraph:
    """Complete bipartite system-to-environment digraph, uniform p = 1/(k*n)."""
    edges = tuple((si, ej) for si in range(layout.k) for ej in range(layout.n))
    p = 1.0 / len(edges)
    return InteractionDigraph(layout, edges, (p,) * len(edges))


@dataclass(frozen=True)
class IterationReport:
    """Outcome of an iterated evolution.

    ``checkpoints`` holds (iteration count, trace distance from the previous
    checkpoint) pairs; ``converged`` is False when the cap was reached with
    the latest distance still at or above epsilon (flagged, not fatal).
    """

    state: DensityMatrix
    iterations: int
    checkpoints: tuple[tuple[int, float], ...]
    converged: bool

    def distances(self) -> tuple[float, ...]:
        return tuple(d for _, d in self.checkpoints)


def _resolve_gate(gate) -> np.ndarray:
    if isinstance(gate, GateSpec):
        return total_unitary(gate)
    return np.asarray(gate, dtype=np.complex128)


def step(rho: DensityMatrix, gate, digraph: InteractionDigraph) -> DensityMatrix:
    """One application of the averaged random unitary operation.

    ``gate`` may be a GateSpec or a prebuilt 4x4 unitary.  The per-edge
    conjugations are summed in digraph edge order, so the result is
    deterministic and trace is preserved to rounding.
    """
    if (rho.layout.k, rho.layout.n) != (digraph.layout.k, digraph.layout.n):
        raise LayoutMismatch("state and digraph layouts differ")
    u = _resolve_gate(gate)
    m = rho.layout.m
    acc = np.zeros_like(rho.data)
    for (qi, qj), p in zip(digraph.qubit_pairs(), digraph.probabilities):
        acc += p * kernels.apply_two_qubit_matrix(rho.data, u, qi, qj, m)
    return DensityMatrix._wrap(rho.layout, acc)


def iterate(rho0: DensityMatrix, gate, digraph: InteractionDigraph,
            max_n: int = 1000, epsilon: float = 1e-9,
            checkpoint_stride: int = 10) -> IterationReport:
    """Iterate the averaged step until successive checkpoints are epsilon-close.

    Convergence is declared when the trace distance between consecutive
    checkpoints (every ``checkpoint_stride`` steps) drops below ``epsilon``.
    The even default stride also absorbs period-2 attractor oscillation.
    """
    if epsilon <= 0:
        raise ParamOutOfRange("epsilon must be positive")
    if max_n < 0:
        raise ParamOutOfRange("max_n must be nonnegative")
    if checkpoint_stride < 1:
        raise ParamOutOfRange("checkpoint_stride must be at least 1")
    u = _resolve_gate(gate)
    state = rho0
    previous = rho0
    checkpoints: list[tuple[int, float]] = []
    converged = False
    done = 0
    while done < max_n:
        state = step(state, u, digraph)
        done += 1
        if done % checkpoint_stride == 0 or done == max_n:
            dist = trace_distance(state, previous)
            checkpoints.append((done, dist))
            previous = state
            if dist < epsilon:
                converged = True
                break
    return IterationReport(state, done, tuple(checkpoints), converged)


def run_fixed(rho0: DensityMatrix, gate, digraph: InteractionDigraph,
              count: int) -> DensityMatrix:
    """Apply exactly ``count`` averaged steps (no convergence test)."""
    if count < 0:
        raise ParamOutOfRange("count must be nonnegative")
    u = _resolve_gate(gate)
    state = rho0
    for _ in range(count):
        state = step(state, u, digraph)
    return state
