"""Entropies, mutual information, partial-information curves, redundancy,
and the information-proliferation (quantum Darwinism) criterion."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BadBasis, DuplicateIndex, IndexOutOfRange, NotAState
from .registers import DensityMatrix, partial_trace

#: Eigenvalues in [PSD_FLOOR, 0) are clamped to zero when entropies are
#: computed; anything lower means the input is not a state.
PSD_FLOOR = -1e-8
CLAMP_BUDGET = 1e-8
PLATEAU_TOL = 0.01


@dataclass(frozen=True)
class EntropyReport:
    """Entropies (bits) for one environment fraction f = L/n."""

    f: float
    L: int
    h_s: float
    h_e: float
    h_se: float
    h_class: float
    mi: float

    @property
    def ratio(self) -> float:
        """Mutual information normalized by the classical system entropy."""
        return self.mi / self.h_class if self.h_class > 0 else 0.0


@dataclass(frozen=True)
class PipCurve:
    """Partial-information record: one EntropyReport per L = 1..n."""

    k: int
    n: int
    ordering: tuple[int, ...]
    points: tuple[EntropyReport, ...]

    @property
    def h_class(self) -> float:
        return self.points[0].h_class

    def fractions(self) -> np.ndarray:
        return np.array([p.f for p in self.points])

    def ratios(self) -> np.ndarray:
        return np.array([p.ratio for p in self.points])

    def point(self, L: int) -> EntropyReport:
        return self.points[L - 1]


@dataclass(frozen=True)
class RedundancyResult:
    """Smallest plateau-reaching fraction and its inverse; absent when the
    curve never reaches the plateau."""

    f_star: Optional[float]
    redundancy: Optional[float]
    deficit: float = 0.0


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of the proliferation criterion with the violating L values."""

    holds: bool
    violations: tuple[int, ...]


def _clamped_eigenvalues(data: np.ndarray) -> np.ndarray:
    diag = np.diagonal(data)
    if np.count_nonzero(data - np.diag(diag)) == 0:
        eigs = diag.real.copy()
    else:
        eigs = np.linalg.eigvalsh(data)
    low = eigs[eigs < 0.0]
    if low.size:
        if float(low.min()) < PSD_FLOOR:
            raise NotAState(f"eigenvalue {low.min():.3e} below the PSD floor {PSD_FLOOR}")
        if float(-low.sum()) >= CLAMP_BUDGET:
            raise NotAState("clamped negative weight reaches 1e-8; input is not a state")
        eigs = np.where(eigs < 0.0, 0.0, eigs)
    return eigs


def _shannon_bits(p: np.ndarray) -> float:
    pos = p[p > 0.0]
    return float(-np.dot(pos, np.log2(pos)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum lambda_i log2 lambda_i with tiny negative eigenvalues clamped to 0.

    No renormalization is applied; 0 log 0 counts as 0.
    """
    return _shannon_bits(_clamped_eigenvalues(rho.data))


def classical_entropy(rho_s: DensityMatrix, pointer_basis=None) -> float:
    """Shannon entropy of the pointer-basis populations of a system state.

    The default pointer basis is the computational basis; otherwise pass a
    unitary whose columns are the pointer states.
    """
    data = rho_s.data
    if pointer_basis is None:
        probs = np.diagonal(data).real.copy()
    else:
        basis = np.asarray(pointer_basis, dtype=np.complex128)
        dim = data.shape[0]
        if basis.shape != (dim, dim):
            raise BadBasis(f"pointer basis must be {dim}x{dim}, got {basis.shape}")
        if np.max(np.abs(basis.conj().T @ basis - np.eye(dim))) > 1e-10:
            raise BadBasis("pointer basis columns are not orthonormal within 1e-10")
        probs = np.einsum("ij,jk,ki->i", basis.conj().T, data, basis).real.copy()
    low = probs[probs < 0.0]
    if low.size and float(low.min()) < PSD_FLOOR:
        raise NotAState(f"population {low.min():.3e} below the PSD floor")
    probs[probs < 0.0] = 0.0
    return _shannon_bits(probs)


def _resolve_ordering(n: int, ordering) -> tuple[int, ...]:
    if ordering is None:
        return tuple(range(n - 1, -1, -1))
    order = tuple(int(q) for q in ordering)
    for q in order:
        if not 0 <= q < n:
            raise IndexOutOfRange(f"environment position {q} not in 0..{n - 1}")
    if len(set(order)) != len(order):
        raise DuplicateIndex(f"duplicate environment position in {order}")
    if len(order) != n:
        raise IndexOutOfRange("ordering must list every environment position once")
    return order


def mutual_information(rho_se: DensityMatrix, L: int, ordering=None,
                       h_class: Optional[float] = None) -> EntropyReport:
    """Mutual information between the system and an L-qubit environment part.

    ``ordering`` lists environment positions (0-based) in the order they are
    traced out; the default discards from right to left, keeping the first L
    environment qubits.  ``h_class`` overrides the classical entropy used for
    normalization (iterated-channel curves normalize by the initial pointer
    populations, not the evolved ones).
    """
    layout = rho_se.layout
    k, n = layout.k, layout.n
    if not 1 <= L <= n:
        raise IndexOutOfRange(f"L={L} not in 1..{n}")
    order = _resolve_ordering(n, ordering)
    dropped = [k + pos for pos in order[: n - L]]
    rho_sel = partial_trace(rho_se, dropped) if dropped else rho_se
    rho_s = partial_trace(rho_sel, [k + q for q in range(L)])
    rho_el = partial_trace(rho_sel, list(range(k)))
    h_s = von_neumann_entropy(rho_s)
    h_e = von_neumann_entropy(rho_el)
    h_se = von_neumann_entropy(rho_sel)
    if h_class is None:
        h_class = classical_entropy(rho_s)
    return EntropyReport(f=L / n, L=L, h_s=h_s, h_e=h_e, h_se=h_se,
                         h_class=float(h_class), mi=h_s + h_e - h_se)


def pip(rho_se: DensityMatrix, ordering=None, h_class: Optional[float] = None,
        threads: int = 1) -> PipCurve:
    """Partial-information curve: one EntropyReport per L = 1..n.

    Fraction points are independent, so they may be evaluated on a thread
    pool; results are collected in L order either way.
    """
    layout = rho_se.layout
    order = _resolve_ordering(layout.n, ordering)
    ls = range(1, layout.n + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = list(pool.map(
                lambda L: mutual_information(rho_se, L, order, h_class), ls))
    else:
        points = [mutual_information(rho_se, L, order, h_class) for L in ls]
    return PipCurve(k=layout.k, n=layout.n, ordering=order, points=tuple(points))


def random_orderings(n: int, count: int, seed: int) -> list[tuple[int, ...]]:
    """Deterministic list of trace-out orderings from a seeded generator."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return [tuple(int(q) for q in rng.permutation(n)) for _ in range(count)]


def pip_spread(rho_se: DensityMatrix, orderings: Sequence[Sequence[int]],
               h_class: Optional[float] = None,
               threads: int = 1) -> tuple[PipCurve, np.ndarray]:
    """Averaged curve over several orderings plus the max MI deviation per L.

    Supports order-independence checks: the second return value is, for each
    L, the largest |MI(ordering) - MI(first ordering)| over the set.
    """
    if not orderings:
        raise IndexOutOfRange("at least one ordering is required")
    curves = [pip(rho_se, order, h_class, threads) for order in orderings]
    base = curves[0]
    n = base.n
    spread = np.zeros(n)
    mean_points = []
    for idx in range(n):
        mis = np.array([c.points[idx].mi for c in curves])
        spread[idx] = float(np.max(np.abs(mis - mis[0])))
        ref = base.points[idx]
        mean_points.append(EntropyReport(
            f=ref.f, L=ref.L,
            h_s=float(np.mean([c.points[idx].h_s for c in curves])),
            h_e=float(np.mean([c.points[idx].h_e for c in curves])),
            h_se=float(np.mean([c.points[idx].h_se for c in curves])),
            h_class=ref.h_class,
            mi=float(np.mean(mis)),
        ))
    mean_curve = PipCurve(k=base.k, n=base.n, ordering=base.ordering,
                          points=tuple(mean_points))
    return mean_curve, spread


def redundancy(curve: PipCurve, plateau_tol: float = PLATEAU_TOL) -> RedundancyResult:
    """Smallest fraction whose MI reaches (1 - plateau_tol) of the classical
    entropy, and its inverse.  Absence is a value, not an error."""
    if plateau_tol <= 0:
        raise ValueError("plateau_tol must be positive")
    h_class = curve.h_class
    if h_class <= 0:
        return RedundancyResult(None, None)
    for point in curve.points:
        if point.mi >= (1.0 - plateau_tol) * h_class:
            return RedundancyResult(point.f, 1.0 / point.f)
    return RedundancyResult(None, None)


def darwinism_criterion(curve: PipCurve,
                        plateau_tol: float = PLATEAU_TOL) -> CriterionResult:
    """Plateau criterion: MI/H_class >= 1 (within tolerance) for every
    k <= L <= n-1, together with H(S) matching H_class.

    Returns the violating L values when it fails.
    """
    h_class = curve.h_class
    if h_class <= 0:
        return CriterionResult(False, tuple(p.L for p in curve.points))
    violations = []
    for point in curve.points:
        if not curve.k <= point.L <= curve.n - 1:
            continue
        plateau_ok = point.mi >= (1.0 - plateau_tol) * h_class
        hs_ok = abs(point.h_s - h_class) <= plateau_tol * h_class
        if not (plateau_ok and hs_ok):
            violations.append(point.L)
    return CriterionResult(not violations, tuple(violations))
