"""Attractor spaces of the random unitary operation.

Solves U_e X U_e^dag = lambda X for all digraph edges simultaneously by
stacking the vectorized constraints into an (|M| D^2) x D^2 matrix and
reading the nullspace off a rank-revealing QR.  Also provides the analytic
attractor bases and stationary-state families used as oracles, and the
spectral reconstruction of asymptotic states from attractor overlaps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .errors import BadLambda, BadParams, NotSolved, TooLarge, UnknownFamily
from .gates import GateSpec, gate_spectrum, total_unitary
from .numerics import RANK_RTOL, gram_schmidt_hs, hs_inner, hs_norm, nullspace_via_qr
from .registers import DensityMatrix, RegisterLayout
from .channel import InteractionDigraph

#: Constraint matrices grow as D^4 entries; past 6 qubits they stop being
#: desk-sized (D = 64 already means 4096^2 complex entries per edge).
SOLVER_MAX_QUBITS = 6
UNIT_MODULUS_ATOL = 1e-9
RESIDUAL_ATOL = 1e-8

ATTRACTOR_FAMILIES = ("symmetric_diss", "asymmetric_diss", "dephasing_zero")
STATIONARY_FAMILIES = (
    "zurek_ground",
    "env_excited",
    "ghz_mixture",
    "env_maximally_mixed",
    "kqubit_uniform",
    "completely_mixed",
)


@dataclass(frozen=True)
class AttractorSector:
    """Orthonormal attractor family for one unit-modulus eigenvalue."""

    eigenvalue: complex
    basis: tuple[np.ndarray, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class AttractorSpace:
    """Map from unit-modulus eigenvalues to orthonormal attractor bases."""

    layout: RegisterLayout
    sectors: tuple[AttractorSector, ...]

    def sector(self, lam: complex, tol: float = UNIT_MODULUS_ATOL) -> Optional[AttractorSector]:
        for sec in self.sectors:
            if abs(sec.eigenvalue - lam) <= tol:
                return sec
        return None

    def dimension(self, lam: complex, tol: float = UNIT_MODULUS_ATOL) -> int:
        sec = self.sector(lam, tol)
        return 0 if sec is None else sec.dimension

    def eigenvalues(self) -> tuple[complex, ...]:
        return tuple(sec.eigenvalue for sec in self.sectors)

    def total_dimension(self) -> int:
        return sum(sec.dimension for sec in self.sectors)


@dataclass(frozen=True)
class StationaryFamily:
    """A printed closed-form stationary state with its parameters."""

    family: str
    params: dict
    state: DensityMatrix


@dataclass(frozen=True)
class AsymptoticState:
    """Attractor-space reconstruction of an evolved state.

    In limit mode the state is the lambda = 1 projection; ``oscillatory``
    lists (eigenvalue, overlap weight) for the other unit-modulus sectors,
    whose lambda^N factors do not converge.
    """

    state: DensityMatrix
    oscillatory: tuple[tuple[complex, float], ...] = field(default_factory=tuple)


def candidate_eigenvalues(gate) -> np.ndarray:
    """All possible sandwich-map eigenvalues: pairwise products s_a * conj(s_b)
    over the gate spectrum, deduplicated within 1e-9 and sorted by phase."""
    u = total_unitary(gate) if isinstance(gate, GateSpec) else np.asarray(gate, complex)
    spectrum = gate_spectrum(u)
    found: list[complex] = []
    for sa in spectrum:
        for sb in spectrum:
            lam = complex(sa * np.conj(sb))
            if not any(abs(lam - known) <= 1e-9 for known in found):
                found.append(lam)
    order = np.argsort([np.angle(lam) % (2 * np.pi) for lam in found], kind="stable")
    return np.asarray(found, dtype=np.complex128)[order]


def _edge_unitaries(gate, digraph: InteractionDigraph) -> list[np.ndarray]:
    u = total_unitary(gate) if isinstance(gate, GateSpec) else np.asarray(gate, complex)
    m = digraph.layout.m
    return [kernels.embed_two_qubit(u, qi, qj, m) for qi, qj in digraph.qubit_pairs()]


def _canonical_basis(mats: list[np.ndarray], dim: int) -> list[np.ndarray]:
    """Seed the all-ground projector first when it lies in the span, then
    orthonormalize and fix each matrix's global phase."""
    if not mats:
        return []
    p0 = np.zeros((dim, dim), dtype=np.complex128)
    p0[0, 0] = 1.0
    overlap = sum((hs_inner(x, p0) * x for x in mats), np.zeros_like(p0))
    if hs_norm(p0 - overlap) <= RESIDUAL_ATOL:
        mats = [p0] + mats
    basis = gram_schmidt_hs(mats, tol=1e-10)
    fixed = []
    for x in basis:
        lead = x.flat[int(np.argmax(np.abs(x)))]
        fixed.append(x * (abs(lead) / lead))
    return fixed


def solve_attractors(gate, digraph: InteractionDigraph, lam: complex,
                     tol: float = RANK_RTOL) -> tuple[int, list[np.ndarray]]:
    """Dimension and orthonormal basis of the attractor space at one eigenvalue.

    Stacks vec(U_e X U_e^dag - lam X) = 0 for every edge into a single tall
    matrix; the attractor dimension is D^2 minus its pivot rank and the basis
    is the orthonormalized nullspace (all-ground projector seeded first when
    present in the span).
    """
    layout = digraph.layout
    if layout.m > SOLVER_MAX_QUBITS:
        raise TooLarge(
            f"k+n={layout.m} exceeds the solver guard of {SOLVER_MAX_QUBITS} qubits"
        )
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > UNIT_MODULUS_ATOL:
        raise BadLambda(f"|lambda| = {abs(lam)!r} is not 1 within 1e-9")
    dim = layout.dim
    eye = np.eye(dim * dim, dtype=np.complex128)
    blocks = []
    for ue in _edge_unitaries(gate, digraph):
        # row-major vec: vec(U X U^dag) = (U kron conj(U)) vec(X)
        blocks.append(np.kron(ue, ue.conj()) - lam * eye)
    stacked = np.vstack(blocks)
    rank, null_cols = nullspace_via_qr(stacked, tol)
    dimension = dim * dim - rank
    mats = [np.ascontiguousarray(null_cols[:, i].reshape(dim, dim))
            for i in range(null_cols.shape[1])]
    basis = _canonical_basis(mats, dim)
    _check_residuals(basis, _edge_unitaries(gate, digraph), lam)
    return dimension, basis


def _check_residuals(basis, edge_unitaries, lam: complex) -> None:
    for x in basis:
        for ue in edge_unitaries:
            res = ue @ x @ ue.conj().T - lam * x
            if np.linalg.norm(res) > RESIDUAL_ATOL:
                raise NotSolved(
                    f"attractor residual {np.linalg.norm(res):.2e} exceeds 1e-8 "
                    f"at lambda={lam:.6f}"
                )


def solve_attractor_space(gate, digraph: InteractionDigraph,
                          tol: float = RANK_RTOL,
                          keep_empty: bool = False) -> AttractorSpace:
    """Solve every candidate eigenvalue and assemble the full attractor space."""
    sectors = []
    for lam in candidate_eigenvalues(gate):
        dimension, basis = solve_attractors(gate, digraph, lam, tol)
        if dimension or keep_empty:
            sectors.append(AttractorSector(complex(lam), tuple(basis)))
    return AttractorSpace(digraph.layout, tuple(sectors))


def asymptotic_state(rho_in: DensityMatrix, space: AttractorSpace,
                     n: Optional[int] = None) -> AsymptoticState:
    """Reconstruct the attractor-space part of the evolved state.

    With ``n`` given, returns sum over sectors of lambda^n Tr(rho X^dag) X --
    the exactly-evolving component after n steps.  With ``n=None`` (the limit
    mode) only the lambda = 1 projection is returned, since lambda^N has no
    limit elsewhere on the unit circle; the skipped sectors are reported as
    oscillatory weights.
    """
    if space.layout.dim != rho_in.layout.dim:
        raise NotSolved("attractor space was solved on a different register size")
    acc = np.zeros_like(rho_in.data)
    oscillatory: list[tuple[complex, float]] = []
    for sec in space.sectors:
        if not sec.basis:
            if n is None:
                oscillatory.append((sec.eigenvalue, 0.0))
            continue
        coeffs = [hs_inner(x, rho_in.data) for x in sec.basis]
        component = sum(c * x for c, x in zip(coeffs, sec.basis))
        if n is None:
            if abs(sec.eigenvalue - 1.0) <= UNIT_MODULUS_ATOL:
                acc += component
            else:
                oscillatory.append((sec.eigenvalue, float(np.linalg.norm(component))))
        else:
            acc += sec.eigenvalue ** n * component
    state = DensityMatrix(rho_in.layout, acc)
    return AsymptoticState(state, tuple(oscillatory))


def _ground_projector(dim: int) -> np.ndarray:
    p0 = np.zeros((dim, dim), dtype=np.complex128)
    p0[0, 0] = 1.0
    return p0


def closed_form_attractor(family: str, k: int, n: int) -> AttractorSpace:
    """Analytic attractor bases for the studied gate families.

    ``symmetric_diss``: two lambda = 1 attractors, the all-ground projector
    and the normalized complement of the identity.  ``asymmetric_diss``: the
    normalized identity alone.  ``dephasing_zero``: the lambda = +/- i sectors
    of the dephasing composite, which are empty.
    """
    if k < 1 or n < 1:
        raise BadParams("k and n must be at least 1")
    layout = RegisterLayout(k, n)
    dim = layout.dim
    if family == "symmetric_diss":
        p0 = _ground_projector(dim)
        rest = (np.eye(dim, dtype=np.complex128) - p0) / np.sqrt(dim - 1)
        return AttractorSpace(layout, (AttractorSector(1.0 + 0j, (p0, rest)),))
    if family == "asymmetric_diss":
        ident = np.eye(dim, dtype=np.complex128) / np.sqrt(dim)
        return AttractorSpace(layout, (AttractorSector(1.0 + 0j, (ident,)),))
    if family == "dephasing_zero":
        return AttractorSpace(layout, (AttractorSector(1j, ()), AttractorSector(-1j, ())))
    raise UnknownFamily(f"unknown attractor family {family!r}; choose from {ATTRACTOR_FAMILIES}")


def _two_level_state(layout: RegisterLayout, ground_weight: float) -> DensityMatrix:
    """ground_weight on the all-ground projector, the rest spread uniformly
    over its orthogonal complement."""
    dim = layout.dim
    data = np.eye(dim, dtype=np.complex128) * ((1.0 - ground_weight) / (dim - 1))
    data[0, 0] = ground_weight
    return DensityMatrix(layout, data)


def closed_form_stationary(family: str, k: int = 1, n: int = 1, a2: float = 0.5,
                           p0: Optional[float] = None) -> StationaryFamily:
    """Printed stationary states of the dissipative random unitary evolution.

    Families (all diagonal): ``zurek_ground`` for the all-ground environment,
    ``env_excited`` for the all-excited one, ``ghz_mixture`` and
    ``env_maximally_mixed`` for those environment preparations,
    ``kqubit_uniform`` for a k-qubit uniform system over a ground environment
    (``p0`` defaults to 2^-k), and ``completely_mixed`` for the asymmetric
    dissipation endpoint.  ``a2`` is the ground-state system weight |a|^2.
    """
    if not 0.0 <= a2 <= 1.0:
        raise BadParams(f"a2={a2} outside [0, 1]")
    if k < 1 or n < 1:
        raise BadParams("k and n must be at least 1")
    params: dict = {"k": k, "n": n}

    if family == "zurek_ground":
        layout = RegisterLayout(1, n)
        b2 = 1.0 - a2
        dim = layout.dim
        data = np.eye(dim, dtype=np.complex128) * (b2 / (dim - 1))
        data[0, 0] += a2 - b2 / (dim - 1)
        params["a2"] = a2
        return StationaryFamily(family, params, DensityMatrix(layout, data))
    if family == "env_excited":
        layout = RegisterLayout(1, n)
        return StationaryFamily(family, params, _two_level_state(layout, 0.0))
    if family == "ghz_mixture":
        layout = RegisterLayout(1, n)
        params["a2"] = a2
        return StationaryFamily(family, params, _two_level_state(layout, a2 / 2.0))
    if family == "env_maximally_mixed":
        layout = RegisterLayout(1, n)
        params["a2"] = a2
        return StationaryFamily(family, params, _two_level_state(layout, a2 * 2.0 ** (-n)))
    if family == "kqubit_uniform":
        layout = RegisterLayout(k, n)
        weight = 2.0 ** (-k) if p0 is None else float(p0)
        if not 0.0 <= weight <= 1.0:
            raise BadParams(f"p0={weight} outside [0, 1]")
        params["p0"] = weight
        return StationaryFamily(family, params, _two_level_state(layout, weight))
    if family == "completely_mixed":
        layout = RegisterLayout(k, n)
        dim = layout.dim
        state = DensityMatrix(layout, np.eye(dim, dtype=np.complex128) / dim)
        return StationaryFamily(family, params, state)
    raise UnknownFamily(
        f"unknown stationary family {family!r}; choose from {STATIONARY_FAMILIES}"
    )
