"""Random-unitary qubit channel simulator: iterated two-qubit interactions,
attractor-space analysis, and information-redundancy diagnostics."""

from .attractor import (
    AsymptoticState,
    AttractorSector,
    AttractorSpace,
    StationaryFamily,
    asymptotic_state,
    candidate_eigenvalues,
    closed_form_attractor,
    closed_form_stationary,
    solve_attractor_space,
    solve_attractors,
)
from .channel import (
    InteractionDigraph,
    IterationReport,
    iterate,
    run_fixed,
    step,
    uniform_digraph,
)
from .darwinism import (
    CriterionResult,
    EntropyReport,
    PipCurve,
    RedundancyResult,
    classical_entropy,
    darwinism_criterion,
    mutual_information,
    pip,
    pip_spread,
    random_orderings,
    redundancy,
    von_neumann_entropy,
)
from .gates import (
    ORDER_REVERSED,
    ORDER_STANDARD,
    GateSpec,
    controlled_u,
    diss_unitary,
    gate_spectrum,
    total_unitary,
)
from .kernels import backend_name
from .numerics import (
    HermitianEigenResult,
    gram_schmidt_hs,
    hermitian_eigs,
    nullspace_via_qr,
    rank_via_qr,
)
from .registers import (
    DensityMatrix,
    PureState,
    RegisterLayout,
    apply_two_qubit,
    initial_state,
    partial_trace,
    tensor,
    trace_distance,
)
from .zurek import (
    ZurekCase,
    case_for,
    zurek_closed_form,
    zurek_evolve,
    zurek_system_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticState",
    "AttractorSector",
    "AttractorSpace",
    "CriterionResult",
    "DensityMatrix",
    "EntropyReport",
    "GateSpec",
    "HermitianEigenResult",
    "InteractionDigraph",
    "IterationReport",
    "ORDER_REVERSED",
    "ORDER_STANDARD",
    "PipCurve",
    "PureState",
    "RedundancyResult",
    "RegisterLayout",
    "StationaryFamily",
    "ZurekCase",
    "apply_two_qubit",
    "asymptotic_state",
    "backend_name",
    "candidate_eigenvalues",
    "case_for",
    "classical_entropy",
    "closed_form_attractor",
    "closed_form_stationary",
    "controlled_u",
    "darwinism_criterion",
    "diss_unitary",
    "gate_spectrum",
    "gram_schmidt_hs",
    "hermitian_eigs",
    "initial_state",
    "iterate",
    "mutual_information",
    "nullspace_via_qr",
    "partial_trace",
    "pip",
    "pip_spread",
    "random_orderings",
    "rank_via_qr",
    "redundancy",
    "run_fixed",
    "solve_attractor_space",
    "solve_attractors",
    "step",
    "tensor",
    "total_unitary",
    "trace_distance",
    "uniform_digraph",
    "von_neumann_entropy",
    "zurek_closed_form",
    "zurek_evolve",
    "zurek_system_spectrum",
    "__version__",
]
