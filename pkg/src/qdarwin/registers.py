"""Qubit register layout, states, tensor products, partial traces, and the
structured two-qubit gate application.

Convention: qubit 0 is the most significant bit of a basis index.  System
qubits occupy positions 0..k-1 and environment qubits follow left to right,
so environment qubit j (1-based, as labeled on the interaction digraph) sits
at global position k + j - 1 and environment qubit n is the least significant
bit.  All states are immutable; operations return new values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    BadAmplitudes,
    DuplicateIndex,
    IndexOutOfRange,
    LayoutMismatch,
    NotAState,
    NotUnitary,
    SameQubit,
    SizeOverflow,
    UnknownFamily,
)

#: Hard cap on register width; 2^12 = 4096 keeps dense matrices desk-sized.
MAX_QUBITS = 12
HERMITIAN_ATOL = 1e-10
TRACE_ATOL = 1e-10
UNITARY_ATOL = 1e-10
NORM_ATOL = 1e-12
#: Smallest admissible eigenvalue of a state; tiny negatives from iterated
#: floating-point conjugations are tolerated (and clamped by entropy code).
PSD_FLOOR = -1e-8

INITIAL_FAMILIES = (
    "zurek_ground",
    "env_excited",
    "ghz_mixture",
    "env_maximally_mixed",
    "entangled_sx",
    "k_uniform_pure",
)


@dataclass(frozen=True)
class RegisterLayout:
    """System/environment split of a qubit register (system bits first).

    ``k`` or ``n`` may be zero for marginals obtained by tracing; simulation
    entry points require both to be at least 1.
    """

    k: int
    n: int
    max_qubits: int = MAX_QUBITS

    def __post_init__(self):
        if self.k < 0 or self.n < 0 or self.k + self.n < 1:
            raise SizeOverflow(f"invalid register split k={self.k}, n={self.n}")
        if self.k + self.n > self.max_qubits:
            raise SizeOverflow(
                f"k+n={self.k + self.n} exceeds the maximum of {self.max_qubits}"
            )

    @property
    def m(self) -> int:
        return self.k + self.n

    @property
    def dim(self) -> int:
        return 1 << (self.k + self.n)

    def system_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.k))

    def env_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.k, self.k + self.n))

    def env_qubit(self, j: int) -> int:
        """Global position of environment qubit ``j`` (1-based digraph label)."""
        if not 1 <= j <= self.n:
            raise IndexOutOfRange(f"environment qubit {j} not in 1..{self.n}")
        return self.k + j - 1

    def right_to_left(self) -> tuple[int, ...]:
        """Default trace-out order: environment positions n-1 down to 0."""
        return tuple(range(self.n - 1, -1, -1))


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class DensityMatrix:
    """Hermitian, unit-trace operator on a labeled qubit register.

    Construction validates Hermiticity (1e-10), unit trace (1e-10) and
    finiteness.  Positivity is not rechecked on every construction; the
    channel property suite asserts eigenvalues stay above ``PSD_FLOOR``.
    """

    __slots__ = ("layout", "data")

    def __init__(self, layout: RegisterLayout, data, *, validate: bool = True):
        a = np.array(data, dtype=np.complex128, copy=True)
        if a.shape != (layout.dim, layout.dim):
            raise LayoutMismatch(
                f"data shape {a.shape} does not match register dimension {layout.dim}"
            )
        if validate:
            if not np.all(np.isfinite(a.view(np.float64))):
                raise NotAState("state contains non-finite entries")
            if np.max(np.abs(a - a.conj().T)) > HERMITIAN_ATOL:
                raise NotAState("state is not Hermitian within 1e-10")
            if abs(a.trace().real - 1.0) > TRACE_ATOL or abs(a.trace().imag) > TRACE_ATOL:
                raise NotAState(f"state trace {a.trace():.3e} is not 1 within 1e-10")
        self.layout = layout
        self.data = _frozen(a)

    @classmethod
    def _wrap(cls, layout: RegisterLayout, data: np.ndarray) -> "DensityMatrix":
        """Trusted constructor for hot paths; skips invariant checks."""
        return cls(layout, data, validate=False)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.data)[0])

    def purity(self) -> float:
        return float(np.vdot(self.data, self.data).real)

    def __repr__(self) -> str:  # pragma: no cover
        return f"DensityMatrix(k={self.layout.k}, n={self.layout.n}, dim={self.layout.dim})"


class PureState:
    """Unit-norm amplitude vector over a labeled register."""

    __slots__ = ("layout", "amplitudes")

    def __init__(self, layout: RegisterLayout, amplitudes):
        v = np.array(amplitudes, dtype=np.complex128, copy=True).reshape(-1)
        if v.shape != (layout.dim,):
            raise LayoutMismatch(
                f"amplitude length {v.size} does not match register dimension {layout.dim}"
            )
        nrm = np.linalg.norm(v)
        if abs(nrm - 1.0) > NORM_ATOL:
            raise BadAmplitudes(f"amplitude norm {nrm!r} is not 1 within 1e-12")
        self.layout = layout
        self.amplitudes = _frozen(v)

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.layout, np.outer(self.amplitudes, self.amplitudes.conj()))

    def __repr__(self) -> str:  # pragma: no cover
        return f"PureState(k={self.layout.k}, n={self.layout.n}, dim={self.layout.dim})"


def _system_amplitudes(layout: RegisterLayout, a, b, amplitudes) -> np.ndarray:
    if amplitudes is not None:
        v = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if v.size != 1 << layout.k:
            raise BadAmplitudes(f"expected 2^{layout.k} system amplitudes, got {v.size}")
        if abs(np.linalg.norm(v) - 1.0) > NORM_ATOL:
            raise BadAmplitudes("system amplitudes are not normalized within 1e-12")
        return v
    if layout.k != 1:
        raise BadAmplitudes("scalar (a, b) amplitudes require a single system qubit")
    a = 1.0 / np.sqrt(2.0) if a is None else complex(a)
    b = 1.0 / np.sqrt(2.0) if b is None else complex(b)
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_ATOL:
        raise BadAmplitudes("|a|^2 + |b|^2 must equal 1 within 1e-12")
    return np.array([a, b], dtype=np.complex128)


def initial_state(family: str, layout: RegisterLayout, a=None, b=None,
                  amplitudes=None) -> DensityMatrix:
    """Build a named initial system-environment state.

    Families: ``zurek_ground`` (environment all-ground), ``env_excited``
    (all-excited), ``ghz_mixture`` (even mixture of all-ground and
    all-excited), ``env_maximally_mixed``, ``entangled_sx`` (system branches
    correlated with the two sigma_x product eigenstates of the environment),
    and ``k_uniform_pure`` (uniform system superposition over a ground
    environment).  The system amplitudes come from ``(a, b)`` for k=1 or an
    explicit ``amplitudes`` vector.
    """
    if layout.k < 1 or layout.n < 1:
        raise SizeOverflow("initial states need at least one system and one environment qubit")
    dn = 1 << layout.n
    if family == "k_uniform_pure":
        sys_amp = np.full(1 << layout.k, 2.0 ** (-layout.k / 2.0), dtype=np.complex128)
    else:
        sys_amp = _system_amplitudes(layout, a, b, amplitudes)

    if family in ("zurek_ground", "k_uniform_pure"):
        env = np.zeros(dn, dtype=np.complex128)
        env[0] = 1.0
        return PureState(layout, np.kron(sys_amp, env)).density()
    if family == "env_excited":
        env = np.zeros(dn, dtype=np.complex128)
        env[-1] = 1.0
        return PureState(layout, np.kron(sys_amp, env)).density()
    if family == "ghz_mixture":
        rho_s = np.outer(sys_amp, sys_amp.conj())
        rho_e = np.zeros((dn, dn), dtype=np.complex128)
        rho_e[0, 0] = 0.5
        rho_e[-1, -1] = 0.5
        return DensityMatrix(layout, np.kron(rho_s, rho_e))
    if family == "env_maximally_mixed":
        rho_s = np.outer(sys_amp, sys_amp.conj())
        rho_e = np.eye(dn, dtype=np.complex128) / dn
        return DensityMatrix(layout, np.kron(rho_s, rho_e))
    if family == "entangled_sx":
        if layout.k != 1:
            raise BadAmplitudes("entangled_sx is defined for a single system qubit")
        signs = np.ones(dn)
        for idx in range(dn):
            signs[idx] = (-1.0) ** bin(idx).count("1")
        s1 = np.full(dn, dn ** -0.5, dtype=np.complex128)
        s2 = signs * dn ** -0.5
        vec = np.zeros(2 * dn, dtype=np.complex128)
        vec[:dn] = sys_amp[0] * s1
        vec[dn:] = sys_amp[1] * s2
        return PureState(layout, vec).density()
    raise UnknownFamily(f"unknown initial family {family!r}; choose from {INITIAL_FAMILIES}")


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product with layout concatenation.

    The factors must keep the system-first qubit order intact, i.e. the first
    factor has no environment qubits or the second has no system qubits.
    """
    if a.layout.n != 0 and b.layout.k != 0:
        raise LayoutMismatch("tensor would interleave system and environment qubits")
    if a.layout.m + b.layout.m > max(a.layout.max_qubits, b.layout.max_qubits):
        raise SizeOverflow("combined register exceeds the qubit maximum")
    layout = RegisterLayout(a.layout.k + b.layout.k, a.layout.n + b.layout.n,
                            max(a.layout.max_qubits, b.layout.max_qubits))
    return DensityMatrix._wrap(layout, np.kron(a.data, b.data))


def partial_trace(rho: DensityMatrix, discard) -> DensityMatrix:
    """Trace out the listed global qubit positions.

    The remaining qubits keep their relative order; the returned layout drops
    the discarded positions from the system/environment counts.
    """
    discard = tuple(int(q) for q in discard)
    m = rho.layout.m
    for q in discard:
        if not 0 <= q < m:
            raise IndexOutOfRange(f"qubit {q} not in 0..{m - 1}")
    if len(set(discard)) != len(discard):
        raise DuplicateIndex(f"duplicate qubit in {discard}")
    if not discard:
        return rho
    if len(discard) == m:
        raise IndexOutOfRange("cannot trace out every qubit")
    t = rho.data.reshape((2,) * (2 * m))
    mm = m
    for q in sorted(discard, reverse=True):
        t = np.trace(t, axis1=q, axis2=q + mm)
        mm -= 1
    new_k = rho.layout.k - sum(1 for q in discard if q < rho.layout.k)
    new_n = rho.layout.n - sum(1 for q in discard if q >= rho.layout.k)
    layout = RegisterLayout(new_k, new_n, rho.layout.max_qubits)
    return DensityMatrix._wrap(layout, np.ascontiguousarray(t.reshape(1 << mm, 1 << mm)))


def _check_two_qubit_gate(gate) -> np.ndarray:
    g = np.asarray(gate, dtype=np.complex128)
    if g.shape != (4, 4):
        raise NotUnitary(f"expected a 4x4 gate, got shape {g.shape}")
    if np.max(np.abs(g.conj().T @ g - np.eye(4))) > UNITARY_ATOL:
        raise NotUnitary("gate is not unitary within 1e-10")
    return g


def apply_two_qubit(rho: DensityMatrix, gate, i: int, j: int) -> DensityMatrix:
    """Conjugate by a two-qubit unitary on global qubits (i, j).

    Runs the bit-indexed pair-grouping kernel in O(dim^2) multiply-adds; the
    embedded dim x dim unitary is never formed.
    """
    m = rho.layout.m
    if not (0 <= i < m) or not (0 <= j < m):
        raise IndexOutOfRange(f"qubits ({i}, {j}) not in 0..{m - 1}")
    if i == j:
        raise SameQubit(f"qubit indices must differ, got {i} twice")
    g = _check_two_qubit_gate(gate)
    out = kernels.apply_two_qubit_matrix(rho.data, g, i, j, m)
    return DensityMatrix._wrap(rho.layout, out)


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half the trace norm of rho - sigma, via Hermitian eigenvalues."""
    if (rho.layout.k, rho.layout.n) != (sigma.layout.k, sigma.layout.n):
        raise LayoutMismatch(
            f"layout ({rho.layout.k},{rho.layout.n}) vs ({sigma.layout.k},{sigma.layout.n})"
        )
    eig = np.linalg.eigvalsh(rho.data - sigma.data)
    return float(0.5 * np.sum(np.abs(eig)))
