"""Two-qubit unitary families: controlled-U decoherence, dissipative-dephasing
feedback, and their composites in both operator orders.

The 4x4 matrices act on (control, target) = (system qubit, environment qubit)
with the control as the first tensor factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnitary, ParamOutOfRange

ORDER_STANDARD = "standard"
ORDER_REVERSED = "reversed"
_ORDERS = (ORDER_STANDARD, ORDER_REVERSED)

_ANGLE_SLACK = 1e-12
UNITARY_ATOL = 1e-10


def _check_phi(phi: float) -> float:
    phi = float(phi)
    if not -_ANGLE_SLACK <= phi <= math.pi + _ANGLE_SLACK:
        raise ParamOutOfRange(f"phi={phi} outside [0, pi]")
    return phi


def _check_diss(alpha1: float, alpha2: float, gamma: float) -> tuple[float, float, float]:
    alpha1, alpha2, gamma = float(alpha1), float(alpha2), float(gamma)
    if not -_ANGLE_SLACK <= alpha1 + alpha2 <= math.pi + _ANGLE_SLACK:
        raise ParamOutOfRange(f"alpha1+alpha2={alpha1 + alpha2} outside [0, pi]")
    if not -_ANGLE_SLACK <= gamma <= math.pi + _ANGLE_SLACK:
        raise ParamOutOfRange(f"gamma={gamma} outside [0, pi]")
    return alpha1, alpha2, gamma


@dataclass(frozen=True)
class GateSpec:
    """Parameters of one two-qubit interaction unitary.

    ``order`` selects the composite: 'standard' applies the dissipative
    feedback first and the controlled-U second; 'reversed' swaps them.
    """

    phi: float = math.pi / 2
    alpha1: float = 0.0
    alpha2: float = 0.0
    gamma: float = 0.0
    order: str = ORDER_STANDARD

    def __post_init__(self):
        _check_phi(self.phi)
        _check_diss(self.alpha1, self.alpha2, self.gamma)
        if self.order not in _ORDERS:
            raise ParamOutOfRange(f"order must be one of {_ORDERS}, got {self.order!r}")


def controlled_u(phi: float) -> np.ndarray:
    """Controlled one-parameter gate: target gets sigma_z*cos(phi) + sigma_x*sin(phi).

    phi = pi/2 is CNOT; phi = 0 is controlled-Z.
    """
    phi = _check_phi(phi)
    u = np.zeros((4, 4), dtype=np.complex128)
    u[0, 0] = u[1, 1] = 1.0
    c, s = math.cos(phi), math.sin(phi)
    u[2, 2] = c
    u[2, 3] = s
    u[3, 2] = s
    u[3, 3] = -c
    return u


def diss_unitary(alpha1: float, alpha2: float, gamma: float) -> np.ndarray:
    """Dissipative-dephasing feedback unitary, assembled in closed form.

    The generator's three terms (xx, yy, zz couplings) commute, acting within
    the {|00>,|11>} and {|01>,|10>} planes, so the exponential of
    (i/2)(alpha1*XX + alpha2*YY - gamma*ZZ) is exact; no series or Pade
    approximation is involved.
    """
    alpha1, alpha2, gamma = _check_diss(alpha1, alpha2, gamma)
    half_diff = 0.5 * (alpha1 - alpha2)
    half_sum = 0.5 * (alpha1 + alpha2)
    outer = np.exp(-0.5j * gamma)
    inner = np.exp(+0.5j * gamma)
    u = np.zeros((4, 4), dtype=np.complex128)
    u[0, 0] = u[3, 3] = outer * math.cos(half_diff)
    u[3, 0] = u[0, 3] = 1j * outer * math.sin(half_diff)
    u[1, 1] = u[2, 2] = inner * math.cos(half_sum)
    u[2, 1] = u[1, 2] = 1j * inner * math.sin(half_sum)
    return u


def total_unitary(spec: GateSpec) -> np.ndarray:
    """Composite two-qubit operation in the order selected by the spec."""
    cu = controlled_u(spec.phi)
    du = diss_unitary(spec.alpha1, spec.alpha2, spec.gamma)
    if spec.order == ORDER_STANDARD:
        return cu @ du
    return du @ cu


def gate_spectrum(gate) -> np.ndarray:
    """Eigenvalues of a unitary, sorted by principal argument (ascending)."""
    g = np.asarray(gate, dtype=np.complex128)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {g.shape}")
    if np.max(np.abs(g.conj().T @ g - np.eye(g.shape[0]))) > UNITARY_ATOL:
        raise NotUnitary("matrix is not unitary within 1e-10")
    vals = np.linalg.eigvals(g)
    if np.max(np.abs(np.abs(vals) - 1.0)) > 1e-10:
        raise NotUnitary("eigenvalues are not unit modulus within 1e-10")
    order = np.argsort(np.round(np.angle(vals), 12), kind="stable")
    return vals[order]
