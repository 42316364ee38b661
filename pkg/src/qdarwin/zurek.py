"""Single-pass qubit model: one system qubit interacts exactly once with each
environment qubit, in order.  Provides the exact evolution, the printed
closed-form output states for the studied parameter choices, and the
closed-form reduced-system eigenvalues of the asymmetric-dissipation case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import kernels
from .errors import BadAmplitudes, BadParams, UnknownCase
from .gates import ORDER_REVERSED, ORDER_STANDARD, GateSpec, total_unitary
from .registers import DensityMatrix, PureState, RegisterLayout

NORM_ATOL = 1e-12

#: Closed-form case tags and the (alpha1, alpha2, gamma, order) they encode.
#: The general_asymmetric pair takes explicit alpha1/alpha2 (gamma = 0).
CASE_PARAMS = {
    "cnot": (0.0, 0.0, 0.0, ORDER_STANDARD),
    "symmetric_diss": (math.pi / 2, math.pi / 2, 0.0, ORDER_STANDARD),
    "symmetric_diss_reversed": (math.pi / 2, math.pi / 2, 0.0, ORDER_REVERSED),
    "asymmetric_diss": (2 * math.pi / 3, math.pi / 3, 0.0, ORDER_STANDARD),
    "asymmetric_diss_reversed": (2 * math.pi / 3, math.pi / 3, 0.0, ORDER_REVERSED),
    "dephasing": (0.0, 0.0, math.pi, ORDER_STANDARD),
    "dephasing_reversed": (0.0, 0.0, math.pi, ORDER_REVERSED),
    "diss_dephasing": (math.pi / 2, math.pi / 2, math.pi, ORDER_STANDARD),
    "diss_dephasing_reversed": (math.pi / 2, math.pi / 2, math.pi, ORDER_REVERSED),
    "general_asymmetric": (None, None, 0.0, ORDER_STANDARD),
    "general_asymmetric_reversed": (None, None, 0.0, ORDER_REVERSED),
}


@dataclass(frozen=True)
class ZurekCase:
    """One single-pass evolution: gate, environment size, system amplitudes."""

    gate: GateSpec
    n: int
    a: complex = 2.0 ** -0.5
    b: complex = 2.0 ** -0.5

    def __post_init__(self):
        if self.n < 1:
            raise BadParams("n must be at least 1")
        if abs(abs(self.a) ** 2 + abs(self.b) ** 2 - 1.0) > NORM_ATOL:
            raise BadAmplitudes("|a|^2 + |b|^2 must equal 1 within 1e-12")

    @property
    def layout(self) -> RegisterLayout:
        return RegisterLayout(1, self.n)


def case_for(tag: str, n: int, a: complex = 2.0 ** -0.5, b: complex = 2.0 ** -0.5,
             alpha1: Optional[float] = None, alpha2: Optional[float] = None) -> ZurekCase:
    """The ZurekCase whose evolution reproduces the tagged closed form."""
    if tag not in CASE_PARAMS:
        raise UnknownCase(f"unknown case tag {tag!r}; choose from {tuple(CASE_PARAMS)}")
    a1, a2_, gamma, order = CASE_PARAMS[tag]
    if a1 is None:
        if alpha1 is None or alpha2 is None:
            raise BadParams(f"case {tag!r} needs explicit alpha1 and alpha2")
        a1, a2_ = float(alpha1), float(alpha2)
    gate = GateSpec(phi=math.pi / 2, alpha1=a1, alpha2=a2_, gamma=gamma, order=order)
    return ZurekCase(gate, n, a, b)


def zurek_evolve(case: ZurekCase,
                 env: Union[DensityMatrix, np.ndarray, None] = None
                 ) -> Union[PureState, DensityMatrix]:
    """Apply the case's two-qubit unitary once to each pair (S, E_j), j = 1..n.

    With the default all-ground pure environment this runs on the amplitude
    vector and returns a PureState.  A mixed environment (a 2^n x 2^n matrix
    or a DensityMatrix of n qubits) switches to density-matrix conjugations.
    """
    layout = case.layout
    u = total_unitary(case.gate)
    m = layout.m
    if env is None:
        amps = np.zeros(layout.dim, dtype=np.complex128)
        amps[0] = case.a
        amps[1 << case.n] = case.b
        for j in range(1, case.n + 1):
            amps = kernels.apply_two_qubit_state(amps, u, 0, j, m)
        return PureState(layout, amps)
    env_data = env.data if isinstance(env, DensityMatrix) else np.asarray(env, complex)
    if env_data.shape != (1 << case.n, 1 << case.n):
        raise BadParams(f"environment must be 2^{case.n} square, got {env_data.shape}")
    sys_vec = np.array([case.a, case.b], dtype=np.complex128)
    rho = np.kron(np.outer(sys_vec, sys_vec.conj()), env_data)
    state = DensityMatrix(layout, rho)
    for j in range(1, case.n + 1):
        data = kernels.apply_two_qubit_matrix(state.data, u, 0, j, m)
        state = DensityMatrix._wrap(layout, data)
    return state


def _amplitude_state(n: int, entries: dict[int, complex]) -> PureState:
    layout = RegisterLayout(1, n)
    amps = np.zeros(layout.dim, dtype=np.complex128)
    for idx, val in entries.items():
        amps[idx] = val
    return PureState(layout, amps)


def zurek_closed_form(tag: str, n: int, a: complex = 2.0 ** -0.5,
                      b: complex = 2.0 ** -0.5,
                      alpha1: Optional[float] = None,
                      alpha2: Optional[float] = None) -> PureState:
    """The printed output amplitudes for one case tag, exactly as derived.

    The asymmetric and general-asymmetric forms are printed for n = 2 only;
    use `zurek_evolve` for other environment sizes.
    """
    if tag not in CASE_PARAMS:
        raise UnknownCase(f"unknown case tag {tag!r}; choose from {tuple(CASE_PARAMS)}")
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_ATOL:
        raise BadAmplitudes("|a|^2 + |b|^2 must equal 1 within 1e-12")
    if n < 1:
        raise BadParams("n must be at least 1")
    top = 1 << n          # |1> system over all-ground environment
    last = (1 << (n + 1)) - 1
    first_env = 1 << (n - 1)

    if tag == "cnot":
        return _amplitude_state(n, {0: a, last: b})
    if tag == "symmetric_diss":
        return _amplitude_state(n, {0: a, first_env: 1j * b})
    if tag == "symmetric_diss_reversed":
        return _amplitude_state(n, {0: a, last: b})
    if tag == "dephasing":
        phase = (-1j) ** n
        return _amplitude_state(n, {0: phase * a, last: phase * ((-1.0) ** n) * b})
    if tag == "dephasing_reversed":
        phase = (-1j) ** n
        return _amplitude_state(n, {0: phase * a, last: phase * b})
    if tag == "diss_dephasing":
        phase = (-1j) ** n
        return _amplitude_state(n, {0: phase * a, first_env: phase * (-1j) * b})
    if tag == "diss_dephasing_reversed":
        phase = (-1j) ** n
        return _amplitude_state(n, {0: phase * a, last: phase * b})

    if tag in ("asymmetric_diss", "asymmetric_diss_reversed"):
        alpha1, alpha2 = 2 * math.pi / 3, math.pi / 3
        tag = ("general_asymmetric" if tag == "asymmetric_diss"
               else "general_asymmetric_reversed")
    if alpha1 is None or alpha2 is None:
        raise BadParams(f"case {tag!r} needs explicit alpha1 and alpha2")
    if n != 2:
        raise BadParams("the asymmetric closed forms are printed for n = 2 only")
    cd = math.cos(0.5 * (alpha1 - alpha2))
    sd = math.sin(0.5 * (alpha1 - alpha2))
    cs = math.cos(0.5 * (alpha1 + alpha2))
    ss = math.sin(0.5 * (alpha1 + alpha2))
    if tag == "general_asymmetric":
        return _amplitude_state(2, {
            0: a * cd * cd,            # |0>|00>
            4: 1j * a * cd * sd,       # |1>|00>
            2: 1j * b * cd * ss,       # |0>|10>
            6: -b * ss * sd,           # |1>|10>
            1: -a * ss * sd,           # |0>|01>
            5: 1j * a * sd * cs,       # |1>|01>
            3: 1j * b * ss * cs,       # |0>|11>
            7: b * cs * cs,            # |1>|11>
        })
    if tag == "general_asymmetric_reversed":
        return _amplitude_state(2, {
            0: a * cd * cd + 1j * b * cd * sd,     # |0>|00>
            2: 1j * b * cd * sd - a * sd * sd,     # |0>|10>
            5: -b * sd * sd + 1j * a * sd * cd,    # |1>|01>
            7: b * cd * cd + 1j * a * sd * cd,     # |1>|11>
        })
    raise UnknownCase(f"case {tag!r} has no printed closed form")


def zurek_system_spectrum(tag: str, a: complex, b: complex) -> tuple[float, float]:
    """Printed reduced-system eigenvalues of the asymmetric-dissipation case
    (alpha1 = 2pi/3, alpha2 = pi/3) after a two-qubit environment pass."""
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > NORM_ATOL:
        raise BadAmplitudes("|a|^2 + |b|^2 must equal 1 within 1e-12")
    a2 = abs(a) ** 2
    b2 = abs(b) ** 2
    if tag == "asymmetric_diss":
        lam1 = 0.5 + 0.125 * math.sqrt((3 * a2 + 4 * b2) ** 2 + 4 * a2)
        return lam1, 1.0 - lam1
    if tag == "asymmetric_diss_reversed":
        cross = (2j * math.sqrt(3) / 16.0) * (np.conj(a) * b - a * np.conj(b))
        lam1 = float((10.0 * a2 + 6.0 * b2) / 16.0 + cross.real)
        return lam1, 1.0 - lam1
    raise UnknownCase(
        "system spectra are printed for 'asymmetric_diss' and "
        f"'asymmetric_diss_reversed', not {tag!r}"
    )
