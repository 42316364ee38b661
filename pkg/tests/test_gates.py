import numpy as np
import pytest

from qdarwin import (
    GateSpec,
    ORDER_REVERSED,
    controlled_u,
    diss_unitary,
    gate_spectrum,
    total_unitary,
)
from qdarwin.errors import NotUnitary, ParamOutOfRange

PI = np.pi


def _expm_oracle(h: np.ndarray) -> np.ndarray:
    """exp(h) by 20-term Taylor series with scaling and squaring."""
    norm = np.linalg.norm(h, np.inf)
    squarings = max(0, int(np.ceil(np.log2(max(norm, 1e-300)))) + 1)
    x = h / (2.0 ** squarings)
    term = np.eye(h.shape[0], dtype=complex)
    acc = np.eye(h.shape[0], dtype=complex)
    for k in range(1, 21):
        term = term @ x / k
        acc = acc + term
    for _ in range(squarings):
        acc = acc @ acc
    return acc


def _match_spectra(a, b, tol):
    """Greedy multiset matching of two eigenvalue lists."""
    b = list(b)
    for lam in a:
        dist = [abs(lam - mu) for mu in b]
        idx = int(np.argmin(dist))
        assert dist[idx] < tol, (lam, b)
        b.pop(idx)


def test_controlled_u_cnot():
    u = controlled_u(PI / 2)
    assert np.abs(u @ np.eye(4)[:, 2] - np.eye(4)[:, 3]).max() < 1e-12  # |10> -> |11>
    assert np.abs(u @ np.eye(4)[:, 3] - np.eye(4)[:, 2]).max() < 1e-12  # |11> -> |10>
    assert np.abs(u[:2, :2] - np.eye(2)).max() < 1e-12


def test_controlled_u_phase_zero_is_controlled_z():
    u = controlled_u(0.0)
    assert np.allclose(u, np.diag([1.0, 1.0, 1.0, -1.0]))


def test_controlled_u_interior_angle_unitary():
    u = controlled_u(PI / 4)
    assert np.abs(u.conj().T @ u - np.eye(4)).max() < 1e-12
    assert abs(u[2, 2] - np.cos(PI / 4)) < 1e-12
    with pytest.raises(ParamOutOfRange):
        controlled_u(-0.1)
    with pytest.raises(ParamOutOfRange):
        controlled_u(PI + 0.1)


def test_diss_unitary_identity_at_zero():
    assert np.allclose(diss_unitary(0.0, 0.0, 0.0), np.eye(4))


def test_diss_unitary_symmetric_max_swaps_with_phase():
    u = diss_unitary(PI / 2, PI / 2, 0.0)
    e = np.eye(4)
    assert np.abs(u @ e[:, 2] - 1j * e[:, 1]).max() < 1e-12  # |10> -> i|01>
    assert np.abs(u @ e[:, 1] - 1j * e[:, 2]).max() < 1e-12  # |01> -> i|10>
    assert np.abs(u @ e[:, 0] - e[:, 0]).max() < 1e-12
    assert np.abs(u @ e[:, 3] - e[:, 3]).max() < 1e-12


def test_diss_unitary_pure_dephasing_phases():
    u = diss_unitary(0.0, 0.0, PI)
    assert np.allclose(u, np.diag([-1j, 1j, 1j, -1j]))


def test_diss_unitary_param_ranges():
    with pytest.raises(ParamOutOfRange):
        diss_unitary(2.0, 2.0, 0.0)   # alpha1 + alpha2 > pi
    with pytest.raises(ParamOutOfRange):
        diss_unitary(0.0, 0.0, -0.5)
    with pytest.raises(ParamOutOfRange):
        GateSpec(alpha1=3.0, alpha2=1.0)
    with pytest.raises(ParamOutOfRange):
        GateSpec(order="backwards")


def test_diss_unitary_matches_series_oracle():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1.0, -1.0]).astype(complex)
    rng = np.random.default_rng(21)
    for _ in range(100):
        total = rng.uniform(0.0, PI)
        split = rng.uniform(0.0, 1.0)
        a1, a2 = split * total, (1.0 - split) * total
        gamma = rng.uniform(0.0, PI)
        ham = (a1 * np.kron(sx, sx) + a2 * np.kron(sy, sy) - gamma * np.kron(sz, sz))
        expected = _expm_oracle(0.5j * ham)
        assert np.abs(diss_unitary(a1, a2, gamma) - expected).max() < 1e-10


def test_total_unitary_reduces_to_cnot():
    spec = GateSpec(phi=PI / 2, alpha1=0.0, alpha2=0.0, gamma=0.0)
    assert np.allclose(total_unitary(spec), controlled_u(PI / 2))


def test_total_unitary_determinant_is_minus_one():
    # controlled-u always has det -1 and the feedback exponential det +1
    rng = np.random.default_rng(23)
    for _ in range(20):
        total = rng.uniform(0.0, PI)
        split = rng.uniform(0.0, 1.0)
        spec = GateSpec(phi=rng.uniform(0.0, PI), alpha1=split * total,
                        alpha2=(1 - split) * total, gamma=rng.uniform(0.0, PI))
        det = np.linalg.det(total_unitary(spec))
        assert abs(det + 1.0) < 1e-10


def test_spectrum_symmetric_max_dissipation():
    u = total_unitary(GateSpec(alpha1=PI / 2, alpha2=PI / 2))
    expected = [1.0, -1.0, np.exp(1j * PI / 3), np.exp(-1j * PI / 3)]
    _match_spectra(expected, gate_spectrum(u), 1e-10)


def test_spectrum_symmetric_general_alpha():
    # closed form: {1, -1, (1 + cos a)/2 +- i sqrt(4 - (1 + cos a)^2)/2}
    for alpha in (PI / 6, PI / 3, 0.4):
        u = total_unitary(GateSpec(alpha1=alpha, alpha2=alpha))
        c = 1.0 + np.cos(alpha)
        pair = 0.5 * (c + 1j * np.sqrt(4.0 - c * c)), 0.5 * (c - 1j * np.sqrt(4.0 - c * c))
        _match_spectra([1.0, -1.0, *pair], gate_spectrum(u), 1e-10)


def test_spectrum_asymmetric_dissipation():
    u = total_unitary(GateSpec(alpha1=2 * PI / 3, alpha2=PI / 3))
    exact = [1.0, -1.0,
             (np.sqrt(3) + 1j * np.sqrt(13)) / 4.0,
             (np.sqrt(3) - 1j * np.sqrt(13)) / 4.0]
    _match_spectra(exact, gate_spectrum(u), 1e-10)
    # two-decimal published values are a rounding of the exact pair
    _match_spectra([1.0, -1.0, 0.43 + 0.90j, 0.43 - 0.90j], gate_spectrum(u), 5e-3)


def test_spectrum_pure_dephasing():
    u = total_unitary(GateSpec(gamma=PI))
    _match_spectra([1.0, -1.0, 1j, -1j], gate_spectrum(u), 1e-10)


def test_spectrum_dissipation_with_dephasing():
    # det(U) = -1 pins the signs: {+i, -i, exp(-i pi/6), -exp(+i pi/6)}
    u = total_unitary(GateSpec(alpha1=PI / 2, alpha2=PI / 2, gamma=PI))
    exact = [1j, -1j, np.exp(-1j * PI / 6), -np.exp(1j * PI / 6)]
    _match_spectra(exact, gate_spectrum(u), 1e-10)


def test_spectrum_sorted_by_phase_and_errors():
    vals = gate_spectrum(np.eye(4))
    assert np.allclose(vals, np.ones(4))
    u = total_unitary(GateSpec(gamma=PI))
    angles = np.angle(gate_spectrum(u))
    assert all(angles[i] <= angles[i + 1] + 1e-12 for i in range(3))
    with pytest.raises(NotUnitary):
        gate_spectrum(np.ones((4, 4)))


def test_every_gate_is_unitary():
    rng = np.random.default_rng(29)
    for _ in range(50):
        total = rng.uniform(0.0, PI)
        split = rng.uniform(0.0, 1.0)
        spec = GateSpec(phi=rng.uniform(0.0, PI), alpha1=split * total,
                        alpha2=(1 - split) * total, gamma=rng.uniform(0.0, PI),
                        order=rng.choice(["standard", ORDER_REVERSED]))
        u = total_unitary(spec)
        assert np.linalg.norm(u.conj().T @ u - np.eye(4)) < 1e-12


def test_orders_share_spectrum():
    rng = np.random.default_rng(31)
    for _ in range(50):
        total = rng.uniform(0.0, PI)
        split = rng.uniform(0.0, 1.0)
        kw = dict(phi=rng.uniform(0.0, PI), alpha1=split * total,
                  alpha2=(1 - split) * total, gamma=rng.uniform(0.0, PI))
        std = gate_spectrum(total_unitary(GateSpec(**kw)))
        rev = gate_spectrum(total_unitary(GateSpec(order=ORDER_REVERSED, **kw)))
        _match_spectra(std, rev, 1e-9)
