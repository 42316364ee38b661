"""Pure NumPy implementations of the two-qubit update kernels.

Basis indices are read with qubit 0 as the most significant bit, so axis q of
a ``(2,)*m`` reshape is qubit q directly.  All kernels cost O(4^m) complex
multiply-adds; the embedded d x d unitary is never materialized.
"""

from __future__ import annotations

import numpy as np


def apply_two_qubit_matrix(rho: np.ndarray, gate: np.ndarray, qi: int, qj: int,
                           m: int) -> np.ndarray:
    """Conjugate a d x d matrix by a two-qubit gate on qubits (qi, qj)."""
    d = 1 << m
    g4 = np.ascontiguousarray(gate, dtype=np.complex128).reshape(2, 2, 2, 2)
    t = rho.reshape((2,) * (2 * m))
    t = np.tensordot(g4, t, axes=([2, 3], [qi, qj]))
    t = np.moveaxis(t, (0, 1), (qi, qj))
    t = np.tensordot(t, g4.conj(), axes=([m + qi, m + qj], [2, 3]))
    t = np.moveaxis(t, (-2, -1), (m + qi, m + qj))
    return np.ascontiguousarray(t.reshape(d, d))


def apply_two_qubit_state(psi: np.ndarray, gate: np.ndarray, qi: int, qj: int,
                          m: int) -> np.ndarray:
    """Apply a two-qubit gate to a length-2^m amplitude vector."""
    d = 1 << m
    g4 = np.ascontiguousarray(gate, dtype=np.complex128).reshape(2, 2, 2, 2)
    t = psi.reshape((2,) * m)
    t = np.tensordot(g4, t, axes=([2, 3], [qi, qj]))
    t = np.moveaxis(t, (0, 1), (qi, qj))
    return np.ascontiguousarray(t.reshape(d))


def embed_two_qubit(gate: np.ndarray, qi: int, qj: int, m: int) -> np.ndarray:
    """Dense d x d embedding of a two-qubit gate (identity on other qubits)."""
    d = 1 << m
    g4 = np.ascontiguousarray(gate, dtype=np.complex128).reshape(2, 2, 2, 2)
    t = np.eye(d, dtype=np.complex128).reshape((2,) * (2 * m))
    t = np.tensordot(g4, t, axes=([2, 3], [qi, qj]))
    t = np.moveaxis(t, (0, 1), (qi, qj))
    return np.ascontiguousarray(t.reshape(d, d))
