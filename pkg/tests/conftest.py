"""Shared helpers for the test suite: independent brute-force constructions
that never touch the package's own kernels."""

from __future__ import annotations

import numpy as np


def random_density(m: int, rng) -> np.ndarray:
    d = 1 << m
    h = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = h @ h.conj().T
    return rho / rho.trace()


def random_unitary(dim: int, rng) -> np.ndarray:
    h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(h)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_amplitudes(rng) -> tuple[complex, complex]:
    theta = rng.uniform(0.0, 2 * np.pi)
    phase = rng.uniform(0.0, 2 * np.pi)
    return complex(np.cos(theta)), complex(np.sin(theta) * np.exp(1j * phase))


def brute_embed(gate: np.ndarray, qi: int, qj: int, m: int) -> np.ndarray:
    """Dense embedding of a 4x4 gate by explicit bit bookkeeping (loops only)."""
    d = 1 << m
    bi = 1 << (m - 1 - qi)
    bj = 1 << (m - 1 - qj)
    u = np.zeros((d, d), dtype=complex)
    for x in range(d):
        for y in range(d):
            if (x & ~(bi | bj)) != (y & ~(bi | bj)):
                continue
            row = 2 * ((x >> (m - 1 - qi)) & 1) + ((x >> (m - 1 - qj)) & 1)
            col = 2 * ((y >> (m - 1 - qi)) & 1) + ((y >> (m - 1 - qj)) & 1)
            u[x, y] = gate[row, col]
    return u
