"""Dense complex linear algebra shared by every other module.

Three primitives: a Hermitian eigensolver, rank-revealing (column-pivoted)
QR with nullspace extraction, and Gram-Schmidt orthonormalization under the
Hilbert-Schmidt inner product Tr(X^dag Y).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import EmptyMatrix, NotHermitian, NotSquare, ShapeMismatch

HERMITIAN_ATOL = 1e-10
#: Default numerical-rank threshold, relative to the largest QR pivot.
RANK_RTOL = 1e-9


class HermitianEigenResult(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting NaN/Inf entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise NotSquare(f"expected a 2-d matrix, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    return a


def hermitian_eigs(m) -> HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted ascending.

    The input must be Hermitian within an absolute entrywise tolerance of
    1e-10.  Uses the LAPACK divide-and-conquer driver, which is deterministic
    for a fixed input.
    """
    a = as_complex_matrix(m)
    if a.size == 0:
        raise EmptyMatrix("cannot diagonalize an empty matrix")
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected square input, got shape {a.shape}")
    if np.max(np.abs(a - a.conj().T)) > HERMITIAN_ATOL:
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    values, vectors = np.linalg.eigh(a)
    return HermitianEigenResult(values, vectors)


def rank_via_qr(m, tol: float = RANK_RTOL) -> int:
    """Numerical rank via column-pivoted QR.

    The rank is the number of diagonal entries of the triangular factor whose
    magnitude exceeds ``tol`` times the largest one.  Column pivoting sorts
    the small pivots last, which plain QR does not guarantee.
    """
    a = as_complex_matrix(m)
    if a.size == 0:
        raise EmptyMatrix("rank of an empty matrix is undefined")
    if tol <= 0:
        raise ValueError("tol must be positive")
    r, _ = scipy.linalg.qr(a, mode="r", pivoting=True)
    diag = np.abs(np.diagonal(r))
    if diag[0] == 0.0:
        return 0
    return int(np.count_nonzero(diag > tol * diag[0]))


def nullspace_via_qr(m, tol: float = RANK_RTOL) -> tuple[int, np.ndarray]:
    """Rank and an orthonormal right-nullspace basis from one pivoted QR.

    Factors the adjoint, so the trailing columns of Q span the orthogonal
    complement of the row space.  Returns ``(rank, basis)`` with the basis
    columns orthonormal; the pivot threshold rule matches `rank_via_qr`.
    """
    a = as_complex_matrix(m)
    if a.size == 0:
        raise EmptyMatrix("nullspace of an empty matrix is undefined")
    if tol <= 0:
        raise ValueError("tol must be positive")
    q, r, _ = scipy.linalg.qr(a.conj().T, mode="full", pivoting=True)
    diag = np.abs(np.diagonal(r))
    if diag.size == 0 or diag[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(diag > tol * diag[0]))
    return rank, q[:, rank:]


def hs_inner(x: np.ndarray, y: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(x^dag y)."""
    return complex(np.vdot(x, y))


def hs_norm(x: np.ndarray) -> float:
    return float(np.linalg.norm(x))


def gram_schmidt_hs(basis, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormalize a family of matrices under the Hilbert-Schmidt product.

    Inputs whose residual after projection falls below ``tol`` times their
    original norm are treated as linearly dependent and dropped.  A second
    orthogonalization pass keeps the output Gram matrix within 1e-10 of the
    identity even for ill-conditioned families.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    mats = [np.asarray(b, dtype=np.complex128) for b in basis]
    if not mats:
        return []
    shape = mats[0].shape
    for b in mats[1:]:
        if b.shape != shape:
            raise ShapeMismatch(f"mixed shapes {shape} and {b.shape}")
    out: list[np.ndarray] = []
    for mat in mats:
        v = mat.copy()
        scale = hs_norm(v)
        if scale == 0.0:
            continue
        for _ in range(2):
            for b in out:
                v -= hs_inner(b, v) * b
        nrm = hs_norm(v)
        if nrm <= tol * scale:
            continue
        out.append(v / nrm)
    return out
