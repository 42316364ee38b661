"""Kernel backend selection.

The hot kernel (two-qubit conjugation of a dense density matrix) has a
compiled Cython implementation and a pure NumPy fallback.  The compiled one
is used when the extension built; set ``QDARWIN_KERNELS=python`` or
``QDARWIN_KERNELS=compiled`` to force a backend.  The statevector and dense
embedding helpers always run the NumPy path; they are not hot.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

_choice = os.environ.get("QDARWIN_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "compiled", "python", ""):
    raise ValueError(f"QDARWIN_KERNELS must be auto|compiled|python, got {_choice!r}")

_matrix_kernel = None
_BACKEND = "python"
if _choice in ("auto", "compiled", ""):
    try:
        from . import _kernels as _compiled
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "QDARWIN_KERNELS=compiled but the extension is not built; "
                "run `pip install -e . --no-build-isolation` or "
                "`python setup.py build_ext --inplace`"
            )
    else:
        _matrix_kernel = _compiled.apply_two_qubit_matrix
        _BACKEND = "compiled"
if _matrix_kernel is None:
    _matrix_kernel = _kernels_py.apply_two_qubit_matrix

apply_two_qubit_state = _kernels_py.apply_two_qubit_state
embed_two_qubit = _kernels_py.embed_two_qubit


def backend_name() -> str:
    """Active matrix-kernel backend: 'compiled' or 'python'."""
    return _BACKEND


def apply_two_qubit_matrix(rho: np.ndarray, gate: np.ndarray, qi: int, qj: int,
                           m: int) -> np.ndarray:
    """Conjugate ``rho`` by the gate embedded on qubits (qi, qj)."""
    return _matrix_kernel(rho, gate, qi, qj, m)
