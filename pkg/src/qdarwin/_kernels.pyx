# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled two-qubit conjugation kernel.

Same contract as the NumPy version in ``_kernels_py``: conjugate a dense
d x d complex matrix by a 4x4 gate embedded on qubits (qi, qj), qubit 0
being the most significant index bit.  Two bit-indexed passes (rows with G,
columns with G^dag) avoid the transposition copies the reshape-based NumPy
path performs.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef double complex c128


def apply_two_qubit_matrix(rho, gate, int qi, int qj, int m):
    cdef Py_ssize_t d = (<Py_ssize_t>1) << m
    cdef Py_ssize_t bi = (<Py_ssize_t>1) << (m - 1 - qi)
    cdef Py_ssize_t bj = (<Py_ssize_t>1) << (m - 1 - qj)

    idx = np.arange(d, dtype=np.intp)
    bases = np.ascontiguousarray(idx[(idx & (bi | bj)) == 0])
    cdef Py_ssize_t nb = bases.shape[0]

    tmp = np.empty((d, d), dtype=np.complex128)
    out = np.empty((d, d), dtype=np.complex128)

    # inputs may be frozen arrays; const views accept read-only buffers
    cdef const c128[:, ::1] rv = np.ascontiguousarray(rho, dtype=np.complex128)
    cdef const c128[:, ::1] gv = np.ascontiguousarray(gate, dtype=np.complex128)
    cdef c128[:, ::1] tv = tmp
    cdef c128[:, ::1] ov = out
    cdef const Py_ssize_t[::1] bv = bases

    cdef Py_ssize_t t, b, c, x, r0, r1, r2, r3
    cdef c128 a0, a1, a2, a3
    cdef c128 g00, g01, g02, g03, g10, g11, g12, g13
    cdef c128 g20, g21, g22, g23, g30, g31, g32, g33
    cdef c128 h00, h01, h02, h03, h10, h11, h12, h13
    cdef c128 h20, h21, h22, h23, h30, h31, h32, h33

    g00 = gv[0, 0]; g01 = gv[0, 1]; g02 = gv[0, 2]; g03 = gv[0, 3]
    g10 = gv[1, 0]; g11 = gv[1, 1]; g12 = gv[1, 2]; g13 = gv[1, 3]
    g20 = gv[2, 0]; g21 = gv[2, 1]; g22 = gv[2, 2]; g23 = gv[2, 3]
    g30 = gv[3, 0]; g31 = gv[3, 1]; g32 = gv[3, 2]; g33 = gv[3, 3]
    h00 = g00.conjugate(); h01 = g01.conjugate(); h02 = g02.conjugate(); h03 = g03.conjugate()
    h10 = g10.conjugate(); h11 = g11.conjugate(); h12 = g12.conjugate(); h13 = g13.conjugate()
    h20 = g20.conjugate(); h21 = g21.conjugate(); h22 = g22.conjugate(); h23 = g23.conjugate()
    h30 = g30.conjugate(); h31 = g31.conjugate(); h32 = g32.conjugate(); h33 = g33.conjugate()

    with nogil:
        # rows: tmp = (G embedded) @ rho
        for t in range(nb):
            b = bv[t]
            r0 = b
            r1 = b | bj
            r2 = b | bi
            r3 = b | bi | bj
            for c in range(d):
                a0 = rv[r0, c]; a1 = rv[r1, c]; a2 = rv[r2, c]; a3 = rv[r3, c]
                tv[r0, c] = g00 * a0 + g01 * a1 + g02 * a2 + g03 * a3
                tv[r1, c] = g10 * a0 + g11 * a1 + g12 * a2 + g13 * a3
                tv[r2, c] = g20 * a0 + g21 * a1 + g22 * a2 + g23 * a3
                tv[r3, c] = g30 * a0 + g31 * a1 + g32 * a2 + g33 * a3
        # columns: out = tmp @ (G embedded)^dag
        for x in range(d):
            for t in range(nb):
                b = bv[t]
                r0 = b
                r1 = b | bj
                r2 = b | bi
                r3 = b | bi | bj
                a0 = tv[x, r0]; a1 = tv[x, r1]; a2 = tv[x, r2]; a3 = tv[x, r3]
                ov[x, r0] = a0 * h00 + a1 * h01 + a2 * h02 + a3 * h03
                ov[x, r1] = a0 * h10 + a1 * h11 + a2 * h12 + a3 * h13
                ov[x, r2] = a0 * h20 + a1 * h21 + a2 * h22 + a3 * h23
                ov[x, r3] = a0 * h30 + a1 * h31 + a2 * h32 + a3 * h33
    return out
